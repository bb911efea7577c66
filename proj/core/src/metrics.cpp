#include "radann/metrics.hpp"

#include <string>

#include "radann/error.hpp"

namespace radann {

namespace {

std::optional<double> ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

void check_label(std::uint8_t label) {
  if (label >= kNumClasses) {
    throw Error(ErrorCode::kValidationError, "label " + std::to_string(label) + " outside class set");
  }
}

Aggregate aggregate_metric(const std::array<ClassMetrics, kNumClasses>& per_class,
                           std::optional<double> ClassMetrics::*field,
                           const std::vector<int>& classes) {
  std::array<std::optional<double>, kNumClasses> values;
  for (int k = 0; k < kNumClasses; ++k) values[k] = per_class[k].*field;
  return aggregate(values, classes);
}

}  // namespace

Confusion confusion(const LabelMap& pred, const LabelMap& truth) {
  if (pred.rows() != truth.rows() || pred.cols() != truth.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "prediction and truth label maps differ in size");
  }
  Confusion counts{};
  for (Eigen::Index r = 0; r < truth.rows(); ++r) {
    for (Eigen::Index c = 0; c < truth.cols(); ++c) {
      const auto t = truth(r, c);
      const auto p = pred(r, c);
      check_label(t);
      check_label(p);
      ++counts[t][p];
    }
  }
  return counts;
}

std::int64_t total(const Confusion& counts) {
  std::int64_t n = 0;
  for (const auto& row : counts) {
    for (auto v : row) n += v;
  }
  return n;
}

std::array<ClassMetrics, kNumClasses> per_class_metrics(const Confusion& counts) {
  std::array<ClassMetrics, kNumClasses> out;
  for (int k = 0; k < kNumClasses; ++k) {
    const std::int64_t tp = counts[k][k];
    std::int64_t fp = 0;
    std::int64_t fn = 0;
    for (int j = 0; j < kNumClasses; ++j) {
      if (j == k) continue;
      fp += counts[j][k];
      fn += counts[k][j];
    }
    out[k].iou = ratio(tp, tp + fp + fn);
    out[k].precision = ratio(tp, tp + fp);
    out[k].recall = ratio(tp, tp + fn);
  }
  return out;
}

Aggregate aggregate(std::span<const std::optional<double>> values, std::span<const int> classes) {
  Aggregate agg;
  double sum = 0.0;
  double inv_sum = 0.0;
  bool any_zero = false;
  for (int k : classes) {
    const auto& v = values[static_cast<std::size_t>(k)];
    if (!v) continue;
    agg.included.push_back(k);
    sum += *v;
    if (*v == 0.0) {
      any_zero = true;
    } else {
      inv_sum += 1.0 / *v;
    }
  }
  if (agg.included.empty()) return agg;
  const auto n = static_cast<double>(agg.included.size());
  agg.arithmetic = sum / n;
  agg.harmonic = any_zero ? 0.0 : n / inv_sum;
  return agg;
}

MetricReport dense_report(const Confusion& counts) {
  MetricReport report;
  report.per_class = per_class_metrics(counts);
  report.class_subset = {0, 1, 2, 3};
  report.iou = aggregate_metric(report.per_class, &ClassMetrics::iou, report.class_subset);
  report.precision = aggregate_metric(report.per_class, &ClassMetrics::precision, report.class_subset);
  report.recall = aggregate_metric(report.per_class, &ClassMetrics::recall, report.class_subset);
  return report;
}

Confusion sparse_confusion(const LabelMap& pred, std::span<const LabeledPoint> truth) {
  Confusion counts{};
  for (const auto& pt : truth) {
    if (pt.bin.row < 0 || pt.bin.row >= pred.rows() || pt.bin.col < 0 || pt.bin.col >= pred.cols()) {
      throw Error(ErrorCode::kPointOutOfBounds, "sparse point (" + std::to_string(pt.bin.row) + ", " +
                                                    std::to_string(pt.bin.col) + ") outside the map");
    }
    check_label(pt.label);
    const auto p = pred(pt.bin.row, pt.bin.col);
    check_label(p);
    ++counts[pt.label][p];
  }
  return counts;
}

MetricReport sparse_report(const Confusion& counts) {
  MetricReport report;
  const auto all = per_class_metrics(counts);
  for (int k = 1; k < kNumClasses; ++k) {
    report.per_class[k].precision = all[k].precision;
    report.per_class[k].recall = all[k].recall;
  }
  report.class_subset = {1, 2, 3};
  report.precision = aggregate_metric(report.per_class, &ClassMetrics::precision, report.class_subset);
  report.recall = aggregate_metric(report.per_class, &ClassMetrics::recall, report.class_subset);
  return report;
}

MetricReport sparse_eval(const LabelMap& pred, std::span<const LabeledPoint> truth) {
  return sparse_report(sparse_confusion(pred, truth));
}

}  // namespace radann
