#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "radann/types.hpp"

namespace radann {

inline constexpr int kBackground = 0;

/// counts[truth][pred].
using Confusion = std::array<std::array<std::int64_t, kNumClasses>, kNumClasses>;

/// Per-class scores; a ratio with a zero denominator is absent.
struct ClassMetrics {
  std::optional<double> iou;
  std::optional<double> precision;
  std::optional<double> recall;
};

/// Arithmetic and harmonic means over the defined values of the included classes.
struct Aggregate {
  std::optional<double> arithmetic;
  std::optional<double> harmonic;
  // Classes whose value entered the means.
  std::vector<int> included;
};

struct MetricReport {
  std::array<ClassMetrics, kNumClasses> per_class;
  // Classes eligible for aggregation (all four for dense, objects only for sparse).
  std::vector<int> class_subset;
  Aggregate iou;
  Aggregate precision;
  Aggregate recall;
};

/// Throws kDimensionMismatch when dims differ.
Confusion confusion(const LabelMap& pred, const LabelMap& truth);
std::int64_t total(const Confusion& counts);

std::array<ClassMetrics, kNumClasses> per_class_metrics(const Confusion& counts);

/// Arithmetic and harmonic mean of the present values (harmonic is 0 when any value is 0).
Aggregate aggregate(std::span<const std::optional<double>> values, std::span<const int> classes);

MetricReport dense_report(const Confusion& counts);

struct LabeledPoint {
  Bin bin;
  std::uint8_t label = 0;
};

/// Confusion restricted to the annotated sparse points.
/// Throws kPointOutOfBounds for points outside pred.
Confusion sparse_confusion(const LabelMap& pred, std::span<const LabeledPoint> truth);

/// Object-class precision and recall from sparse counts; IoU is not reported.
MetricReport sparse_report(const Confusion& counts);

/// Precision and recall per object class over the sparse points, background
/// excluded; IoU is not reported.
MetricReport sparse_eval(const LabelMap& pred, std::span<const LabeledPoint> truth);

}  // namespace radann
