#include "radann/bandwidth.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "radann/error.hpp"
#include "radann/gaussian.hpp"
#include "radann/random.hpp"

namespace radann {

BandwidthGrid BandwidthGrid::geometric(double lo, double hi, int count) {
  BandwidthGrid grid;
  if (count < 1 || !(lo > 0) || !(hi >= lo)) {
    throw Error(ErrorCode::kInvalidConfig, "geometric grid needs 0 < lo <= hi and count >= 1");
  }
  grid.values.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    grid.values.push_back(lo * std::pow(hi / lo, t));
  }
  grid.values.back() = hi;
  return grid;
}

void BandwidthGrid::validate() const {
  if (values.size() < 3) {
    throw Error(ErrorCode::kGridTooSmall,
                "bandwidth grid needs >= 3 values, got " + std::to_string(values.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0)) throw Error(ErrorCode::kInvalidConfig, "bandwidths must be > 0");
    if (i > 0 && !(values[i] > values[i - 1])) {
      throw Error(ErrorCode::kInvalidConfig, "bandwidth grid must be strictly increasing");
    }
  }
}

void ClusteringConfig::validate() const {
  grid.validate();
  if (!(axis_scale.array() > 0).all()) {
    throw Error(ErrorCode::kInvalidConfig, "clustering axis_scale entries must be > 0");
  }
  if (mc_samples < 1) throw Error(ErrorCode::kInvalidConfig, "mc_samples must be >= 1");
  if (!(mean_shift.tol > 0)) throw Error(ErrorCode::kInvalidConfig, "mean-shift tol must be > 0");
  if (mean_shift.max_iter < 1) throw Error(ErrorCode::kInvalidConfig, "mean-shift max_iter must be >= 1");
}

std::vector<Point3> ClusteringConfig::normalize(std::span<const Point3> points) const {
  std::vector<Point3> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(normalize(p));
  return out;
}

std::size_t nearest_cluster(std::span<const Cluster> clusters, const Point3& seed) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const double d = (clusters[i].centroid - seed).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

BandwidthSelection select_bandwidth(std::span<const Point3> points, const Point3& seed_point,
                                    const BandwidthGrid& grid, int mc_samples,
                                    std::uint64_t rng_seed, const MeanShiftOptions& options) {
  grid.validate();
  if (points.empty()) throw Error(ErrorCode::kEmptyCloud, "select_bandwidth on an empty cloud");

  const std::size_t count = grid.size();
  BandwidthSelection sel;
  sel.candidates.reserve(count);
  std::vector<Gaussian> fitted;
  fitted.reserve(count);
  for (double sigma : grid.values) {
    MeanShiftResult ms = mean_shift(points, sigma, options);
    const std::size_t pick = nearest_cluster(ms.clusters, seed_point);
    sel.candidates.push_back(std::move(ms.clusters[pick]));
    const Cluster& c = sel.candidates.back();
    fitted.push_back(Gaussian::from(c.fitted_mean, c.fitted_covariance));
  }

  sel.js_between.resize(count - 1);
  for (std::size_t b = 0; b + 1 < count; ++b) {
    sel.js_between[b] =
        js_divergence(fitted[b], fitted[b + 1], mc_samples, derive_seed(rng_seed, {b}));
  }

  sel.scores.assign(count, std::numeric_limits<double>::infinity());
  std::size_t best = 1;
  for (std::size_t b = 1; b + 1 < count; ++b) {
    sel.scores[b] = sel.js_between[b - 1] + sel.js_between[b];
    if (sel.scores[b] < sel.scores[best]) best = b;
  }
  sel.index = best;
  sel.sigma = grid.values[best];
  sel.cluster = sel.candidates[best];
  return sel;
}

}  // namespace radann
