#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "radann/doa_cloud.hpp"
#include "radann/mean_shift.hpp"

namespace radann {

/// Strictly increasing positive bandwidths, at least three.
struct BandwidthGrid {
  std::vector<double> values;

  static BandwidthGrid geometric(double lo, double hi, int count);
  void validate() const;
  std::size_t size() const { return values.size(); }

  friend bool operator==(const BandwidthGrid&, const BandwidthGrid&) = default;
};

struct BandwidthSelection {
  std::size_t index = 0;
  double sigma = 0.0;
  Cluster cluster;
  // Cluster nearest the seed for every grid value.
  std::vector<Cluster> candidates;
  // js_between[b] = JS(p_b, p_{b+1}).
  std::vector<double> js_between;
  // Stability score per grid value; grid ends hold +inf.
  std::vector<double> scores;
};

/// Index of the cluster whose centroid is closest to seed (lowest index on ties).
std::size_t nearest_cluster(std::span<const Cluster> clusters, const Point3& seed);

/// Runs Mean-Shift at every grid bandwidth, keeps the cluster nearest seed,
/// fits a Gaussian to each and returns the interior bandwidth minimising
/// JS(p_b, p_{b-1}) + JS(p_b, p_{b+1}); ties go to the smaller bandwidth.
/// Throws kGridTooSmall (fewer than 3 values) and kEmptyCloud.
BandwidthSelection select_bandwidth(std::span<const Point3> points, const Point3& seed_point,
                                    const BandwidthGrid& grid, int mc_samples,
                                    std::uint64_t rng_seed, const MeanShiftOptions& options = {});

/// Clustering defaults: per-axis scales applied before clustering, the
/// bandwidth grid in normalised units, and Monte Carlo settings.
struct ClusteringConfig {
  Point3 axis_scale = Point3::Ones();
  BandwidthGrid grid = BandwidthGrid::geometric(0.1, 2.0, 16);
  int mc_samples = 4096;
  MeanShiftOptions mean_shift;

  void validate() const;

  Point3 normalize(const Point3& p) const { return p.cwiseQuotient(axis_scale); }
  Point3 denormalize(const Point3& p) const { return p.cwiseProduct(axis_scale); }
  std::vector<Point3> normalize(std::span<const Point3> points) const;

  friend bool operator==(const ClusteringConfig& a, const ClusteringConfig& b) {
    return a.axis_scale == b.axis_scale && a.grid == b.grid && a.mc_samples == b.mc_samples &&
           a.mean_shift.tol == b.mean_shift.tol && a.mean_shift.max_iter == b.mean_shift.max_iter;
  }
};

}  // namespace radann
