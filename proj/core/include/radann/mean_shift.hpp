#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "radann/types.hpp"

namespace radann {

/// Added to every fitted covariance diagonal (normalised units).
inline constexpr double kCovarianceRegularizer = 1e-6;

struct MeanShiftOptions {
  double tol = 1e-4;
  int max_iter = 300;
};

/// A Mean-Shift cluster. Coordinates are those of the clustered point set
/// (normalised when produced through select_bandwidth).
struct Cluster {
  // Indices into the clustered point set, ascending.
  std::vector<std::size_t> members;
  std::vector<Point3> member_points;
  // Converged mode shared by the members.
  Point3 centroid = Point3::Zero();
  Point3 fitted_mean = Point3::Zero();
  Eigen::Matrix3d fitted_covariance = Eigen::Matrix3d::Identity();
  // False if any member hit max_iter before the step dropped below tol.
  bool converged = true;

  std::size_t size() const { return members.size(); }
};

struct MeanShiftResult {
  std::vector<Cluster> clusters;
  // labels[i] is the cluster index of point i.
  std::vector<int> labels;
  bool converged = true;
};

/// Gaussian kernel density estimate (unnormalised: sum of exp(-|x-x_i|^2 / 2 sigma^2)).
double kernel_density(std::span<const Point3> points, const Point3& x, double sigma);

/// One weighted-mean update x <- sum x_i K_i / sum K_i.
Point3 mean_shift_step(std::span<const Point3> points, const Point3& x, double sigma);

struct ModeSearch {
  Point3 mode = Point3::Zero();
  int iterations = 0;
  bool converged = false;
};

/// Iterates mean_shift_step from start until the step is below tol or max_iter
/// is reached. When path is given, every iterate (including start) is appended.
ModeSearch seek_mode(std::span<const Point3> points, const Point3& start, double sigma,
                     const MeanShiftOptions& options, std::vector<Point3>* path = nullptr);

/// Mean-Shift from every point; points whose modes lie within sigma / 2 of a
/// cluster's mode join it (greedy, in point order). Each cluster carries its
/// fitted Gaussian; singletons fall back to sigma^2 I.
/// Throws kEmptyCloud on empty input, kValidationError for sigma <= 0.
MeanShiftResult mean_shift(std::span<const Point3> points, double sigma,
                           const MeanShiftOptions& options = {});

}  // namespace radann
