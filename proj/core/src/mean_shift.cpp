#include "radann/mean_shift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "radann/error.hpp"
#include "radann/gaussian.hpp"

namespace radann {

double kernel_density(std::span<const Point3> points, const Point3& x, double sigma) {
  const double inv = 1.0 / (2.0 * sigma * sigma);
  double sum = 0.0;
  for (const auto& p : points) sum += std::exp(-(p - x).squaredNorm() * inv);
  return sum;
}

Point3 mean_shift_step(std::span<const Point3> points, const Point3& x, double sigma) {
  const double inv = 1.0 / (2.0 * sigma * sigma);
  // Relative weights below exp(-28) cannot move the sum at double precision.
  constexpr double kMaxExponent = 28.0;
  thread_local std::vector<double> d2;
  d2.resize(points.size());
  // Shift exponents by the nearest point so the largest weight is 1.
  double d_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    d2[i] = (points[i] - x).squaredNorm();
    d_min = std::min(d_min, d2[i]);
  }
  Point3 num = Point3::Zero();
  double den = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double e = (d2[i] - d_min) * inv;
    if (e > kMaxExponent) continue;
    const double w = std::exp(-e);
    num += w * points[i];
    den += w;
  }
  return num / den;
}

ModeSearch seek_mode(std::span<const Point3> points, const Point3& start, double sigma,
                     const MeanShiftOptions& options, std::vector<Point3>* path) {
  ModeSearch out;
  Point3 x = start;
  if (path) path->push_back(x);
  while (out.iterations < options.max_iter) {
    const Point3 next = mean_shift_step(points, x, sigma);
    ++out.iterations;
    const double step = (next - x).norm();
    x = next;
    if (path) path->push_back(x);
    if (step < options.tol) {
      out.converged = true;
      break;
    }
  }
  out.mode = x;
  return out;
}

MeanShiftResult mean_shift(std::span<const Point3> points, double sigma,
                           const MeanShiftOptions& options) {
  if (points.empty()) throw Error(ErrorCode::kEmptyCloud, "mean_shift on an empty cloud");
  if (!(sigma > 0)) {
    throw Error(ErrorCode::kValidationError, "bandwidth must be > 0, got " + std::to_string(sigma));
  }

  MeanShiftResult result;
  result.labels.assign(points.size(), -1);
  const double merge_radius = 0.5 * sigma;

  for (std::size_t i = 0; i < points.size(); ++i) {
    const ModeSearch search = seek_mode(points, points[i], sigma, options);
    int label = -1;
    for (std::size_t c = 0; c < result.clusters.size(); ++c) {
      if ((result.clusters[c].centroid - search.mode).norm() <= merge_radius) {
        label = static_cast<int>(c);
        break;
      }
    }
    if (label < 0) {
      label = static_cast<int>(result.clusters.size());
      result.clusters.emplace_back();
      result.clusters.back().centroid = search.mode;
    }
    Cluster& cluster = result.clusters[label];
    cluster.members.push_back(i);
    cluster.member_points.push_back(points[i]);
    if (!search.converged) {
      cluster.converged = false;
      result.converged = false;
    }
    result.labels[i] = label;
  }

  for (auto& cluster : result.clusters) {
    if (cluster.size() >= 2) {
      const GaussianFit fit = fit_gaussian(cluster.member_points);
      cluster.fitted_mean = fit.mean;
      cluster.fitted_covariance = fit.covariance;
    } else {
      cluster.fitted_mean = cluster.member_points.front();
      cluster.fitted_covariance =
          (sigma * sigma + kCovarianceRegularizer) * Eigen::Matrix3d::Identity();
    }
  }
  return result;
}

}  // namespace radann
