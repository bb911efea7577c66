#pragma once

#include <cstdint>
#include <span>

#include <Eigen/Core>

#include "radann/mean_shift.hpp"
#include "radann/types.hpp"

namespace radann {

/// Multivariate normal of any dimension.
struct Gaussian {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;

  static Gaussian from(const Point3& mean, const Eigen::Matrix3d& covariance) {
    return {mean, covariance};
  }
};

struct GaussianFit {
  Point3 mean = Point3::Zero();
  Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();
};

/// Sample mean and (n-1)-normalised covariance plus regularizer * I.
/// Throws kDegenerateCluster for fewer than two points.
GaussianFit fit_gaussian(std::span<const Point3> points,
                         double regularizer = kCovarianceRegularizer);

/// log N(x; mean, covariance). Throws kSingularCovariance if not positive definite.
double log_density(const Gaussian& g, const Eigen::VectorXd& x);

/// Jensen-Shannon distance sqrt((KL(p||m) + KL(q||m)) / 2), m = (p + q) / 2,
/// each KL estimated by Monte Carlo from mc_samples draws of its own component.
/// The pair is put in a canonical order before sampling, so the result is
/// exactly symmetric in its arguments for a given seed.
double js_divergence(const Gaussian& p, const Gaussian& q, int mc_samples, std::uint64_t rng_seed);

}  // namespace radann
