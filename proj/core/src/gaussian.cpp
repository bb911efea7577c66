#include "radann/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Cholesky>

#include "radann/error.hpp"
#include "radann/random.hpp"

namespace radann {

GaussianFit fit_gaussian(std::span<const Point3> points, double regularizer) {
  const auto n = points.size();
  if (n < 2) {
    throw Error(ErrorCode::kDegenerateCluster,
                "need at least 2 points to fit a covariance, got " + std::to_string(n));
  }
  GaussianFit fit;
  for (const auto& p : points) fit.mean += p;
  fit.mean /= static_cast<double>(n);
  for (const auto& p : points) {
    const Point3 d = p - fit.mean;
    fit.covariance += d * d.transpose();
  }
  fit.covariance /= static_cast<double>(n - 1);
  fit.covariance.diagonal().array() += regularizer;
  return fit;
}

namespace {

struct Factored {
  const Gaussian* g;
  Eigen::MatrixXd lower;
  double log_norm;  // -0.5 (d log 2pi + log det)
};

Factored factor(const Gaussian& g) {
  const auto d = g.mean.size();
  if (g.covariance.rows() != d || g.covariance.cols() != d) {
    throw Error(ErrorCode::kDimensionMismatch, "covariance does not match mean dimension");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(g.covariance);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kSingularCovariance, "covariance is not positive definite");
  }
  Eigen::MatrixXd lower = llt.matrixL();
  const double log_det = 2.0 * lower.diagonal().array().log().sum();
  if (!std::isfinite(log_det)) throw Error(ErrorCode::kSingularCovariance, "covariance is singular");
  return {&g, std::move(lower),
          -0.5 * (static_cast<double>(d) * std::log(2.0 * std::numbers::pi) + log_det)};
}

double log_density(const Factored& f, const Eigen::VectorXd& x) {
  const Eigen::VectorXd z =
      f.lower.triangularView<Eigen::Lower>().solve(x - f.g->mean);
  return f.log_norm - 0.5 * z.squaredNorm();
}

// log(0.5 e^a + 0.5 e^b)
double log_mean_exp(double a, double b) {
  if (a == b) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi)) - std::numbers::ln2;
}

// Monte Carlo KL(p || (p + q) / 2) from draws of p.
double kl_to_mixture(const Factored& p, const Factored& q, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const auto d = p.g->mean.size();
  Eigen::VectorXd z(d);
  double sum = 0.0;
  for (int s = 0; s < samples; ++s) {
    for (Eigen::Index i = 0; i < d; ++i) z[i] = normal(rng);
    const Eigen::VectorXd x = p.g->mean + p.lower * z;
    const double lp = log_density(p, x);
    const double lq = log_density(q, x);
    sum += lp - log_mean_exp(lp, lq);
  }
  return sum / samples;
}

// Lexicographic order on (mean, covariance) entries.
bool canonical_less(const Gaussian& a, const Gaussian& b) {
  for (Eigen::Index i = 0; i < a.mean.size(); ++i) {
    if (a.mean[i] != b.mean[i]) return a.mean[i] < b.mean[i];
  }
  for (Eigen::Index i = 0; i < a.covariance.size(); ++i) {
    if (a.covariance.data()[i] != b.covariance.data()[i]) {
      return a.covariance.data()[i] < b.covariance.data()[i];
    }
  }
  return false;
}

}  // namespace

double log_density(const Gaussian& g, const Eigen::VectorXd& x) { return log_density(factor(g), x); }

double js_divergence(const Gaussian& p, const Gaussian& q, int mc_samples, std::uint64_t rng_seed) {
  if (mc_samples < 1) throw Error(ErrorCode::kValidationError, "mc_samples must be >= 1");
  if (p.mean.size() != q.mean.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "Gaussians of different dimension");
  }
  const bool swap = canonical_less(q, p);
  const Factored first = factor(swap ? q : p);
  const Factored second = factor(swap ? p : q);

  const double kl_first = kl_to_mixture(first, second, mc_samples, derive_seed(rng_seed, {1}));
  const double kl_second = kl_to_mixture(second, first, mc_samples, derive_seed(rng_seed, {2}));
  return std::sqrt(std::max(0.0, 0.5 * (kl_first + kl_second)));
}

}  // namespace radann
