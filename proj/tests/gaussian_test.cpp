#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "radann/error.hpp"
#include "radann/gaussian.hpp"
#include "radann/mean_shift.hpp"

namespace radann {
namespace {

Gaussian gauss1d(double mean, double sd) {
  Gaussian g;
  g.mean = Eigen::VectorXd::Constant(1, mean);
  g.covariance = Eigen::MatrixXd::Constant(1, 1, sd * sd);
  return g;
}

// JS distance of two 1D normals by trapezoidal quadrature on a fine grid.
double js_quadrature(double m1, double s1, double m2, double s2) {
  auto pdf = [](double x, double m, double s) {
    return std::exp(-0.5 * (x - m) * (x - m) / (s * s)) / (s * std::sqrt(2 * std::numbers::pi));
  };
  const double lo = std::min(m1 - 12 * s1, m2 - 12 * s2), hi = std::max(m1 + 12 * s1, m2 + 12 * s2);
  const int n = 200000;
  const double h = (hi - lo) / n;
  double sum = 0;
  for (int i = 0; i <= n; ++i) {
    const double x = lo + i * h;
    const double p = pdf(x, m1, s1), q = pdf(x, m2, s2), m = 0.5 * (p + q);
    double f = 0;
    if (p > 0) f += 0.5 * p * std::log(p / m);
    if (q > 0) f += 0.5 * q * std::log(q / m);
    sum += (i == 0 || i == n ? 0.5 : 1.0) * f;
  }
  return std::sqrt(sum * h);
}

TEST(FitGaussian, TwoPoints) {
  const std::vector<Point3> pts{{0, 0, 0}, {2, 0, 0}};
  const GaussianFit fit = fit_gaussian(pts);
  EXPECT_EQ(fit.mean, Point3(1, 0, 0));
  EXPECT_NEAR(fit.covariance(0, 0), 2.0 + kCovarianceRegularizer, 1e-15);
  EXPECT_NEAR(fit.covariance(1, 1), kCovarianceRegularizer, 1e-15);
  EXPECT_NEAR(fit.covariance(2, 2), kCovarianceRegularizer, 1e-15);
  EXPECT_EQ(fit.covariance(0, 1), 0.0);
}

TEST(FitGaussian, IdenticalPointsGiveRegularizer) {
  const std::vector<Point3> pts(5, Point3(3, -1, 2));
  const GaussianFit fit = fit_gaussian(pts);
  EXPECT_TRUE(fit.covariance.isApprox(kCovarianceRegularizer * Eigen::Matrix3d::Identity()));
}

TEST(FitGaussian, RecoversGenerator) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> n;
  Eigen::Matrix3d L;
  L << 2.0, 0, 0, 0.6, 1.0, 0, -0.4, 0.3, 0.5;
  const Point3 mu(1, -2, 0.5);
  const Eigen::Matrix3d sigma = L * L.transpose();
  std::vector<Point3> pts;
  for (int i = 0; i < 10000; ++i) pts.push_back(mu + L * Point3(n(rng), n(rng), n(rng)));
  const GaussianFit fit = fit_gaussian(pts);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(fit.mean[i], mu[i], 0.05 * std::sqrt(sigma(i, i)));
    EXPECT_NEAR(fit.covariance(i, i), sigma(i, i), 0.05 * sigma(i, i));
  }
  EXPECT_LT((fit.covariance - sigma).norm() / sigma.norm(), 0.05);
}

TEST(FitGaussian, TooFewPoints) {
  const std::vector<Point3> pts{{0, 0, 0}};
  try {
    fit_gaussian(pts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateCluster);
  }
}

TEST(LogDensity, StandardNormal) {
  const Gaussian g = gauss1d(0, 1);
  EXPECT_NEAR(log_density(g, Eigen::VectorXd::Constant(1, 1.0)), -0.5 * std::log(2 * std::numbers::pi) - 0.5,
              1e-12);
}

TEST(LogDensity, SingularCovarianceThrows) {
  Gaussian g;
  g.mean = Eigen::VectorXd::Zero(2);
  g.covariance = Eigen::MatrixXd::Zero(2, 2);
  g.covariance(0, 0) = 1;
  try {
    log_density(g, Eigen::VectorXd::Zero(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingularCovariance);
  }
}

TEST(JsDivergence, IdenticalIsZero) {
  const Gaussian g = Gaussian::from({1, 2, 3}, Eigen::Matrix3d::Identity() * 0.3);
  EXPECT_LT(js_divergence(g, g, 4096, 5), 1e-3);
}

TEST(JsDivergence, ExactlySymmetric) {
  const Gaussian p = Gaussian::from({0, 0, 0}, Eigen::Matrix3d::Identity());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Identity() * 2.0;
  cov(0, 1) = cov(1, 0) = 0.5;
  const Gaussian q = Gaussian::from({1, -1, 0.5}, cov);
  for (std::uint64_t seed : {1ULL, 99ULL, 12345ULL}) {
    EXPECT_EQ(js_divergence(p, q, 1024, seed), js_divergence(q, p, 1024, seed));
  }
}

TEST(JsDivergence, DisjointLimit) {
  const double js = js_divergence(gauss1d(0, 1), gauss1d(20, 1), 4096, 3);
  EXPECT_NEAR(js, std::sqrt(std::numbers::ln2), 0.02);
  EXPECT_LE(js, std::sqrt(std::numbers::ln2) + 1e-9);
}

TEST(JsDivergence, MatchesQuadrature) {
  const double mc = js_divergence(gauss1d(0, 1), gauss1d(1.5, 0.8), 200000, 11);
  EXPECT_NEAR(mc, js_quadrature(0, 1, 1.5, 0.8), 0.01);
}

TEST(JsDivergence, MonotoneInSeparation) {
  double prev = 0;
  for (double d : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double js = js_divergence(gauss1d(0, 1), gauss1d(d, 1), 8192, 2);
    EXPECT_GT(js, prev);
    prev = js;
  }
}

TEST(JsDivergence, DimensionMismatchAndSamples) {
  const Gaussian a = gauss1d(0, 1);
  const Gaussian b = Gaussian::from({0, 0, 0}, Eigen::Matrix3d::Identity());
  EXPECT_THROW(js_divergence(a, b, 10, 1), Error);
  EXPECT_THROW(js_divergence(a, a, 0, 1), Error);
}

}  // namespace
}  // namespace radann
