#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "radann/cfar.hpp"
#include "radann/error.hpp"

namespace radann {
namespace {

MagnitudeMap exponential_map(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<float> exp(1.0f);
  MagnitudeMap m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = exp(rng);
  return m;
}

// Direct window scan, clipped at the borders.
std::vector<Bin> brute_force(const MagnitudeMap& m, const CfarParams& p) {
  std::vector<Bin> out;
  const int half = p.half_extent();
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      double sum = 0;
      int n = 0;
      for (int i = r - half; i <= r + half; ++i) {
        for (int j = c - half; j <= c + half; ++j) {
          if (i < 0 || j < 0 || i >= m.rows() || j >= m.cols()) continue;
          if (std::abs(i - r) <= p.guard_cells && std::abs(j - c) <= p.guard_cells) continue;
          sum += m(i, j);
          ++n;
        }
      }
      const double alpha = n * (std::pow(p.probability_false_alarm, -1.0 / n) - 1.0);
      if (m(r, c) > alpha * sum / n) out.push_back({r, c});
    }
  }
  return out;
}

TEST(CfarScale, MatchesClosedForm) {
  for (int n : {1, 8, 96, 416}) {
    for (double pfa : {1e-2, 1e-3, 1e-6}) {
      EXPECT_NEAR(cfar_scale(n, pfa), n * (std::pow(pfa, -1.0 / n) - 1.0), 1e-9 * n);
    }
  }
}

TEST(Cfar, ConstantMapHasNoDetections) {
  MagnitudeMap m = MagnitudeMap::Constant(64, 64, 3.5f);
  EXPECT_TRUE(cfar_detect(m, {}).empty());
}

TEST(Cfar, IsolatedPeakDetectedAlone) {
  MagnitudeMap m = MagnitudeMap::Ones(64, 64);
  m(30, 17) = 100.0f;
  const auto d = cfar_detect(m, {});
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].bin, (Bin{30, 17}));
  EXPECT_FLOAT_EQ(d[0].magnitude, 100.0f);
}

TEST(Cfar, PeakNearCornerUsesClippedWindow) {
  MagnitudeMap m = MagnitudeMap::Ones(32, 32);
  m(0, 0) = 100.0f;
  const auto d = cfar_detect(m, {});
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].bin, (Bin{0, 0}));
}

TEST(Cfar, MatchesBruteForceScan) {
  const MagnitudeMap m = exponential_map(40, 50, 7);
  for (CfarParams p : {CfarParams{}, CfarParams{4, 1, 1e-2}, CfarParams{3, 0, 0.05}}) {
    std::vector<Bin> fast;
    for (const auto& d : cfar_detect(m, p)) fast.push_back(d.bin);
    EXPECT_EQ(fast, brute_force(m, p));
  }
}

TEST(Cfar, FalseAlarmRateNearConfigured) {
  CfarParams p;
  long cells = 0, alarms = 0;
  for (std::uint64_t s = 0; s < 4; ++s) {
    const MagnitudeMap m = exponential_map(256, 256, 100 + s);
    alarms += static_cast<long>(cfar_detect(m, p).size());
    cells += m.size();
  }
  const double rate = static_cast<double>(alarms) / cells;
  EXPECT_GT(rate, 0.3 * p.probability_false_alarm);
  EXPECT_LT(rate, 3.0 * p.probability_false_alarm);
}

TEST(Cfar, WindowTooLarge) {
  MagnitudeMap m = MagnitudeMap::Ones(20, 64);
  try {
    cfar_detect(m, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kWindowTooLarge);
  }
  EXPECT_NO_THROW(cfar_detect(MagnitudeMap::Ones(21, 21), {}));
}

TEST(Cfar, InvalidParams) {
  EXPECT_THROW(cfar_detect(MagnitudeMap::Ones(64, 64), {8, 2, 0.0}), Error);
  EXPECT_THROW(cfar_detect(MagnitudeMap::Ones(64, 64), {0, 2, 1e-3}), Error);
  EXPECT_THROW(cfar_detect(MagnitudeMap::Ones(64, 64), {8, -1, 1e-3}), Error);
}

}  // namespace
}  // namespace radann
