#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "radann/bandwidth.hpp"
#include "radann/gaussian.hpp"
#include "radann/mean_shift.hpp"

namespace radann {
namespace {

std::vector<Point3> two_blobs(int per_blob) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, 0.5);
  std::vector<Point3> pts;
  for (int i = 0; i < per_blob; ++i) pts.emplace_back(n(rng), 10 + n(rng), n(rng));
  for (int i = 0; i < per_blob; ++i) pts.emplace_back(3 + n(rng), 12 + n(rng), 1 + n(rng));
  return pts;
}

void BM_MeanShift(benchmark::State& state) {
  const auto pts = two_blobs(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mean_shift(pts, 0.5));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MeanShift)->RangeMultiplier(2)->Range(50, 400)->Unit(benchmark::kMillisecond)->Complexity();

void BM_SelectBandwidth(benchmark::State& state) {
  const auto pts = two_blobs(100);
  const BandwidthGrid grid = BandwidthGrid::geometric(0.1, 2.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(select_bandwidth(pts, {0, 10, 0}, grid, 1024, 1));
}
BENCHMARK(BM_SelectBandwidth)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_JsDivergence(benchmark::State& state) {
  const Gaussian p = Gaussian::from({0, 0, 0}, Eigen::Matrix3d::Identity());
  const Gaussian q = Gaussian::from({1, 0, 0}, Eigen::Matrix3d::Identity() * 2);
  const int samples = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(js_divergence(p, q, samples, 1));
}
BENCHMARK(BM_JsDivergence)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace radann
