#include "radann/cfar.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "radann/error.hpp"

namespace radann {

void CfarParams::validate() const {
  if (train_cells < 1) throw Error(ErrorCode::kInvalidConfig, "cfar train_cells must be >= 1");
  if (guard_cells < 0) throw Error(ErrorCode::kInvalidConfig, "cfar guard_cells must be >= 0");
  if (!(probability_false_alarm > 0.0 && probability_false_alarm < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "cfar probability_false_alarm must be in (0, 1)");
  }
}

double cfar_scale(int num_training_cells, double probability_false_alarm) {
  const double n = num_training_cells;
  return n * std::expm1(-std::log(probability_false_alarm) / n);
}

std::vector<Detection> cfar_detect(const MagnitudeMap& map, const CfarParams& params) {
  params.validate();
  const int rows = static_cast<int>(map.rows());
  const int cols = static_cast<int>(map.cols());
  const int half = params.half_extent();
  const int window = 2 * half + 1;
  if (rows < window || cols < window) {
    throw Error(ErrorCode::kWindowTooLarge, "map " + std::to_string(rows) + " x " +
                                                std::to_string(cols) + " smaller than CFAR window " +
                                                std::to_string(window));
  }

  // Summed-area table with a zero border.
  Eigen::MatrixXd sat = Eigen::MatrixXd::Zero(rows + 1, cols + 1);
  for (int r = 0; r < rows; ++r) {
    double row_sum = 0.0;
    for (int c = 0; c < cols; ++c) {
      row_sum += map(r, c);
      sat(r + 1, c + 1) = sat(r, c + 1) + row_sum;
    }
  }
  auto box_sum = [&](int r0, int c0, int r1, int c1) {  // inclusive, clipped
    r0 = std::max(r0, 0);
    c0 = std::max(c0, 0);
    r1 = std::min(r1, rows - 1);
    c1 = std::min(c1, cols - 1);
    const double s = sat(r1 + 1, c1 + 1) - sat(r0, c1 + 1) - sat(r1 + 1, c0) + sat(r0, c0);
    const long count = static_cast<long>(r1 - r0 + 1) * (c1 - c0 + 1);
    return std::pair{s, count};
  };

  // Scale depends only on N_t, which takes a handful of values near edges.
  std::vector<double> scale_cache(static_cast<std::size_t>(window) * window + 1, -1.0);

  std::vector<Detection> out;
  const int g = params.guard_cells;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const auto [outer, outer_n] = box_sum(r - half, c - half, r + half, c + half);
      const auto [inner, inner_n] = box_sum(r - g, c - g, r + g, c + g);
      const long n_train = outer_n - inner_n;
      if (n_train <= 0) continue;
      double& scale = scale_cache[n_train];
      if (scale < 0) scale = cfar_scale(static_cast<int>(n_train), params.probability_false_alarm);
      const double noise = (outer - inner) / static_cast<double>(n_train);
      const float value = map(r, c);
      if (value > scale * noise) out.push_back({{r, c}, value});
    }
  }
  return out;
}

}  // namespace radann
