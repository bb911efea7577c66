#pragma once

#include <vector>

#include "radann/types.hpp"

namespace radann {

/// 2D cell-averaging CFAR window. Train and guard sizes apply to both axes.
struct CfarParams {
  int train_cells = 8;
  int guard_cells = 2;
  double probability_false_alarm = 1e-3;

  int half_extent() const { return train_cells + guard_cells; }
  void validate() const;

  friend bool operator==(const CfarParams&, const CfarParams&) = default;
};

struct Detection {
  Bin bin;
  float magnitude = 0.0f;
};

/// Threshold scale for n training cells: n (P_fa^(-1/n) - 1).
double cfar_scale(int num_training_cells, double probability_false_alarm);

/// A cell is detected iff value > cfar_scale(N_t) * mean(training cells). The
/// training ring is clipped at map edges and N_t is the clipped count. The
/// scale is exact for exponentially distributed (square-law) inputs.
/// Results are in row-major order. Throws kWindowTooLarge when either map
/// dimension is smaller than the full window.
std::vector<Detection> cfar_detect(const MagnitudeMap& map, const CfarParams& params);

}  // namespace radann
