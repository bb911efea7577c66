#pragma once

#include "radann/radar_config.hpp"
#include "radann/radar_frame.hpp"

namespace radann {

/// Range, Doppler and angle FFTs over the raw cube. Fills rd_map (antenna
/// magnitudes averaged) and ra_map (chirp magnitudes averaged); both FFT-shifted.
/// Throws kDimensionMismatch when the cube does not match the config.
RadarFrame process_cube(RadarFrame frame, const RadarConfig& config);

/// Symmetric Hann window of length n (all ones for n == 1).
std::vector<double> hann_window(int n);

}  // namespace radann
