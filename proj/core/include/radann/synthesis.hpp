#pragma once

#include <cstdint>

#include "radann/radar_config.hpp"
#include "radann/radar_frame.hpp"
#include "radann/scene.hpp"

namespace radann {

/// Point-scatterer IF model. Each target contributes
///   A * exp(j 2 pi [ (2 B r)/(c T_s) n dt + (2 f_c v_R / c) m T_c + f_c (k_az h sin a / c) k ])
/// to cube sample [k, m, n], plus circular complex Gaussian noise of standard
/// deviation noise_sigma seeded by rng_seed.
///
/// Throws kTargetOutOfRange for targets beyond max_range_m or behind the sensor.
/// Velocities beyond the unambiguous limit alias and are reported as a
/// kAmbiguousVelocity diagnostic on the frame.
RadarFrame synthesize_frame(const Scene& scene, int frame_index, const RadarConfig& config,
                            double noise_sigma, std::uint64_t rng_seed);

}  // namespace radann
