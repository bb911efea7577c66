#include "radann/synthesis.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace radann {

namespace {

std::vector<std::complex<double>> phasor_ramp(int n, double step_rad) {
  std::vector<std::complex<double>> out(n);
  for (int i = 0; i < n; ++i) out[i] = std::polar(1.0, step_rad * i);
  return out;
}

}  // namespace

RadarFrame synthesize_frame(const Scene& scene, int frame_index, const RadarConfig& config,
                            double noise_sigma, std::uint64_t rng_seed) {
  config.validate();
  if (noise_sigma < 0) throw Error(ErrorCode::kValidationError, "noise_sigma must be >= 0");

  RadarFrame frame;
  frame.frame_index = frame_index;
  frame.timestamp_s = frame_index * scene.frame_interval_s;
  frame.raw_cube = DataCube(config.num_rx_virtual, config.chirps_per_frame, config.samples_per_chirp);

  const int num_rx = config.num_rx_virtual;
  const int num_chirps = config.chirps_per_frame;
  const int num_samples = config.samples_per_chirp;
  const double c = config.speed_of_light_m_s;
  const double two_pi = 2.0 * std::numbers::pi;
  const double sample_dt = config.sweep_period_s / num_samples;
  const double chirp_dt = config.chirp_interval_s();
  const double v_max = max_radial_velocity(config);

  std::vector<std::complex<double>> acc(frame.raw_cube.samples.size());

  for (const auto& obj : scene.objects) {
    const auto state = target_state(obj, frame_index, scene.frame_interval_s);
    const std::string tag = "object " + std::to_string(obj.instance_id) + " frame " +
                            std::to_string(frame_index);
    if (state.range_m > config.max_range_m || state.position.y() < 0.0) {
      throw Error(ErrorCode::kTargetOutOfRange, tag + ": outside the forward field up to max_range_m");
    }
    if (std::abs(state.radial_velocity_m_s) > v_max) {
      frame.diagnostics.push_back(
          {ErrorCode::kAmbiguousVelocity,
           tag + ": |v_R| = " + std::to_string(std::abs(state.radial_velocity_m_s)) +
               " m/s exceeds " + std::to_string(v_max) + " m/s and aliases"});
    }

    const double beat_hz = 2.0 * config.bandwidth_hz * state.range_m / (c * config.sweep_period_s);
    const double doppler_hz = 2.0 * config.carrier_frequency_hz * state.radial_velocity_m_s / c;
    const double antenna_cycles = config.carrier_frequency_hz * config.azimuth_phase_factor *
                                  config.antenna_spacing_m * std::sin(state.azimuth_rad) / c;

    const auto fast = phasor_ramp(num_samples, two_pi * beat_hz * sample_dt);
    const auto slow = phasor_ramp(num_chirps, two_pi * doppler_hz * chirp_dt);
    const auto spatial = phasor_ramp(num_rx, two_pi * antenna_cycles);

    std::size_t idx = 0;
    for (int k = 0; k < num_rx; ++k) {
      for (int m = 0; m < num_chirps; ++m) {
        const std::complex<double> km = obj.reflectivity_amplitude * spatial[k] * slow[m];
        for (int n = 0; n < num_samples; ++n) acc[idx++] += km * fast[n];
      }
    }
  }

  if (noise_sigma > 0) {
    std::mt19937_64 rng(rng_seed);
    std::normal_distribution<double> normal(0.0, noise_sigma / std::numbers::sqrt2);
    for (auto& s : acc) {
      const double re = normal(rng);
      const double im = normal(rng);
      s += std::complex<double>(re, im);
    }
  }

  for (std::size_t i = 0; i < acc.size(); ++i) {
    frame.raw_cube.samples[i] = std::complex<float>(static_cast<float>(acc[i].real()),
                                                    static_cast<float>(acc[i].imag()));
  }
  return frame;
}

}  // namespace radann
