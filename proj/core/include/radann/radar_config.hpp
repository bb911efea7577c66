#pragma once

#include "radann/error.hpp"

namespace radann {

inline constexpr double kSpeedOfLight = 2.998e8;

/// FMCW sensor parameters. Defaults follow the 77 GHz automotive profile with a
/// 0.20 m x 0.42 m/s bin grid, 256 x 64 range-Doppler and 256 x 256 range-angle maps.
struct RadarConfig {
  double carrier_frequency_hz = 77e9;
  // Effective processed bandwidth: c / (2 B) = 0.20 m.
  double bandwidth_hz = 749.5e6;
  double sweep_period_s = 60e-6;
  int chirps_per_frame = 64;
  int samples_per_chirp = 256;
  int num_rx_virtual = 8;
  double antenna_spacing_m = kSpeedOfLight / 77e9 / 2.0;
  // Chirp-frame duration T; sets the velocity resolution c / (2 f_c T) = 0.42 m/s.
  double frame_period_s = kSpeedOfLight / (2.0 * 77e9 * 0.42);
  int num_angle_bins = 256;
  double max_range_m = 50.0;
  double speed_of_light_m_s = kSpeedOfLight;
  // Inter-antenna phase is 2 pi f_c (factor * h sin(alpha)) / c.
  double azimuth_phase_factor = 1.0;
  bool hann_range = true;
  bool hann_doppler = true;

  double wavelength_m() const { return speed_of_light_m_s / carrier_frequency_hz; }
  /// Chirp repetition interval T / chirps_per_frame.
  double chirp_interval_s() const { return frame_period_s / chirps_per_frame; }

  /// Throws Error(kInvalidConfig) naming the first violated invariant.
  void validate() const;

  friend bool operator==(const RadarConfig&, const RadarConfig&) = default;
};

double range_resolution(const RadarConfig& config);
double velocity_resolution(const RadarConfig& config);
/// (chirps_per_frame / 2) * velocity_resolution.
double max_radial_velocity(const RadarConfig& config);
/// c / (f_c N_Rx h cos(azimuth)); throws kAngleOutOfRange when cos(azimuth) <= 0.
double angle_resolution(const RadarConfig& config, double azimuth_rad);

int doppler_center_bin(const RadarConfig& config);
int angle_center_bin(const RadarConfig& config);

/// Signed radial velocity (approach-positive) of an FFT-shifted Doppler column.
double doppler_bin_velocity(const RadarConfig& config, int col);
/// sin(azimuth) at the centre of an FFT-shifted angle column. May exceed 1 in
/// magnitude for invisible bins when the array is under-sampled.
double angle_bin_sine(const RadarConfig& config, int col);
/// Nearest angle column for a given sin(azimuth), unclamped.
int nearest_angle_bin(const RadarConfig& config, double sine);

}  // namespace radann
