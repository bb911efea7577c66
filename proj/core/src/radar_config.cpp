#include "radann/radar_config.hpp"

#include <cmath>
#include <string>

#include "radann/types.hpp"

namespace radann {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kAngleOutOfRange: return "AngleOutOfRange";
    case ErrorCode::kTargetOutOfRange: return "TargetOutOfRange";
    case ErrorCode::kAmbiguousVelocity: return "AmbiguousVelocity";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kWindowTooLarge: return "WindowTooLarge";
    case ErrorCode::kBinOutOfRange: return "BinOutOfRange";
    case ErrorCode::kEmptyCloud: return "EmptyCloud";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kDegenerateCluster: return "DegenerateCluster";
    case ErrorCode::kSingularCovariance: return "SingularCovariance";
    case ErrorCode::kGridTooSmall: return "GridTooSmall";
    case ErrorCode::kEmptyMask: return "EmptyMask";
    case ErrorCode::kRayParallelToGround: return "RayParallelToGround";
    case ErrorCode::kBehindCamera: return "BehindCamera";
    case ErrorCode::kAtOrigin: return "AtOrigin";
    case ErrorCode::kMissingHistory: return "MissingHistory";
    case ErrorCode::kImplausibleVelocity: return "ImplausibleVelocity";
    case ErrorCode::kAssociationTooFar: return "AssociationTooFar";
    case ErrorCode::kSeedAssociationFailed: return "SeedAssociationFailed";
    case ErrorCode::kBinOverflow: return "BinOverflow";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kPointOutOfBounds: return "PointOutOfBounds";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

std::string_view to_string(Category category) {
  switch (category) {
    case Category::kPedestrian: return "pedestrian";
    case Category::kCyclist: return "cyclist";
    case Category::kCar: return "car";
  }
  return "unknown";
}

Category category_from_string(std::string_view name) {
  if (name == "pedestrian") return Category::kPedestrian;
  if (name == "cyclist") return Category::kCyclist;
  if (name == "car") return Category::kCar;
  throw Error(ErrorCode::kValidationError, "unknown category '" + std::string(name) + "'");
}

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidConfig, what);
}

}  // namespace

void RadarConfig::validate() const {
  require(carrier_frequency_hz > 0, "carrier_frequency_hz must be > 0");
  require(bandwidth_hz > 0, "bandwidth_hz must be > 0");
  require(sweep_period_s > 0, "sweep_period_s must be > 0");
  require(frame_period_s > 0, "frame_period_s must be > 0");
  require(antenna_spacing_m > 0, "antenna_spacing_m must be > 0");
  require(max_range_m > 0, "max_range_m must be > 0");
  require(speed_of_light_m_s > 0, "speed_of_light_m_s must be > 0");
  require(azimuth_phase_factor > 0, "azimuth_phase_factor must be > 0");
  require(num_rx_virtual > 0, "num_rx_virtual must be > 0");
  require(is_power_of_two(chirps_per_frame), "chirps_per_frame must be a power of two");
  require(is_power_of_two(samples_per_chirp), "samples_per_chirp must be a power of two");
  require(is_power_of_two(num_angle_bins), "num_angle_bins must be a power of two");
  require(num_angle_bins >= num_rx_virtual, "num_angle_bins must be >= num_rx_virtual");
  require(sweep_period_s <= chirp_interval_s(),
          "sweep_period_s must fit in the chirp interval frame_period_s / chirps_per_frame");
  require(max_range_m <= samples_per_chirp * range_resolution(*this) * (1.0 + 1e-12),
          "max_range_m must be <= samples_per_chirp * range_resolution");
}

double range_resolution(const RadarConfig& config) {
  return config.speed_of_light_m_s / (2.0 * config.bandwidth_hz);
}

double velocity_resolution(const RadarConfig& config) {
  return config.speed_of_light_m_s / (2.0 * config.carrier_frequency_hz * config.frame_period_s);
}

double max_radial_velocity(const RadarConfig& config) {
  return 0.5 * config.chirps_per_frame * velocity_resolution(config);
}

double angle_resolution(const RadarConfig& config, double azimuth_rad) {
  const double c = std::cos(azimuth_rad);
  if (!(c > 1e-12)) {
    throw Error(ErrorCode::kAngleOutOfRange,
                "cos(azimuth) must be > 0, got azimuth " + std::to_string(azimuth_rad));
  }
  return config.speed_of_light_m_s /
         (config.carrier_frequency_hz * config.num_rx_virtual * config.antenna_spacing_m * c);
}

int doppler_center_bin(const RadarConfig& config) { return config.chirps_per_frame / 2; }

int angle_center_bin(const RadarConfig& config) { return config.num_angle_bins / 2; }

double doppler_bin_velocity(const RadarConfig& config, int col) {
  return (col - doppler_center_bin(config)) * velocity_resolution(config);
}

namespace {

// Spatial frequency (cycles per antenna) per unit sin(azimuth).
double spatial_scale(const RadarConfig& config) {
  return config.azimuth_phase_factor * config.antenna_spacing_m / config.wavelength_m();
}

}  // namespace

double angle_bin_sine(const RadarConfig& config, int col) {
  return (col - angle_center_bin(config)) / (config.num_angle_bins * spatial_scale(config));
}

int nearest_angle_bin(const RadarConfig& config, double sine) {
  return angle_center_bin(config) +
         static_cast<int>(std::lround(sine * config.num_angle_bins * spatial_scale(config)));
}

}  // namespace radann
