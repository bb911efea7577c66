#include "radann/doa_cloud.hpp"

#include <cmath>
#include <string>

#include "radann/error.hpp"

namespace radann {

DoaCloud to_doa_cloud(std::span<const Detection> ra_detections, const MagnitudeMap& rd_map,
                      const RadarConfig& config, int frame_index) {
  const int range_bins = config.samples_per_chirp;
  const int angle_bins = config.num_angle_bins;
  if (rd_map.rows() != range_bins || rd_map.cols() != config.chirps_per_frame) {
    throw Error(ErrorCode::kDimensionMismatch, "rd_map dims do not match config");
  }
  const double dd = range_resolution(config);

  DoaCloud cloud;
  cloud.frame_index = frame_index;
  std::vector<int> doppler_peak(range_bins, -1);

  for (const auto& det : ra_detections) {
    const int rho = det.bin.row;
    const int b = det.bin.col;
    if (rho < 0 || rho >= range_bins || b < 0 || b >= angle_bins) {
      throw Error(ErrorCode::kBinOutOfRange,
                  "detection (" + std::to_string(rho) + ", " + std::to_string(b) + ") outside maps");
    }
    const double sine = angle_bin_sine(config, b);
    if (std::abs(sine) > 1.0) continue;
    const double r = (rho + 0.5) * dd;
    if (r > config.max_range_m) continue;

    if (doppler_peak[rho] < 0) {
      Eigen::Index best = 0;
      rd_map.row(rho).maxCoeff(&best);
      doppler_peak[rho] = static_cast<int>(best);
    }
    const double alpha = std::asin(sine);
    cloud.points.emplace_back(r * std::sin(alpha), r * std::cos(alpha),
                              doppler_bin_velocity(config, doppler_peak[rho]));
    cloud.source_bins.push_back(det.bin);
  }
  return cloud;
}

Bin cartesian_to_ra_bin(const RadarConfig& config, double x, double y) {
  const double r = std::hypot(x, y);
  const int range_bin = static_cast<int>(std::floor(r / range_resolution(config)));
  const double sine = r > 0 ? x / r : 0.0;
  return {range_bin, nearest_angle_bin(config, sine)};
}

}  // namespace radann
