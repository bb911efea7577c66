#pragma once

#include <span>
#include <vector>

#include "radann/cfar.hpp"
#include "radann/radar_config.hpp"
#include "radann/types.hpp"

namespace radann {

/// Cartesian DoA-Doppler point cloud of one frame. points[i] = (x, y, doppler)
/// with x lateral, y along boresight (metres) and doppler approach-positive (m/s).
struct DoaCloud {
  int frame_index = 0;
  std::vector<Point3> points;
  // (range_bin, angle_bin) on the range-angle map for each point.
  std::vector<Bin> source_bins;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

/// Converts range-angle detections to the DoA-Doppler cloud. Range uses bin
/// centres (rho + 0.5) * dd, azimuth the angle grid, and each point takes the
/// velocity of the strongest range-Doppler column in its range row. Points
/// outside max_range_m or on invisible angle bins are dropped.
/// Throws kBinOutOfRange for detections outside either map.
DoaCloud to_doa_cloud(std::span<const Detection> ra_detections, const MagnitudeMap& rd_map,
                      const RadarConfig& config, int frame_index);

/// Range-angle bin a Cartesian point falls back onto (inverse of the conversion).
Bin cartesian_to_ra_bin(const RadarConfig& config, double x, double y);

}  // namespace radann
