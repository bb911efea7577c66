#pragma once

#include "radann/error.hpp"
#include "radann/types.hpp"

namespace radann {

struct RadarFrame {
  int frame_index = 0;
  double timestamp_s = 0.0;
  DataCube raw_cube;
  // [samples_per_chirp x chirps_per_frame], zero velocity at the centre column.
  MagnitudeMap rd_map;
  // [samples_per_chirp x num_angle_bins], boresight at the centre column.
  MagnitudeMap ra_map;
  Diagnostics diagnostics;
};

}  // namespace radann
