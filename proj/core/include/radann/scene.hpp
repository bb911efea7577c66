#pragma once

#include <vector>

#include <Eigen/Core>

#include "radann/radar_config.hpp"
#include "radann/types.hpp"

namespace radann {

/// Ground-truth point target. Trajectory holds one ground position (c_x, c_y)
/// per frame, radar at the origin, c_y pointing along boresight.
struct SceneObject {
  int instance_id = 0;
  Category category = Category::kCar;
  std::vector<Eigen::Vector2d> trajectory;
  double reflectivity_amplitude = 1.0;
};

struct Scene {
  int frame_count = 0;
  double frame_interval_s = 0.1;
  std::vector<SceneObject> objects;

  void validate(const RadarConfig& config) const;
  const SceneObject* find(int instance_id) const;
};

/// Polar state of a target at one frame, radial velocity positive when approaching.
struct TargetState {
  double range_m = 0.0;
  double azimuth_rad = 0.0;
  double radial_velocity_m_s = 0.0;
  Eigen::Vector2d position = Eigen::Vector2d::Zero();
};

/// Velocity comes from the forward difference of consecutive trajectory points
/// (backward difference on the last frame, zero for single-frame trajectories).
TargetState target_state(const SceneObject& object, int frame_index, double frame_interval_s);

/// Ground-truth (x, y, v_R) feature point of an object at a frame.
Point3 ground_truth_feature(const SceneObject& object, int frame_index, double frame_interval_s);

}  // namespace radann
