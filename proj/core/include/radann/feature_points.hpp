#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "radann/camera.hpp"
#include "radann/error.hpp"

namespace radann {

/// Physical prior I = [c, v_R] for one instance at one frame.
struct FeaturePoint {
  int frame_index = 0;
  int instance_id = 0;
  Category category = Category::kCar;
  Eigen::Vector2d position = Eigen::Vector2d::Zero();
  double radial_velocity = 0.0;
  Diagnostics diagnostics;

  bool flagged() const { return !diagnostics.empty(); }
  Point3 as_point() const { return {position.x(), position.y(), radial_velocity}; }
};

struct FeaturePointOptions {
  double delta_t_s = 1.0;
  double ground_height_m = 0.0;
  // Camera frame spacing; frame k is at k * frame_interval_s.
  double frame_interval_s = 0.1;
  double max_range_m = 50.0;
  double max_speed_m_s = 50.0;

  friend bool operator==(const FeaturePointOptions&, const FeaturePointOptions&) = default;
};

/// Per instance and frame: reference pixel, ground point, velocity against the
/// earlier frame nearest delta_t back, radial velocity. When no earlier frame
/// is at least delta_t / 2 back, the later frame nearest delta_t ahead is used
/// instead if it gives the longer baseline. Single-frame instances get v_R = 0 and a
/// kMissingHistory diagnostic. Output is sorted by (instance_id, frame_index).
std::vector<FeaturePoint> build_feature_points(std::span<const InstanceDetection> detections,
                                               const CameraModel& camera,
                                               const FeaturePointOptions& options = {});

}  // namespace radann
