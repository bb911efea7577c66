#include "radann/scene.hpp"

#include <cmath>
#include <string>

namespace radann {

void Scene::validate(const RadarConfig& config) const {
  if (frame_count < 0) throw Error(ErrorCode::kValidationError, "frame_count must be >= 0");
  if (!(frame_interval_s > 0)) throw Error(ErrorCode::kValidationError, "frame_interval_s must be > 0");
  for (const auto& obj : objects) {
    const std::string tag = "object " + std::to_string(obj.instance_id);
    if (static_cast<int>(obj.trajectory.size()) != frame_count) {
      throw Error(ErrorCode::kValidationError, tag + ": trajectory length != frame_count");
    }
    if (!(obj.reflectivity_amplitude > 0)) {
      throw Error(ErrorCode::kValidationError, tag + ": reflectivity_amplitude must be > 0");
    }
    for (const auto& p : obj.trajectory) {
      if (p.norm() > config.max_range_m) {
        throw Error(ErrorCode::kTargetOutOfRange, tag + ": position beyond max_range_m");
      }
    }
  }
}

const SceneObject* Scene::find(int instance_id) const {
  for (const auto& obj : objects) {
    if (obj.instance_id == instance_id) return &obj;
  }
  return nullptr;
}

TargetState target_state(const SceneObject& object, int frame_index, double frame_interval_s) {
  const auto n = static_cast<int>(object.trajectory.size());
  if (frame_index < 0 || frame_index >= n) {
    throw Error(ErrorCode::kValidationError,
                "frame " + std::to_string(frame_index) + " outside trajectory");
  }
  TargetState state;
  state.position = object.trajectory[frame_index];
  state.range_m = state.position.norm();
  state.azimuth_rad = std::atan2(state.position.x(), state.position.y());

  Eigen::Vector2d velocity = Eigen::Vector2d::Zero();
  if (frame_index + 1 < n) {
    velocity = (object.trajectory[frame_index + 1] - state.position) / frame_interval_s;
  } else if (frame_index > 0) {
    velocity = (state.position - object.trajectory[frame_index - 1]) / frame_interval_s;
  }
  if (state.range_m > 0) {
    state.radial_velocity_m_s = -velocity.dot(state.position) / state.range_m;
  }
  return state;
}

Point3 ground_truth_feature(const SceneObject& object, int frame_index, double frame_interval_s) {
  const auto s = target_state(object, frame_index, frame_interval_s);
  return {s.position.x(), s.position.y(), s.radial_velocity_m_s};
}

}  // namespace radann
