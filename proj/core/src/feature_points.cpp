#include "radann/feature_points.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace radann {

namespace {

struct Sample {
  const InstanceDetection* detection;
  double time_s;
  Eigen::Vector2d ground;
};

std::string context(const InstanceDetection& d) {
  return "instance " + std::to_string(d.instance_id) + " frame " + std::to_string(d.frame_index);
}

// Index in [begin, end) whose time is closest to target; earliest on ties.
int closest(const std::vector<Sample>& s, int begin, int end, double target) {
  int best = -1;
  double gap = 0.0;
  for (int j = begin; j < end; ++j) {
    const double g = std::abs(s[j].time_s - target);
    if (best < 0 || g < gap) {
      best = j;
      gap = g;
    }
  }
  return best;
}

}  // namespace

std::vector<FeaturePoint> build_feature_points(std::span<const InstanceDetection> detections,
                                               const CameraModel& camera,
                                               const FeaturePointOptions& options) {
  camera.validate();
  if (!(options.delta_t_s > 0)) throw Error(ErrorCode::kValidationError, "delta_t must be > 0");

  std::map<int, std::vector<Sample>> by_instance;
  for (const auto& d : detections) {
    Eigen::Vector2d ground;
    try {
      const Pixel px = reference_pixel(d);
      ground = pixel_to_ground(Eigen::Vector2d(px.x, px.y), camera, options.ground_height_m);
    } catch (const Error& e) {
      throw Error(e.code(), context(d) + ": " + e.detail());
    }
    by_instance[d.instance_id].push_back({&d, d.frame_index * options.frame_interval_s, ground});
  }

  std::vector<FeaturePoint> out;
  for (auto& [id, samples] : by_instance) {
    std::sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) {
      return a.detection->frame_index < b.detection->frame_index;
    });
    const int n = static_cast<int>(samples.size());
    for (int i = 0; i < n; ++i) {
      const Sample& s = samples[i];
      FeaturePoint fp;
      fp.frame_index = s.detection->frame_index;
      fp.instance_id = id;
      fp.category = s.detection->category;
      fp.position = s.ground;

      Eigen::Vector2d velocity = Eigen::Vector2d::Zero();
      const int back = i > 0 ? closest(samples, 0, i, s.time_s - options.delta_t_s) : -1;
      const int ahead = i + 1 < n ? closest(samples, i + 1, n, s.time_s + options.delta_t_s) : -1;
      const double back_gap = back >= 0 ? s.time_s - samples[back].time_s : 0.0;
      const double ahead_gap = ahead >= 0 ? samples[ahead].time_s - s.time_s : 0.0;
      // Short backward baselines amplify pixel noise; look ahead when that is longer.
      if (back >= 0 && (back_gap >= 0.5 * options.delta_t_s || ahead_gap <= back_gap)) {
        velocity = estimate_velocity(s.ground, samples[back].ground, back_gap);
      } else if (ahead >= 0) {
        velocity = estimate_velocity(samples[ahead].ground, s.ground, ahead_gap);
      } else {
        fp.diagnostics.push_back({ErrorCode::kMissingHistory,
                                  context(*s.detection) + ": single-frame instance, v_R set to 0"});
      }
      if (!fp.diagnostics.empty()) {
        fp.radial_velocity = 0.0;
      } else {
        fp.radial_velocity = radial_velocity(velocity, fp.position);
      }
      if (std::abs(fp.radial_velocity) >= options.max_speed_m_s) {
        fp.diagnostics.push_back({ErrorCode::kImplausibleVelocity,
                                  context(*s.detection) + ": |v_R| above sanity cap"});
      }
      if (fp.position.norm() > options.max_range_m) {
        fp.diagnostics.push_back({ErrorCode::kTargetOutOfRange,
                                  context(*s.detection) + ": ground point beyond radar range"});
      }
      out.push_back(std::move(fp));
    }
  }
  return out;
}

}  // namespace radann
