#pragma once

#include <nlohmann/json.hpp>

#include "radann/annotation.hpp"
#include "radann/bandwidth.hpp"
#include "radann/camera.hpp"
#include "radann/cfar.hpp"
#include "radann/doa_cloud.hpp"
#include "radann/metrics.hpp"
#include "radann/radar_config.hpp"
#include "radann/rle.hpp"
#include "radann/scene.hpp"
#include "radann/tracking.hpp"

// JSON encodings of the domain types. Readers fill missing fields from the
// defaults and throw Error(kParseError) naming the offending field.

namespace radann {

using nlohmann::json;

void to_json(json& j, const RadarConfig& c);
/// Overrides the fields present in j on top of c.
void apply_json(const json& j, RadarConfig& c);

void to_json(json& j, const CfarParams& p);
void apply_json(const json& j, CfarParams& p);

void to_json(json& j, const ClusteringConfig& c);
void apply_json(const json& j, ClusteringConfig& c);

void to_json(json& j, const AnnotatorConfig& c);
void apply_json(const json& j, AnnotatorConfig& c);

/// {frame_count, frame_interval_s, objects:[{id, category,
/// amplitude, trajectory:[[x, y], ...] | linear:{start, velocity}}]}
json scene_to_json(const Scene& scene);
Scene scene_from_json(const json& j);

/// {A: 3x3, B: 3x4, width, height}
json camera_to_json(const CameraModel& camera);
CameraModel camera_from_json(const json& j);

json rle_to_json(const RleMask& rle);
RleMask rle_from_json(const json& j);

/// {frame, id, category, box:[x0, y0, x1, y1], mask_rle, score}
json detection_to_json(const InstanceDetection& d);
InstanceDetection detection_from_json(const json& j);

/// {frame, detections:[[row, col, magnitude]], points:[[x, y, v]], bins:[[row, col]]}
json cloud_to_json(const DoaCloud& cloud, std::span<const Detection> detections);
DoaCloud cloud_from_json(const json& j);

/// {frame, id, category, rd:{sparse, box, mask_rle}, ra:{...}}
json annotation_to_json(const Annotation& a);
Annotation annotation_from_json(const json& j);

json track_to_json(const Track& track);
json report_to_json(const MetricReport& report);

/// Line-numbered field access helpers.
template <typename T>
T get_field(const json& j, const char* key, const T& fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace radann
