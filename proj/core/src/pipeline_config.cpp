#include "radann/pipeline_config.hpp"

#include "radann/json_io.hpp"
#include "radann/map_io.hpp"

namespace radann {

void PipelineConfig::validate() const {
  try {
    radar.validate();
    cfar.validate();
    clustering.validate();
    annotator.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kValidationError, e.what());
  }
  if (!(vision.delta_t_s > 0)) throw Error(ErrorCode::kValidationError, "vision.delta_t_s must be > 0");
  if (!(vision.frame_interval_s > 0)) {
    throw Error(ErrorCode::kValidationError, "vision.frame_interval_s must be > 0");
  }
  if (!calibration_path.empty() && !fs::exists(calibration_path)) {
    throw Error(ErrorCode::kValidationError,
                "paths.calibration does not exist: " + calibration_path.string());
  }
}

nlohmann::json config_to_json(const PipelineConfig& config) {
  nlohmann::json j;
  j["radar"] = config.radar;
  j["cfar"] = config.cfar;
  j["clustering"] = config.clustering;
  j["annotator"] = config.annotator;
  j["vision"] = {{"delta_t_s", config.vision.delta_t_s},
                 {"ground_height_m", config.vision.ground_height_m},
                 {"frame_interval_s", config.vision.frame_interval_s},
                 {"max_speed_m_s", config.vision.max_speed_m_s}};
  j["seed"] = config.root_seed;
  j["seeding"] = config.seeding == Seeding::kScene ? "scene" : "from-detections";
  j["paths"] = {{"calibration", config.calibration_path.string()}};
  return j;
}

PipelineConfig config_from_json(const nlohmann::json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw Error(ErrorCode::kParseError, "config root must be a JSON object");
  PipelineConfig c;
  if (j.contains("radar")) apply_json(j.at("radar"), c.radar);
  if (j.contains("cfar")) apply_json(j.at("cfar"), c.cfar);
  if (j.contains("clustering")) apply_json(j.at("clustering"), c.clustering);
  if (j.contains("annotator")) apply_json(j.at("annotator"), c.annotator);
  if (j.contains("vision")) {
    const auto& v = j.at("vision");
    c.vision.delta_t_s = get_field(v, "delta_t_s", c.vision.delta_t_s);
    c.vision.ground_height_m = get_field(v, "ground_height_m", c.vision.ground_height_m);
    c.vision.frame_interval_s = get_field(v, "frame_interval_s", c.vision.frame_interval_s);
    c.vision.max_speed_m_s = get_field(v, "max_speed_m_s", c.vision.max_speed_m_s);
  }
  c.root_seed = get_field<std::uint64_t>(j, "seed", c.root_seed);
  const auto seeding = get_field<std::string>(j, "seeding", "scene");
  if (seeding == "scene") {
    c.seeding = Seeding::kScene;
  } else if (seeding == "from-detections") {
    c.seeding = Seeding::kFromDetections;
  } else {
    throw Error(ErrorCode::kParseError, "field 'seeding': expected 'scene' or 'from-detections'");
  }
  if (j.contains("paths")) {
    const auto cal = get_field<std::string>(j.at("paths"), "calibration", "");
    if (!cal.empty()) {
      fs::path p(cal);
      c.calibration_path = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
    }
  }
  c.vision.max_range_m = c.radar.max_range_m;
  return c;
}

PipelineConfig load_config(const fs::path& path) {
  PipelineConfig c = config_from_json(read_json_file(path), path.parent_path());
  c.validate();
  return c;
}

void save_config(const PipelineConfig& config, const fs::path& path) {
  write_json_file(path, config_to_json(config));
}

}  // namespace radann
