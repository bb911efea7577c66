#include "radann/sequence_store.hpp"

#include <algorithm>
#include <cstdio>
#include <regex>

#include "radann/json_io.hpp"
#include "radann/map_io.hpp"

namespace radann {

Scenario scenario_from_json(const nlohmann::json& j) {
  Scenario s;
  s.scene = scene_from_json(j);
  s.noise_sigma = get_field(j, "noise_sigma", s.noise_sigma);
  if (j.contains("radar")) s.radar_overrides = j.at("radar");
  return s;
}

nlohmann::json scenario_to_json(const Scenario& scenario) {
  nlohmann::json j = scene_to_json(scenario.scene);
  j["noise_sigma"] = scenario.noise_sigma;
  if (!scenario.radar_overrides.empty()) j["radar"] = scenario.radar_overrides;
  return j;
}

Scenario load_scenario(const fs::path& path) { return scenario_from_json(read_json_file(path)); }

void save_scenario(const Scenario& scenario, const fs::path& path) {
  write_json_file(path, scenario_to_json(scenario));
}

RadarConfig effective_radar(const RadarConfig& base, const Scenario* scenario) {
  RadarConfig radar = base;
  if (scenario && !scenario->radar_overrides.empty()) apply_json(scenario->radar_overrides, radar);
  radar.validate();
  return radar;
}

const char* view_tag(View view) { return view == View::kRangeDoppler ? "rd" : "ra"; }

std::string frame_file_name(int frame, const std::string& kind) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%06d_", frame);
  return std::string(buf) + kind + ".bin";
}

fs::path SequenceStore::cube_path(int frame) const { return frames_dir() / frame_file_name(frame, "cube"); }

fs::path SequenceStore::map_path(int frame, View view) const {
  return frames_dir() / frame_file_name(frame, view_tag(view));
}

std::optional<Scenario> SequenceStore::scenario() const {
  if (!has_scene()) return std::nullopt;
  return load_scenario(scene_path());
}

std::vector<int> SequenceStore::frame_indices(const std::string& kind) const {
  std::vector<int> frames;
  if (!fs::exists(frames_dir())) return frames;
  const std::regex pattern("frame_(\\d+)_" + kind + "\\.bin");
  for (const auto& entry : fs::directory_iterator(frames_dir())) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (std::regex_match(name, m, pattern)) frames.push_back(std::stoi(m[1].str()));
  }
  std::sort(frames.begin(), frames.end());
  for (std::size_t i = 1; i < frames.size(); ++i) {
    if (frames[i] != frames[i - 1] + 1) {
      throw Error(ErrorCode::kValidationError,
                  root_.string() + ": frame indices are not contiguous at " + std::to_string(frames[i]));
    }
  }
  return frames;
}

}  // namespace radann
