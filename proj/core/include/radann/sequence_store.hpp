#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radann/radar_config.hpp"
#include "radann/scene.hpp"

namespace radann {

/// Scenario file: the scene plus synthesis settings and radar overrides.
struct Scenario {
  Scene scene;
  double noise_sigma = 0.05;
  nlohmann::json radar_overrides = nlohmann::json::object();
};

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& scenario);
Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

/// Config radar settings with the scenario's overrides applied, validated.
RadarConfig effective_radar(const RadarConfig& base, const Scenario* scenario);

enum class View { kRangeDoppler, kRangeAngle };
const char* view_tag(View view);

/// On-disk layout of one sequence:
///   scene.json
///   frames/frame_NNNNNN_{cube,rd,ra}.bin + .json sidecars
///   detections.jsonl   camera instance detections (input)
///   clouds.jsonl       CFAR detections and DoA clouds, one frame per line
///   tracks.jsonl       per-instance tracks
///   annotations.jsonl  one line per (frame, instance)
///   report.json
class SequenceStore {
 public:
  explicit SequenceStore(std::filesystem::path root) : root_(std::move(root)) {}

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path scene_path() const { return root_ / "scene.json"; }
  std::filesystem::path frames_dir() const { return root_ / "frames"; }
  std::filesystem::path cube_path(int frame) const;
  std::filesystem::path map_path(int frame, View view) const;
  std::filesystem::path detections_path() const { return root_ / "detections.jsonl"; }
  std::filesystem::path clouds_path() const { return root_ / "clouds.jsonl"; }
  std::filesystem::path tracks_path() const { return root_ / "tracks.jsonl"; }
  std::filesystem::path annotations_path() const { return root_ / "annotations.jsonl"; }
  std::filesystem::path report_path() const { return root_ / "report.json"; }

  bool has_scene() const { return std::filesystem::exists(scene_path()); }
  std::optional<Scenario> scenario() const;

  /// Sorted frame indices with a file of the given kind ("cube", "rd", "ra")
  /// in frames/. Throws kValidationError when they are not contiguous.
  std::vector<int> frame_indices(const std::string& kind) const;

 private:
  std::filesystem::path root_;
};

/// frames/frame_NNNNNN_<kind>.bin style name.
std::string frame_file_name(int frame, const std::string& kind);

}  // namespace radann
