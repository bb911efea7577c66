#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "radann/annotation.hpp"
#include "radann/bandwidth.hpp"
#include "radann/cfar.hpp"
#include "radann/feature_points.hpp"
#include "radann/radar_config.hpp"

namespace radann {

enum class Seeding { kScene, kFromDetections };

/// Everything a pipeline run needs besides the sequence itself.
struct PipelineConfig {
  RadarConfig radar;
  CfarParams cfar;
  ClusteringConfig clustering;
  AnnotatorConfig annotator;
  FeaturePointOptions vision;
  std::uint64_t root_seed = 0;
  Seeding seeding = Seeding::kScene;
  // Camera calibration JSON; required for Seeding::kFromDetections.
  std::filesystem::path calibration_path;

  /// Throws kValidationError naming the violated invariant or missing path.
  void validate() const;

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

nlohmann::json config_to_json(const PipelineConfig& config);
/// Missing sections and fields keep their defaults; relative paths resolve
/// against base_dir.
PipelineConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

/// Throws kParseError (with line and column) or kValidationError.
PipelineConfig load_config(const std::filesystem::path& path);
void save_config(const PipelineConfig& config, const std::filesystem::path& path);

}  // namespace radann
