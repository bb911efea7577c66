#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radann/types.hpp"

namespace radann {

namespace fs = std::filesystem;

/// JSON sidecar stored next to every binary array (same stem, .json).
struct ArrayHeader {
  std::vector<int> dims;
  std::vector<std::string> axes;
  nlohmann::json resolutions = nlohmann::json::object();
  int frame_index = 0;
  double timestamp_s = 0.0;
  // "float32", "uint8" or "complex64"; set by the writers.
  std::string dtype;
};

fs::path sidecar_path(const fs::path& bin_path);

/// Little-endian float32, row-major.
void write_map(const fs::path& bin_path, const MagnitudeMap& map, ArrayHeader header);
MagnitudeMap read_map(const fs::path& bin_path, ArrayHeader* header = nullptr);

/// uint8 row-major.
void write_labels(const fs::path& bin_path, const LabelMap& labels, ArrayHeader header);
LabelMap read_labels(const fs::path& bin_path, ArrayHeader* header = nullptr);

/// Little-endian interleaved complex64, [rx][chirp][sample].
void write_cube(const fs::path& bin_path, const DataCube& cube, ArrayHeader header);
DataCube read_cube(const fs::path& bin_path, ArrayHeader* header = nullptr);

std::string read_text(const fs::path& path);
void write_text(const fs::path& path, const std::string& text);

/// Parses a JSON document; kParseError messages carry file, line and column.
/// An empty or whitespace-only file yields an empty object.
nlohmann::json read_json_file(const fs::path& path);
void write_json_file(const fs::path& path, const nlohmann::json& j);

std::vector<nlohmann::json> read_jsonl(const fs::path& path);
void write_jsonl(const fs::path& path, std::span<const nlohmann::json> lines);

}  // namespace radann
