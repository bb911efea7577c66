#include "radann/map_io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>

#include "radann/error.hpp"

namespace radann {

using nlohmann::json;

namespace {

template <typename T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    std::reverse(b, b + sizeof(T));
    std::memcpy(&v, b, sizeof(T));
    return v;
  }
}

json header_to_json(const ArrayHeader& h) {
  return {{"dims", h.dims},
          {"axes", h.axes},
          {"resolutions", h.resolutions},
          {"frame_index", h.frame_index},
          {"timestamp", h.timestamp_s},
          {"dtype", h.dtype},
          {"byte_order", "little"}};
}

ArrayHeader header_from_json(const json& j, const fs::path& where) {
  try {
    ArrayHeader h;
    h.dims = j.at("dims").get<std::vector<int>>();
    h.axes = j.value("axes", std::vector<std::string>{});
    h.resolutions = j.value("resolutions", json::object());
    h.frame_index = j.value("frame_index", 0);
    h.timestamp_s = j.value("timestamp", 0.0);
    h.dtype = j.at("dtype").get<std::string>();
    return h;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, where.string() + ": " + e.what());
  }
}

void write_bytes(const fs::path& path, const void* data, std::size_t size) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path.string() + " for writing");
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

std::vector<char> read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

ArrayHeader load_header(const fs::path& bin_path, const char* dtype, std::size_t rank) {
  ArrayHeader h = header_from_json(read_json_file(sidecar_path(bin_path)), sidecar_path(bin_path));
  if (h.dtype != dtype || h.dims.size() != rank) {
    throw Error(ErrorCode::kDimensionMismatch,
                bin_path.string() + ": expected " + dtype + " rank " + std::to_string(rank));
  }
  return h;
}

std::size_t element_count(const ArrayHeader& h) {
  std::size_t n = 1;
  for (int d : h.dims) {
    if (d < 0) throw Error(ErrorCode::kParseError, "negative dimension in sidecar");
    n *= static_cast<std::size_t>(d);
  }
  return n;
}

}  // namespace

fs::path sidecar_path(const fs::path& bin_path) {
  fs::path p = bin_path;
  p.replace_extension(".json");
  return p;
}

void write_map(const fs::path& bin_path, const MagnitudeMap& map, ArrayHeader header) {
  header.dims = {static_cast<int>(map.rows()), static_cast<int>(map.cols())};
  header.dtype = "float32";
  std::vector<float> buf(static_cast<std::size_t>(map.size()));
  for (Eigen::Index i = 0; i < map.size(); ++i) buf[i] = to_little(map.data()[i]);
  write_bytes(bin_path, buf.data(), buf.size() * sizeof(float));
  write_json_file(sidecar_path(bin_path), header_to_json(header));
}

MagnitudeMap read_map(const fs::path& bin_path, ArrayHeader* header) {
  const ArrayHeader h = load_header(bin_path, "float32", 2);
  const auto bytes = read_bytes(bin_path);
  const std::size_t n = element_count(h);
  if (bytes.size() != n * sizeof(float)) {
    throw Error(ErrorCode::kDimensionMismatch, bin_path.string() + ": size does not match sidecar dims");
  }
  MagnitudeMap map(h.dims[0], h.dims[1]);
  std::memcpy(map.data(), bytes.data(), bytes.size());
  for (Eigen::Index i = 0; i < map.size(); ++i) map.data()[i] = to_little(map.data()[i]);
  if (header) *header = h;
  return map;
}

void write_labels(const fs::path& bin_path, const LabelMap& labels, ArrayHeader header) {
  header.dims = {static_cast<int>(labels.rows()), static_cast<int>(labels.cols())};
  header.dtype = "uint8";
  write_bytes(bin_path, labels.data(), static_cast<std::size_t>(labels.size()));
  write_json_file(sidecar_path(bin_path), header_to_json(header));
}

LabelMap read_labels(const fs::path& bin_path, ArrayHeader* header) {
  const ArrayHeader h = load_header(bin_path, "uint8", 2);
  const auto bytes = read_bytes(bin_path);
  if (bytes.size() != element_count(h)) {
    throw Error(ErrorCode::kDimensionMismatch, bin_path.string() + ": size does not match sidecar dims");
  }
  LabelMap labels(h.dims[0], h.dims[1]);
  std::memcpy(labels.data(), bytes.data(), bytes.size());
  if (header) *header = h;
  return labels;
}

void write_cube(const fs::path& bin_path, const DataCube& cube, ArrayHeader header) {
  header.dims = {cube.num_rx, cube.num_chirps, cube.num_samples};
  header.dtype = "complex64";
  std::vector<float> buf;
  buf.reserve(cube.samples.size() * 2);
  for (const auto& s : cube.samples) {
    buf.push_back(to_little(s.real()));
    buf.push_back(to_little(s.imag()));
  }
  write_bytes(bin_path, buf.data(), buf.size() * sizeof(float));
  write_json_file(sidecar_path(bin_path), header_to_json(header));
}

DataCube read_cube(const fs::path& bin_path, ArrayHeader* header) {
  const ArrayHeader h = load_header(bin_path, "complex64", 3);
  const auto bytes = read_bytes(bin_path);
  const std::size_t n = element_count(h);
  if (bytes.size() != n * 2 * sizeof(float)) {
    throw Error(ErrorCode::kDimensionMismatch, bin_path.string() + ": size does not match sidecar dims");
  }
  DataCube cube(h.dims[0], h.dims[1], h.dims[2]);
  std::vector<float> buf(n * 2);
  std::memcpy(buf.data(), bytes.data(), bytes.size());
  for (std::size_t i = 0; i < n; ++i) {
    cube.samples[i] = {to_little(buf[2 * i]), to_little(buf[2 * i + 1])};
  }
  if (header) *header = h;
  return cube;
}

std::string read_text(const fs::path& path) {
  const auto bytes = read_bytes(path);
  return {bytes.begin(), bytes.end()};
}

void write_text(const fs::path& path, const std::string& text) {
  write_bytes(path, text.data(), text.size());
}

json read_json_file(const fs::path& path) {
  const std::string text = read_text(path);
  if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); })) {
    return json::object();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
    const auto last_nl = text.rfind('\n', upto == 0 ? 0 : upto - 1);
    const auto col = last_nl == std::string::npos ? upto : upto - last_nl - 1;
    throw Error(ErrorCode::kParseError, path.string() + ":" + std::to_string(line) + ":" +
                                            std::to_string(col) + ": " + e.what());
  }
}

void write_json_file(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::vector<json> read_jsonl(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::vector<json> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kParseError, path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void write_jsonl(const fs::path& path, std::span<const json> lines) {
  std::string text;
  for (const auto& j : lines) {
    text += j.dump();
    text += '\n';
  }
  write_text(path, text);
}

}  // namespace radann
