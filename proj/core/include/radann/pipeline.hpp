#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radann/annotation.hpp"
#include "radann/metrics.hpp"
#include "radann/pipeline_config.hpp"
#include "radann/sequence_store.hpp"
#include "radann/tracking.hpp"

namespace radann {

/// Worker cap from RADAR_ANNOTATE_THREADS (default: hardware concurrency).
unsigned worker_threads();

/// Runs fn(0..n-1) on up to worker_threads() threads. If any call throws, the
/// exception from the lowest index is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Writes frames/frame_N_cube.bin for every scene frame. Requires scene.json.
void simulate_sequence(const PipelineConfig& config, const SequenceStore& store);

/// Turns every stored cube into rd / ra maps.
void process_sequence(const PipelineConfig& config, const SequenceStore& store);

/// CFAR on every range-angle map, DoA conversion, writes clouds.jsonl.
void detect_sequence(const PipelineConfig& config, const SequenceStore& store);

/// Which instances to track and where to start.
struct SeedRequest {
  std::optional<int> frame;
  std::optional<int> instance;
  // Scenario to seed from instead of the sequence's scene.json.
  std::optional<std::filesystem::path> scene;
};

struct InstanceSeed {
  int instance_id = 0;
  Category category = Category::kCar;
  int frame_index = 0;
  Point3 point = Point3::Zero();
};

/// Seeds from scene ground truth or from camera detections + calibration,
/// depending on config.seeding. Scene seeds default to the middle frame;
/// detection seeds to the unflagged feature point nearest the instance's
/// median frame.
std::vector<InstanceSeed> resolve_seeds(const PipelineConfig& config, const SequenceStore& store,
                                        const SeedRequest& request);

struct AnnotateSummary {
  std::vector<Track> tracks;
  std::vector<Annotation> annotations;
  // Seeded instances that produced no track, with the reason.
  std::vector<std::pair<int, std::string>> failures;

  bool all_tracked() const { return failures.empty(); }
};

/// Tracks every seed through clouds.jsonl and writes tracks.jsonl and
/// annotations.jsonl sorted by (frame, instance).
AnnotateSummary annotate_sequence(const PipelineConfig& config, const SequenceStore& store,
                                  const SeedRequest& request);

struct InstanceSummary {
  int instance_id = 0;
  Category category = Category::kCar;
  int annotated_frames = 0;
  int first_frame = 0;
  int last_frame = 0;
};

struct SequenceReport {
  std::string sequence;
  int frames = 0;
  int instances = 0;
  // Frames with at least one annotated instance.
  int annotated_frames = 0;
  std::vector<InstanceSummary> per_instance;

  nlohmann::json to_json() const;
  std::string text() const;
};

/// Summarises annotations.jsonl and writes report.json.
SequenceReport export_report(const SequenceStore& store);

/// simulate (when scene.json exists) -> process -> detect -> annotate -> report.
/// Returns 0 iff every seeded instance produced a track.
int run_pipeline(const PipelineConfig& config, const SequenceStore& store, const SeedRequest& request);

enum class EvalMode { kDense, kSparse };

/// Category-labelled raster of a frame's annotation masks (later instances win).
LabelMap render_labels(std::span<const Annotation> annotations, int frame, View view, int rows, int cols);
/// Category-labelled sparse points of a frame.
std::vector<LabeledPoint> sparse_truth(std::span<const Annotation> annotations, int frame, View view);

/// <dir>/frame_NNNNNN_<view>_labels.bin
std::filesystem::path label_map_path(const std::filesystem::path& dir, int frame, View view);

/// Scores every prediction label map in pred_dir against the annotations in
/// the truth sequence; counts are summed over frames before computing ratios.
MetricReport evaluate(const std::filesystem::path& pred_dir, const SequenceStore& truth, EvalMode mode,
                      View view);

/// Aligned text table in percent: per-class columns then m / h aggregates.
std::string format_metric_table(const MetricReport& report, EvalMode mode);

}  // namespace radann
