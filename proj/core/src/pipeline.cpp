#include "radann/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <regex>
#include <sstream>
#include <thread>

#include "radann/cfar.hpp"
#include "radann/doa_cloud.hpp"
#include "radann/json_io.hpp"
#include "radann/map_io.hpp"
#include "radann/processing.hpp"
#include "radann/random.hpp"
#include "radann/synthesis.hpp"

namespace radann {

unsigned worker_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RADAR_ANNOTATE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) n = static_cast<unsigned>(v);
  }
  return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(worker_threads(), n);
  std::vector<std::exception_ptr> errors(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::mutex mu;
    std::size_t next = 0;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          std::size_t i;
          {
            std::lock_guard lock(mu);
            if (next >= n) return;
            i = next++;
          }
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

namespace {

RadarConfig store_radar(const PipelineConfig& config, const SequenceStore& store) {
  const auto scenario = store.scenario();
  return effective_radar(config.radar, scenario ? &*scenario : nullptr);
}

ArrayHeader map_header(const RadarConfig& radar, View view, int frame, double timestamp) {
  ArrayHeader h;
  h.frame_index = frame;
  h.timestamp_s = timestamp;
  if (view == View::kRangeDoppler) {
    h.axes = {"range", "doppler"};
    h.resolutions = {{"range_m", range_resolution(radar)}, {"doppler_m_s", velocity_resolution(radar)}};
  } else {
    h.axes = {"range", "angle"};
    h.resolutions = {{"range_m", range_resolution(radar)},
                     {"angle_sine", angle_bin_sine(radar, angle_center_bin(radar) + 1)}};
  }
  return h;
}

std::string where(int frame, int instance = -1) {
  std::string s = "frame " + std::to_string(frame);
  if (instance >= 0) s += " instance " + std::to_string(instance);
  return s;
}

template <typename F>
auto with_context(const std::string& ctx, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.code(), ctx + ": " + e.detail());
  }
}

std::vector<DoaCloud> load_clouds(const SequenceStore& store) {
  if (!fs::exists(store.clouds_path())) {
    throw Error(ErrorCode::kIoError, "missing " + store.clouds_path().string() + " (run detect first)");
  }
  std::vector<DoaCloud> clouds;
  for (const auto& line : read_jsonl(store.clouds_path())) clouds.push_back(cloud_from_json(line));
  std::sort(clouds.begin(), clouds.end(),
            [](const DoaCloud& a, const DoaCloud& b) { return a.frame_index < b.frame_index; });
  return clouds;
}

std::vector<Annotation> load_annotations(const SequenceStore& store) {
  std::vector<Annotation> out;
  if (!fs::exists(store.annotations_path())) return out;
  for (const auto& line : read_jsonl(store.annotations_path())) out.push_back(annotation_from_json(line));
  return out;
}

}  // namespace

void simulate_sequence(const PipelineConfig& config, const SequenceStore& store) {
  const auto scenario = store.scenario();
  if (!scenario) throw Error(ErrorCode::kIoError, "missing " + store.scene_path().string());
  const RadarConfig radar = effective_radar(config.radar, &*scenario);
  scenario->scene.validate(radar);

  // Drop stale frames from earlier runs so indices stay contiguous.
  if (fs::exists(store.frames_dir())) fs::remove_all(store.frames_dir());
  fs::create_directories(store.frames_dir());

  const auto& scene = scenario->scene;
  parallel_for(static_cast<std::size_t>(scene.frame_count), [&](std::size_t i) {
    const int frame = static_cast<int>(i);
    with_context(where(frame), [&] {
      const RadarFrame rf = synthesize_frame(scene, frame, radar, scenario->noise_sigma,
                                             stage_seed(config.root_seed, Stage::kSynthesis, frame, 0));
      ArrayHeader h;
      h.axes = {"rx", "chirp", "sample"};
      h.frame_index = frame;
      h.timestamp_s = rf.timestamp_s;
      write_cube(store.cube_path(frame), rf.raw_cube, h);
      return 0;
    });
  });
}

void process_sequence(const PipelineConfig& config, const SequenceStore& store) {
  const RadarConfig radar = store_radar(config, store);
  const auto frames = store.frame_indices("cube");
  parallel_for(frames.size(), [&](std::size_t i) {
    const int frame = frames[i];
    with_context(where(frame), [&] {
      RadarFrame rf;
      ArrayHeader cube_header;
      rf.raw_cube = read_cube(store.cube_path(frame), &cube_header);
      rf.frame_index = frame;
      rf.timestamp_s = cube_header.timestamp_s;
      rf = process_cube(std::move(rf), radar);
      write_map(store.map_path(frame, View::kRangeDoppler), rf.rd_map,
                map_header(radar, View::kRangeDoppler, frame, rf.timestamp_s));
      write_map(store.map_path(frame, View::kRangeAngle), rf.ra_map,
                map_header(radar, View::kRangeAngle, frame, rf.timestamp_s));
      return 0;
    });
  });
}

void detect_sequence(const PipelineConfig& config, const SequenceStore& store) {
  const RadarConfig radar = store_radar(config, store);
  const auto frames = store.frame_indices("ra");
  std::vector<nlohmann::json> lines(frames.size());
  parallel_for(frames.size(), [&](std::size_t i) {
    const int frame = frames[i];
    with_context(where(frame), [&] {
      const MagnitudeMap ra = read_map(store.map_path(frame, View::kRangeAngle));
      const MagnitudeMap rd = read_map(store.map_path(frame, View::kRangeDoppler));
      // CFAR runs on power so the false-alarm rate holds for square-law noise.
      const MagnitudeMap power = ra.cwiseProduct(ra);
      std::vector<Detection> dets = cfar_detect(power, config.cfar);
      for (auto& d : dets) d.magnitude = ra(d.bin.row, d.bin.col);
      const DoaCloud cloud = to_doa_cloud(dets, rd, radar, frame);
      lines[i] = cloud_to_json(cloud, dets);
      return 0;
    });
  });
  write_jsonl(store.clouds_path(), lines);
}

std::vector<InstanceSeed> resolve_seeds(const PipelineConfig& config, const SequenceStore& store,
                                        const SeedRequest& request) {
  std::vector<InstanceSeed> seeds;
  const auto scenario = request.scene ? std::optional<Scenario>(load_scenario(*request.scene)) : store.scenario();

  if (config.seeding == Seeding::kScene) {
    if (!scenario) {
      throw Error(ErrorCode::kIoError,
                  "scene seeding needs " + store.scene_path().string() + " or --scene");
    }
    const Scene& scene = scenario->scene;
    for (const auto& obj : scene.objects) {
      if (request.instance && obj.instance_id != *request.instance) continue;
      const int frame = request.frame.value_or(scene.frame_count / 2);
      if (frame < 0 || frame >= scene.frame_count) {
        throw Error(ErrorCode::kValidationError, "seed frame " + std::to_string(frame) + " outside the scene");
      }
      seeds.push_back({obj.instance_id, obj.category, frame,
                       ground_truth_feature(obj, frame, scene.frame_interval_s)});
    }
  } else {
    if (config.calibration_path.empty()) {
      throw Error(ErrorCode::kValidationError,
                  "from-detections seeding needs paths.calibration (camera calibration JSON)");
    }
    if (!fs::exists(config.calibration_path)) {
      throw Error(ErrorCode::kIoError,
                  "camera calibration not found: " + config.calibration_path.string());
    }
    const CameraModel camera = camera_from_json(read_json_file(config.calibration_path));
    std::vector<InstanceDetection> detections;
    for (const auto& line : read_jsonl(store.detections_path())) {
      detections.push_back(detection_from_json(line));
    }
    FeaturePointOptions options = config.vision;
    options.max_range_m = config.radar.max_range_m;
    if (scenario) options.frame_interval_s = scenario->scene.frame_interval_s;
    const auto points = build_feature_points(detections, camera, options);

    std::map<int, std::vector<const FeaturePoint*>> by_instance;
    for (const auto& fp : points) {
      if (request.instance && fp.instance_id != *request.instance) continue;
      by_instance[fp.instance_id].push_back(&fp);
    }
    for (const auto& [id, fps] : by_instance) {
      const int median_frame = fps[fps.size() / 2]->frame_index;
      const int target = request.frame.value_or(median_frame);
      const FeaturePoint* best = nullptr;
      for (const auto* fp : fps) {
        if (fp->flagged()) continue;
        if (!best || std::abs(fp->frame_index - target) < std::abs(best->frame_index - target)) best = fp;
      }
      if (!best) best = fps[fps.size() / 2];
      seeds.push_back({id, best->category, best->frame_index, best->as_point()});
    }
  }
  return seeds;
}

AnnotateSummary annotate_sequence(const PipelineConfig& config, const SequenceStore& store,
                                  const SeedRequest& request) {
  const RadarConfig radar = store_radar(config, store);
  const std::vector<DoaCloud> clouds = load_clouds(store);
  const std::vector<InstanceSeed> seeds = resolve_seeds(config, store, request);

  struct Outcome {
    std::optional<Track> track;
    std::vector<Annotation> annotations;
    std::string failure;
  };
  std::vector<Outcome> outcomes(seeds.size());

  parallel_for(seeds.size(), [&](std::size_t i) {
    const InstanceSeed& seed = seeds[i];
    Outcome& out = outcomes[i];
    auto pos = std::find_if(clouds.begin(), clouds.end(),
                            [&](const DoaCloud& c) { return c.frame_index == seed.frame_index; });
    if (pos == clouds.end()) {
      out.failure = where(seed.frame_index, seed.instance_id) + ": seed frame has no cloud";
      return;
    }
    try {
      out.track = track_sequence(clouds, static_cast<std::size_t>(pos - clouds.begin()), seed.point,
                                 config.clustering, config.annotator,
                                 stage_seed(config.root_seed, Stage::kTracking, 0, seed.instance_id),
                                 seed.instance_id, seed.category);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kSeedAssociationFailed && e.code() != ErrorCode::kEmptyCloud) throw;
      out.failure = e.what();
      return;
    }
    for (const auto& tf : out.track->frames) {
      if (!tf.association) continue;
      out.annotations.push_back(with_context(where(tf.frame_index, seed.instance_id), [&] {
        return make_annotation(tf.frame_index, seed.instance_id, seed.category, tf.association->points,
                               radar, config.annotator);
      }));
    }
  });

  AnnotateSummary summary;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    auto& o = outcomes[i];
    if (o.track) summary.tracks.push_back(std::move(*o.track));
    if (!o.failure.empty()) summary.failures.emplace_back(seeds[i].instance_id, o.failure);
    for (auto& a : o.annotations) summary.annotations.push_back(std::move(a));
  }
  std::sort(summary.annotations.begin(), summary.annotations.end(), [](const Annotation& a, const Annotation& b) {
    return std::pair(a.frame_index, a.instance_id) < std::pair(b.frame_index, b.instance_id);
  });

  std::vector<nlohmann::json> track_lines;
  for (const auto& t : summary.tracks) track_lines.push_back(track_to_json(t));
  write_jsonl(store.tracks_path(), track_lines);
  std::vector<nlohmann::json> lines;
  for (const auto& a : summary.annotations) lines.push_back(annotation_to_json(a));
  write_jsonl(store.annotations_path(), lines);
  return summary;
}

nlohmann::json SequenceReport::to_json() const {
  nlohmann::json inst = nlohmann::json::array();
  for (const auto& s : per_instance) {
    inst.push_back({{"id", s.instance_id},
                    {"category", to_string(s.category)},
                    {"annotated_frames", s.annotated_frames},
                    {"first_frame", s.first_frame},
                    {"last_frame", s.last_frame}});
  }
  return {{"sequence", sequence},
          {"frames", frames},
          {"instances", instances},
          {"annotated_frames", annotated_frames},
          {"per_instance", inst}};
}

std::string SequenceReport::text() const {
  std::ostringstream out;
  out << "sequence          " << sequence << "\n"
      << "frames            " << frames << "\n"
      << "instances         " << instances << "\n"
      << "annotated frames  " << annotated_frames << "\n";
  for (const auto& s : per_instance) {
    out << "  instance " << s.instance_id << " (" << to_string(s.category) << "): " << s.annotated_frames
        << " frames [" << s.first_frame << ", " << s.last_frame << "]\n";
  }
  return out.str();
}

SequenceReport export_report(const SequenceStore& store) {
  const std::vector<Annotation> annotations = load_annotations(store);
  SequenceReport report;
  report.sequence = store.root().filename().string();
  if (report.sequence.empty()) report.sequence = store.root().parent_path().filename().string();

  if (fs::exists(store.clouds_path())) {
    report.frames = static_cast<int>(read_jsonl(store.clouds_path()).size());
  } else if (const auto frames = store.frame_indices("rd"); !frames.empty()) {
    report.frames = static_cast<int>(frames.size());
  } else if (const auto scenario = store.scenario()) {
    report.frames = scenario->scene.frame_count;
  }

  std::map<int, InstanceSummary> instances;
  std::vector<int> frames_with;
  for (const auto& a : annotations) {
    auto [it, inserted] = instances.try_emplace(a.instance_id);
    InstanceSummary& s = it->second;
    if (inserted) {
      s.instance_id = a.instance_id;
      s.category = a.category;
      s.first_frame = s.last_frame = a.frame_index;
    }
    ++s.annotated_frames;
    s.first_frame = std::min(s.first_frame, a.frame_index);
    s.last_frame = std::max(s.last_frame, a.frame_index);
    frames_with.push_back(a.frame_index);
  }
  std::sort(frames_with.begin(), frames_with.end());
  report.annotated_frames =
      static_cast<int>(std::unique(frames_with.begin(), frames_with.end()) - frames_with.begin());
  report.instances = static_cast<int>(instances.size());
  for (const auto& [id, s] : instances) report.per_instance.push_back(s);

  write_json_file(store.report_path(), report.to_json());
  return report;
}

int run_pipeline(const PipelineConfig& config, const SequenceStore& store, const SeedRequest& request) {
  if (store.has_scene()) simulate_sequence(config, store);
  process_sequence(config, store);
  detect_sequence(config, store);
  const AnnotateSummary summary = annotate_sequence(config, store, request);
  export_report(store);
  return summary.all_tracked() ? 0 : 1;
}

LabelMap render_labels(std::span<const Annotation> annotations, int frame, View view, int rows, int cols) {
  LabelMap labels = LabelMap::Zero(rows, cols);
  for (const auto& a : annotations) {
    if (a.frame_index != frame) continue;
    const BinaryMask& mask = view == View::kRangeDoppler ? a.rd.mask : a.ra.mask;
    if (mask.rows() != rows || mask.cols() != cols) {
      throw Error(ErrorCode::kDimensionMismatch, where(frame, a.instance_id) + ": mask dims differ from map");
    }
    for (Eigen::Index i = 0; i < mask.size(); ++i) {
      if (mask.data()[i]) labels.data()[i] = static_cast<std::uint8_t>(a.category);
    }
  }
  return labels;
}

std::vector<LabeledPoint> sparse_truth(std::span<const Annotation> annotations, int frame, View view) {
  std::vector<LabeledPoint> out;
  for (const auto& a : annotations) {
    if (a.frame_index != frame) continue;
    const auto& sparse = view == View::kRangeDoppler ? a.rd.sparse : a.ra.sparse;
    for (const auto& b : sparse) out.push_back({b, static_cast<std::uint8_t>(a.category)});
  }
  return out;
}

fs::path label_map_path(const fs::path& dir, int frame, View view) {
  return dir / frame_file_name(frame, std::string(view_tag(view)) + "_labels");
}

MetricReport evaluate(const fs::path& pred_dir, const SequenceStore& truth, EvalMode mode, View view) {
  if (!fs::is_directory(pred_dir)) throw Error(ErrorCode::kIoError, "not a directory: " + pred_dir.string());
  const std::vector<Annotation> annotations = load_annotations(truth);
  const std::regex pattern(std::string("frame_(\\d+)_") + view_tag(view) + "_labels\\.bin");
  std::vector<int> frames;
  for (const auto& entry : fs::directory_iterator(pred_dir)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (std::regex_match(name, m, pattern)) frames.push_back(std::stoi(m[1].str()));
  }
  std::sort(frames.begin(), frames.end());

  Confusion counts{};
  for (int frame : frames) {
    const LabelMap pred = read_labels(label_map_path(pred_dir, frame, view));
    Confusion c;
    if (mode == EvalMode::kDense) {
      c = confusion(pred, render_labels(annotations, frame, view, static_cast<int>(pred.rows()),
                                        static_cast<int>(pred.cols())));
    } else {
      c = sparse_confusion(pred, sparse_truth(annotations, frame, view));
    }
    for (int t = 0; t < kNumClasses; ++t) {
      for (int p = 0; p < kNumClasses; ++p) counts[t][p] += c[t][p];
    }
  }

  return mode == EvalMode::kDense ? dense_report(counts) : sparse_report(counts);
}

std::string format_metric_table(const MetricReport& report, EvalMode mode) {
  static constexpr const char* kNames[] = {"Background", "Pedestrian", "Cyclist", "Car"};
  auto cell = [](const std::optional<double>& v) {
    char buf[16];
    if (!v) return std::string("---");
    std::snprintf(buf, sizeof buf, "%.1f", 100.0 * *v);
    return std::string(buf);
  };
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-7s", "Metric");
  out << line;
  for (int k : report.class_subset) {
    std::snprintf(line, sizeof line, "%12s", kNames[k]);
    out << line;
  }
  std::snprintf(line, sizeof line, "%8s%8s\n", "m", "h");
  out << line;

  auto row = [&](const char* name, std::optional<double> ClassMetrics::*field, const Aggregate& agg) {
    std::snprintf(line, sizeof line, "%-7s", name);
    out << line;
    for (int k : report.class_subset) {
      std::snprintf(line, sizeof line, "%12s", cell(report.per_class[k].*field).c_str());
      out << line;
    }
    std::snprintf(line, sizeof line, "%8s%8s\n", cell(agg.arithmetic).c_str(), cell(agg.harmonic).c_str());
    out << line;
  };
  if (mode == EvalMode::kDense) row("IoU", &ClassMetrics::iou, report.iou);
  row("PP", &ClassMetrics::precision, report.precision);
  row("PR", &ClassMetrics::recall, report.recall);
  return out.str();
}

}  // namespace radann
