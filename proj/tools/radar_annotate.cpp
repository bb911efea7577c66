#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "radann/json_io.hpp"
#include "radann/map_io.hpp"
#include "radann/pipeline.hpp"

namespace {

using namespace radann;

constexpr int kExitPartial = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFailure = 3;

struct Options {
  std::string config;
  std::string seq = ".";
  std::optional<std::uint64_t> seed;
  std::optional<double> cfar_pfa;
  std::optional<int> cfar_train;
  std::optional<int> cfar_guard;
  std::string bandwidth_grid;
  std::optional<int> mc_samples;

  std::string scene;
  std::optional<int> seed_frame;
  std::optional<int> seed_instance;

  std::string pred;
  std::string truth;
  std::string mode = "dense";
  std::string view = "rd";
  std::string json_out;
  std::string labels_dir;
};

// "lo:hi:n" for a geometric grid or a comma separated list.
BandwidthGrid parse_grid(const std::string& text) {
  BandwidthGrid grid;
  if (text.find(':') != std::string::npos) {
    std::istringstream in(text);
    double lo = 0, hi = 0;
    int n = 0;
    char c1 = 0, c2 = 0;
    if (!(in >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':') {
      throw Error(ErrorCode::kValidationError, "--bandwidth-grid: expected lo:hi:n, got '" + text + "'");
    }
    grid = BandwidthGrid::geometric(lo, hi, n);
  } else {
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        grid.values.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw Error(ErrorCode::kValidationError, "--bandwidth-grid: bad value '" + item + "'");
      }
    }
  }
  try {
    grid.validate();
  } catch (const Error& e) {
    throw Error(e.code(), "--bandwidth-grid: " + e.detail());
  }
  return grid;
}

PipelineConfig build_config(const Options& opt) {
  PipelineConfig config = opt.config.empty() ? PipelineConfig{} : load_config(opt.config);
  if (opt.seed) config.root_seed = *opt.seed;
  if (opt.cfar_pfa) config.cfar.probability_false_alarm = *opt.cfar_pfa;
  if (opt.cfar_train) config.cfar.train_cells = *opt.cfar_train;
  if (opt.cfar_guard) config.cfar.guard_cells = *opt.cfar_guard;
  if (!opt.bandwidth_grid.empty()) config.clustering.grid = parse_grid(opt.bandwidth_grid);
  if (opt.mc_samples) config.clustering.mc_samples = *opt.mc_samples;
  config.validate();
  return config;
}

View parse_view(const std::string& v) { return v == "ra" ? View::kRangeAngle : View::kRangeDoppler; }

SeedRequest seed_request(const Options& opt) {
  SeedRequest r;
  r.frame = opt.seed_frame;
  r.instance = opt.seed_instance;
  if (!opt.scene.empty()) r.scene = opt.scene;
  return r;
}

int report_annotate(const AnnotateSummary& summary) {
  std::cout << "annotated " << summary.annotations.size() << " instance-frames over " << summary.tracks.size()
            << " tracks\n";
  for (const auto& [id, reason] : summary.failures) {
    std::cerr << "instance " << id << " not tracked: " << reason << "\n";
  }
  return summary.all_tracked() ? 0 : kExitPartial;
}

void write_label_maps(const SequenceStore& store, const std::filesystem::path& dir) {
  std::vector<Annotation> annotations;
  for (const auto& line : read_jsonl(store.annotations_path())) annotations.push_back(annotation_from_json(line));
  std::filesystem::create_directories(dir);
  for (View view : {View::kRangeDoppler, View::kRangeAngle}) {
    for (int frame : store.frame_indices(view_tag(view))) {
      ArrayHeader header;
      const MagnitudeMap map = read_map(store.map_path(frame, view), &header);
      header.dtype = "uint8";
      write_labels(label_map_path(dir, frame, view),
                   render_labels(annotations, frame, view, static_cast<int>(map.rows()),
                                 static_cast<int>(map.cols())),
                   header);
    }
  }
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--config", opt.config, "Pipeline config JSON (defaults when omitted)")->check(CLI::ExistingFile);
  cmd->add_option("--seq", opt.seq, "Sequence directory");
  cmd->add_option("--seed", opt.seed, "Root seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-automatic radar annotation pipeline"};
  app.require_subcommand(1);
  Options opt;

  auto* simulate = app.add_subcommand("simulate", "Synthesize raw radar cubes from scene.json");
  auto* process = app.add_subcommand("process", "Range-Doppler and range-angle maps from cubes");
  auto* detect = app.add_subcommand("detect", "CFAR detection and DoA point clouds");
  auto* annotate = app.add_subcommand("annotate", "Track seeded instances and emit annotations");
  auto* eval = app.add_subcommand("eval", "Score predicted label maps against annotations");
  auto* report = app.add_subcommand("report", "Summarise a sequence's annotations");
  auto* run = app.add_subcommand("run", "simulate, process, detect, annotate and report in one go");

  for (auto* cmd : {simulate, process, detect, annotate, eval, report, run}) add_common(cmd, opt);
  for (auto* cmd : {detect, run}) {
    cmd->add_option("--cfar-pfa", opt.cfar_pfa, "CFAR false-alarm probability");
    cmd->add_option("--cfar-train", opt.cfar_train, "CFAR training cells per side");
    cmd->add_option("--cfar-guard", opt.cfar_guard, "CFAR guard cells per side");
  }
  for (auto* cmd : {annotate, run}) {
    cmd->add_option("--bandwidth-grid", opt.bandwidth_grid, "lo:hi:n or comma separated bandwidths");
    cmd->add_option("--mc-samples", opt.mc_samples, "Monte Carlo samples per JS estimate");
    cmd->add_option("--seed-frame", opt.seed_frame, "Frame to seed tracks from");
    cmd->add_option("--seed-instance", opt.seed_instance, "Only annotate this instance");
  }
  simulate->add_option("--scene", opt.scene, "Scenario JSON copied into the sequence")->check(CLI::ExistingFile);
  run->add_option("--scene", opt.scene, "Scenario JSON copied into the sequence")->check(CLI::ExistingFile);
  annotate->add_option("--scene", opt.scene, "Scenario JSON to seed from")->check(CLI::ExistingFile);

  eval->add_option("--pred", opt.pred, "Directory of predicted label maps")->required()->check(CLI::ExistingDirectory);
  eval->add_option("--truth", opt.truth, "Annotated sequence directory")->required()->check(CLI::ExistingDirectory);
  eval->add_option("--mode", opt.mode, "dense or sparse")->check(CLI::IsMember({"dense", "sparse"}));
  eval->add_option("--view", opt.view, "rd or ra")->check(CLI::IsMember({"rd", "ra"}));
  eval->add_option("--json", opt.json_out, "Also write the metric JSON here");
  report->add_option("--labels", opt.labels_dir, "Render annotation masks as label maps into this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const PipelineConfig config = build_config(opt);
    const SequenceStore store(opt.seq);

    if (*simulate || *run) {
      if (!opt.scene.empty()) {
        std::filesystem::create_directories(store.root());
        save_scenario(load_scenario(opt.scene), store.scene_path());
      }
    }
    if (*simulate) {
      simulate_sequence(config, store);
    } else if (*process) {
      process_sequence(config, store);
    } else if (*detect) {
      detect_sequence(config, store);
    } else if (*annotate) {
      return report_annotate(annotate_sequence(config, store, seed_request(opt)));
    } else if (*eval) {
      const EvalMode mode = opt.mode == "sparse" ? EvalMode::kSparse : EvalMode::kDense;
      const MetricReport result = evaluate(opt.pred, SequenceStore(opt.truth), mode, parse_view(opt.view));
      const auto j = report_to_json(result);
      std::cout << format_metric_table(result, mode) << "\n" << j.dump(2) << "\n";
      if (!opt.json_out.empty()) write_json_file(opt.json_out, j);
    } else if (*report) {
      std::cout << export_report(store).text();
      if (!opt.labels_dir.empty()) write_label_maps(store, opt.labels_dir);
    } else if (*run) {
      SeedRequest request = seed_request(opt);
      request.scene.reset();
      const int code = run_pipeline(config, store, request);
      std::cout << export_report(store).text();
      return code;
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "radar-annotate: " << e.what() << "\n";
    const bool usage = e.code() == ErrorCode::kParseError || e.code() == ErrorCode::kValidationError ||
                       e.code() == ErrorCode::kInvalidConfig || e.code() == ErrorCode::kGridTooSmall;
    return usage ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "radar-annotate: " << e.what() << "\n";
    return kExitFailure;
  }
}
