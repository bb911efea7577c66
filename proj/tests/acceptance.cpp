// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>

#include "radann/bandwidth.hpp"
#include "radann/camera.hpp"
#include "radann/cfar.hpp"
#include "radann/gaussian.hpp"
#include "radann/json_io.hpp"
#include "radann/map_io.hpp"
#include "radann/mean_shift.hpp"
#include "radann/metrics.hpp"
#include "radann/pipeline.hpp"
#include "radann/processing.hpp"
#include "radann/synthesis.hpp"
#include "test_support.hpp"

namespace radann {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // <= 0: no runtime bound
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1
Outcome resolution_arithmetic() {
  const RadarConfig c;
  const double vmax = max_radial_velocity(c);
  const double dd = range_resolution(c);
  const double coverage = c.samples_per_chirp * dd;
  const bool ok = std::abs(vmax - 13.43) <= 0.1 && std::abs(dd - 0.20) < 1e-9 && coverage >= 50.0 - dd;
  return {ok, fmt("vmax=%.3f m/s (reference 13.43), dd=%.3f m, 256 bins cover %.1f m vs 50 m", vmax, dd, coverage)};
}

// 2
Outcome peak_location() {
  const RadarConfig c;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ur(2.0, 48.0), ua(-60.0, 60.0), uv(-12.0, 12.0);
  const double dd = range_resolution(c), dv = velocity_resolution(c);
  int hits = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    const double r = ur(rng), az = ua(rng) * std::numbers::pi / 180, v = uv(rng);
    const Eigen::Vector2d p(r * std::sin(az), r * std::cos(az));
    Scene scene;
    scene.frame_count = 2;
    scene.frame_interval_s = 0.1;
    SceneObject obj;
    obj.trajectory = {p, p - p.normalized() * v * 0.1};
    scene.objects.push_back(obj);
    const RadarFrame f = process_cube(synthesize_frame(scene, 0, c, 0.0, t), c);

    const double row = std::round(r / dd);
    const double dcol = doppler_center_bin(c) + std::round(v / dv);
    const double acol = nearest_angle_bin(c, std::sin(az));
    Eigen::Index rr, rc, ar, ac;
    f.rd_map.maxCoeff(&rr, &rc);
    f.ra_map.maxCoeff(&ar, &ac);
    const bool ok = std::abs(rr - row) <= 1 && std::abs(rc - dcol) <= 1 && std::abs(ar - row) <= 1 &&
                    std::abs(ac - acol) <= 2;
    hits += ok;
  }
  return {hits >= 98, fmt("%d/%d scenes within tolerance (need >= 98)", hits, trials)};
}

// 3
Outcome cfar_calibration() {
  const CfarParams p;
  std::mt19937_64 rng(3);
  std::exponential_distribution<float> e(1.0f);
  long cells = 0, alarms = 0;
  for (int m = 0; m < 16; ++m) {
    MagnitudeMap map(256, 256);
    for (Eigen::Index i = 0; i < map.size(); ++i) map.data()[i] = e(rng);
    alarms += static_cast<long>(cfar_detect(map, p).size());
    cells += map.size();
  }
  const double rate = static_cast<double>(alarms) / cells;
  const bool ok = cells >= 1000000 && rate >= 0.3 * p.probability_false_alarm && rate <= 3 * p.probability_false_alarm;
  return {ok, fmt("empirical Pfa=%.3e over %ld cells (configured %.0e, band [0.3x, 3x])", rate, cells,
                  p.probability_false_alarm)};
}

// Lattice hill climbing on the kernel density, memoised across starts.
class GridAscent {
 public:
  GridAscent(std::span<const Point3> pts, double sigma, double h) : pts_(pts), sigma_(sigma), h_(h) {}

  Point3 climb(const Point3& start) {
    Key cur{std::lround(start.x() / h_), std::lround(start.y() / h_), std::lround(start.z() / h_)};
    for (;;) {
      Key best = cur;
      double best_d = density(cur);
      for (int dx = -1; dx <= 1; ++dx)
        for (int dy = -1; dy <= 1; ++dy)
          for (int dz = -1; dz <= 1; ++dz) {
            const Key k{std::get<0>(cur) + dx, std::get<1>(cur) + dy, std::get<2>(cur) + dz};
            const double d = density(k);
            if (d > best_d) best_d = d, best = k;
          }
      if (best == cur) break;
      cur = best;
    }
    return {std::get<0>(cur) * h_, std::get<1>(cur) * h_, std::get<2>(cur) * h_};
  }

 private:
  using Key = std::tuple<long, long, long>;
  double density(const Key& k) {
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    const Point3 x(std::get<0>(k) * h_, std::get<1>(k) * h_, std::get<2>(k) * h_);
    double s = 0;
    for (const auto& p : pts_) s += std::exp(-(p - x).squaredNorm() / (2 * sigma_ * sigma_));
    return memo_[k] = s;
  }
  std::span<const Point3> pts_;
  double sigma_, h_;
  std::map<Key, double> memo_;
};

// 4
Outcome mean_shift_oracle() {
  const double sigma = 1.0;
  int agree = 0, partitions = 0;
  double worst = 0;
  for (int t = 0; t < 20; ++t) {
    std::mt19937_64 rng(400 + t);
    std::vector<Point3> pts = testing::blob(rng, {0, 0, 0}, sigma, 100);
    const auto b = testing::blob(rng, {6 * sigma, 0, 0}, sigma, 100);
    pts.insert(pts.end(), b.begin(), b.end());
    const MeanShiftResult r = mean_shift(pts, sigma);

    std::vector<int> seen(pts.size(), 0);
    bool partition = r.labels.size() == pts.size();
    for (std::size_t c = 0; c < r.clusters.size(); ++c)
      for (auto i : r.clusters[c].members) {
        ++seen[i];
        partition = partition && r.labels[i] == static_cast<int>(c);
      }
    for (int s : seen) partition = partition && s == 1;
    partitions += partition;

    GridAscent oracle(pts, sigma, sigma / 8);
    std::vector<Point3> modes;
    for (const auto& p : pts) {
      const Point3 m = oracle.climb(p);
      bool known = false;
      for (const auto& q : modes) known = known || (q - m).norm() < 1e-9;
      if (!known) modes.push_back(m);
    }
    auto nearest = [](const Point3& x, const std::vector<Point3>& set) {
      double d = INFINITY;
      for (const auto& y : set) d = std::min(d, (x - y).norm());
      return d;
    };
    std::vector<Point3> centroids;
    for (const auto& c : r.clusters) centroids.push_back(c.centroid);
    double gap = 0;
    for (const auto& c : centroids) gap = std::max(gap, nearest(c, modes));
    for (const auto& m : modes) gap = std::max(gap, nearest(m, centroids));
    worst = std::max(worst, gap);
    agree += gap <= 0.5 * sigma;
  }
  return {agree == 20 && partitions == 20,
          fmt("%d/20 clouds with every centroid and grid mode paired within 0.5 sigma (worst %.3f sigma); "
              "partition exact in %d/20",
              agree, worst / sigma, partitions)};
}

// 5
Outcome js_suite() {
  const Gaussian p = Gaussian::from({0.5, -1, 2}, Eigen::Matrix3d::Identity() * 0.4);
  Eigen::Matrix3d cov = Eigen::Matrix3d::Identity();
  cov(0, 2) = cov(2, 0) = 0.3;
  const Gaussian q = Gaussian::from({1.5, 0, 2.5}, cov);
  const double self = js_divergence(p, p, 4096, 1);
  bool symmetric = true;
  for (std::uint64_t s = 0; s < 10; ++s) symmetric = symmetric && js_divergence(p, q, 4096, s) == js_divergence(q, p, 4096, s);
  Gaussian a, b;
  a.mean = Eigen::VectorXd::Zero(1);
  a.covariance = Eigen::MatrixXd::Identity(1, 1);
  b = a;
  b.mean[0] = 20;
  const double far = js_divergence(a, b, 4096, 5);
  const double limit = std::sqrt(std::numbers::ln2);
  const bool ok = self < 1e-3 && symmetric && std::abs(far - limit) <= 0.02;
  return {ok, fmt("JS(p,p)=%.2e, symmetric=%s, JS(20 sigma apart)=%.4f vs sqrt(ln2)=%.4f", self,
                  symmetric ? "exact" : "NO", far, limit)};
}

// 6
Outcome bandwidth_selection() {
  int good = 0;
  const int n = 80;
  for (int t = 0; t < 20; ++t) {
    std::mt19937_64 rng(600 + t);
    const Point3 a(0, 0, 0), b(4, 1, -1);
    auto pts = testing::blob(rng, a, 0.3, n);
    const auto other = testing::blob(rng, b, 0.3, n);
    pts.insert(pts.end(), other.begin(), other.end());
    std::normal_distribution<double> jitter(0.0, 0.1);
    const Point3 seed = a + Point3(jitter(rng), jitter(rng), jitter(rng));
    const BandwidthSelection sel = select_bandwidth(pts, seed, BandwidthGrid::geometric(0.1, 2.0, 16), 4096, t);
    int in_a = 0, in_b = 0;
    for (auto i : sel.cluster.members) (i < static_cast<std::size_t>(n) ? in_a : in_b)++;
    good += in_b == 0 && in_a >= 0.95 * n;
  }
  return {good >= 18, fmt("%d/20 trials with >= 95%% of the seeded blob and none of the other (need >= 18)", good)};
}

// 7
Outcome geometry() {
  const CameraModel cam = CameraModel::level(1400, 1400, 960, 540, 1.5, 1920, 1080);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-20, 20), uy(2, 50);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const Eigen::Vector3d p(ux(rng), uy(rng), 0);
    worst = std::max(worst, (pixel_to_ground(cam.project(p), cam) - p.head<2>()).norm());
  }
  const double approach = radial_velocity({0, -2}, {0, 10});
  const double tangential = radial_velocity({2, 0}, {0, 10});
  const double a = std::numbers::pi / 3;
  const double oblique = radial_velocity({2 * std::sin(a), -2 * std::cos(a)}, {0, 10});
  const bool ok = worst < 1e-6 && approach == 2.0 && tangential == 0.0 && std::abs(oblique - 1.0) < 1e-12;
  return {ok, fmt("round-trip max error %.2e m over 1000 points; v_R approach=%.12g tangential=%.12g 60deg=%.12g",
                  worst, approach, tangential, oblique)};
}

Scenario approach_scenario() {
  Scenario s;
  s.scene.frame_count = 20;
  s.scene.frame_interval_s = 0.1;
  s.scene.objects.push_back(testing::linear_object(1, Category::kCar, {2.0, 20.0}, {0.0, -4.0}, 20, 0.1));
  s.noise_sigma = 0.05;
  return s;
}

std::map<std::string, std::string> snapshot(const std::filesystem::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    out[std::filesystem::relative(e.path(), root).string()] = ss.str();
  }
  return out;
}

// 8
Outcome end_to_end(const std::filesystem::path& root) {
  const SequenceStore store(root);
  const Scenario s = approach_scenario();
  save_scenario(s, store.scene_path());
  PipelineConfig config;
  config.root_seed = 8;
  const int code = run_pipeline(config, store, {});

  const RadarConfig rc;
  std::set<int> frames;
  long total = 0, near = 0;
  bool contained = true;
  for (const auto& line : read_jsonl(store.annotations_path())) {
    const Annotation a = annotation_from_json(line);
    frames.insert(a.frame_index);
    contained = contained && containment_holds(a);
    const Point3 gt = ground_truth_feature(s.scene.objects[0], a.frame_index, s.scene.frame_interval_s);
    const Bin centre = project_rd(std::vector<Point3>{gt}, rc).bins.front();
    for (const auto& b : a.rd.sparse) {
      ++total;
      near += std::abs(b.row - centre.row) <= 2 && std::abs(b.col - centre.col) <= 2;
    }
  }
  const double frac = total ? static_cast<double>(near) / total : 0.0;
  const bool ok = code == 0 && frames.size() == 20 && frac >= 0.9 && contained;
  return {ok, fmt("exit %d, %zu/20 frames annotated, %.1f%% of %ld sparse RD points within 2 bins, containment %s",
                  code, frames.size(), 100 * frac, total, contained ? "holds" : "BROKEN")};
}

// 9
Outcome metric_reproduction() {
  const std::array<std::optional<double>, 4> iou{0.997, 0.452, 0.155, 0.513};
  const std::array<int, 4> classes{0, 1, 2, 3};
  const Aggregate a = aggregate(iou, classes);
  const double m = 100 * a.arithmetic.value(), h = 100 * a.harmonic.value();
  const bool ok = std::abs(m - 52.9) <= 0.05 && std::abs(h - 34.4) <= 0.5;
  return {ok, fmt("mIoU=%.3f (52.9 +- 0.05), hIoU=%.3f (34.4 +- 0.5)", m, h)};
}

// 10
Outcome determinism(const std::filesystem::path& first, const std::filesystem::path& second) {
  const SequenceStore store(second);
  save_scenario(approach_scenario(), store.scene_path());
  PipelineConfig config;
  config.root_seed = 8;
  run_pipeline(config, store, {});
  const auto a = snapshot(first), b = snapshot(second);
  int differing = 0;
  for (const auto& [name, bytes] : a) {
    auto it = b.find(name);
    differing += it == b.end() || it->second != bytes;
  }
  differing += static_cast<int>(b.size()) - static_cast<int>(a.size()) > 0;
  return {differing == 0 && !a.empty(), fmt("%zu files compared, %d differ", a.size(), differing)};
}

}  // namespace
}  // namespace radann

int main() {
  using namespace radann;
  testing::TempDir work_a("acceptance_a"), work_b("acceptance_b");
  const auto run_a = work_a.path() / "seq", run_b = work_b.path() / "seq";
  std::filesystem::create_directories(run_a);
  std::filesystem::create_directories(run_b);

  const std::vector<Criterion> criteria{
      {1, "resolution arithmetic", 1, resolution_arithmetic},
      {2, "peak location", 60, peak_location},
      {3, "CFAR calibration", 30, cfar_calibration},
      {4, "Mean-Shift oracle equivalence", 60, mean_shift_oracle},
      {5, "JS divergence", 0, js_suite},
      {6, "bandwidth selection", 0, bandwidth_selection},
      {7, "geometry", 0, geometry},
      {8, "end-to-end annotation recovery", 120, [&] { return end_to_end(run_a); }},
      {9, "metric reproduction", 0, metric_reproduction},
      {10, "determinism", 0, [&] { return determinism(run_a, run_b); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string timing = fmt("%.2f s", secs);
    if (c.budget_s > 0) {
      timing += fmt(" / budget %.0f s", c.budget_s);
      if (secs >= c.budget_s) {
        o.pass = false;
        o.detail += "; over runtime budget";
      }
    }
    failures += !o.pass;
    std::printf("%s  %2d  %-32s %s [%s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
