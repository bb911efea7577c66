#include "radann/json_io.hpp"

#include <string>

namespace radann {

namespace {

template <typename T>
void read(const json& j, const char* key, T& out) {
  out = get_field<T>(j, key, out);
}

void require_object(const json& j, const char* what) {
  if (!j.is_object()) throw Error(ErrorCode::kParseError, std::string(what) + " must be a JSON object");
}

json bins_to_json(std::span<const Bin> bins) {
  json arr = json::array();
  for (const auto& b : bins) arr.push_back({b.row, b.col});
  return arr;
}

std::vector<Bin> bins_from_json(const json& j) {
  std::vector<Bin> out;
  for (const auto& b : j) out.push_back({b.at(0).get<int>(), b.at(1).get<int>()});
  return out;
}

json view_to_json(const ViewAnnotation& v) {
  return {{"sparse", bins_to_json(v.sparse)},
          {"box", {{v.box.min.row, v.box.min.col}, {v.box.max.row, v.box.max.col}}},
          {"mask_rle", rle_to_json(rle_encode(v.mask))}};
}

ViewAnnotation view_from_json(const json& j) {
  ViewAnnotation v;
  v.sparse = bins_from_json(j.at("sparse"));
  const auto& box = j.at("box");
  v.box.min = {box.at(0).at(0).get<int>(), box.at(0).at(1).get<int>()};
  v.box.max = {box.at(1).at(0).get<int>(), box.at(1).at(1).get<int>()};
  v.mask = rle_decode(rle_from_json(j.at("mask_rle")));
  return v;
}

template <typename F>
auto parse_guard(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string(what) + ": " + e.what());
  }
}

json optional_to_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

void to_json(json& j, const RadarConfig& c) {
  j = json{{"carrier_frequency_hz", c.carrier_frequency_hz},
           {"bandwidth_hz", c.bandwidth_hz},
           {"sweep_period_s", c.sweep_period_s},
           {"chirps_per_frame", c.chirps_per_frame},
           {"samples_per_chirp", c.samples_per_chirp},
           {"num_rx_virtual", c.num_rx_virtual},
           {"antenna_spacing_m", c.antenna_spacing_m},
           {"frame_period_s", c.frame_period_s},
           {"num_angle_bins", c.num_angle_bins},
           {"max_range_m", c.max_range_m},
           {"speed_of_light_m_s", c.speed_of_light_m_s},
           {"azimuth_phase_factor", c.azimuth_phase_factor},
           {"hann_range", c.hann_range},
           {"hann_doppler", c.hann_doppler}};
}

void apply_json(const json& j, RadarConfig& c) {
  require_object(j, "radar");
  read(j, "carrier_frequency_hz", c.carrier_frequency_hz);
  read(j, "bandwidth_hz", c.bandwidth_hz);
  read(j, "sweep_period_s", c.sweep_period_s);
  read(j, "chirps_per_frame", c.chirps_per_frame);
  read(j, "samples_per_chirp", c.samples_per_chirp);
  read(j, "num_rx_virtual", c.num_rx_virtual);
  read(j, "frame_period_s", c.frame_period_s);
  read(j, "num_angle_bins", c.num_angle_bins);
  read(j, "max_range_m", c.max_range_m);
  read(j, "speed_of_light_m_s", c.speed_of_light_m_s);
  read(j, "azimuth_phase_factor", c.azimuth_phase_factor);
  read(j, "hann_range", c.hann_range);
  read(j, "hann_doppler", c.hann_doppler);
  if (j.contains("antenna_spacing_m")) {
    read(j, "antenna_spacing_m", c.antenna_spacing_m);
  } else if (j.contains("carrier_frequency_hz") || j.contains("speed_of_light_m_s")) {
    c.antenna_spacing_m = c.wavelength_m() / 2.0;
  }
}

void to_json(json& j, const CfarParams& p) {
  j = json{{"train_cells", p.train_cells},
           {"guard_cells", p.guard_cells},
           {"probability_false_alarm", p.probability_false_alarm}};
}

void apply_json(const json& j, CfarParams& p) {
  require_object(j, "cfar");
  read(j, "train_cells", p.train_cells);
  read(j, "guard_cells", p.guard_cells);
  read(j, "probability_false_alarm", p.probability_false_alarm);
}

void to_json(json& j, const ClusteringConfig& c) {
  j = json{{"axis_scale", {c.axis_scale.x(), c.axis_scale.y(), c.axis_scale.z()}},
           {"bandwidth_grid", c.grid.values},
           {"mc_samples", c.mc_samples},
           {"tol", c.mean_shift.tol},
           {"max_iter", c.mean_shift.max_iter}};
}

void apply_json(const json& j, ClusteringConfig& c) {
  require_object(j, "clustering");
  if (j.contains("axis_scale")) {
    const auto v = get_field<std::vector<double>>(j, "axis_scale", {});
    if (v.size() != 3) throw Error(ErrorCode::kParseError, "field 'axis_scale': expected 3 values");
    c.axis_scale = {v[0], v[1], v[2]};
  }
  read(j, "bandwidth_grid", c.grid.values);
  read(j, "mc_samples", c.mc_samples);
  read(j, "tol", c.mean_shift.tol);
  read(j, "max_iter", c.mean_shift.max_iter);
}

void to_json(json& j, const AnnotatorConfig& c) {
  j = json{{"rd_radius", c.rd_radius},
           {"ra_radius", c.ra_radius},
           {"max_lost", c.max_lost},
           {"association_radius", c.association_radius}};
}

void apply_json(const json& j, AnnotatorConfig& c) {
  require_object(j, "annotator");
  read(j, "rd_radius", c.rd_radius);
  read(j, "ra_radius", c.ra_radius);
  read(j, "max_lost", c.max_lost);
  read(j, "association_radius", c.association_radius);
}

json scene_to_json(const Scene& scene) {
  json objects = json::array();
  for (const auto& o : scene.objects) {
    json traj = json::array();
    for (const auto& p : o.trajectory) traj.push_back({p.x(), p.y()});
    objects.push_back({{"id", o.instance_id},
                       {"category", to_string(o.category)},
                       {"amplitude", o.reflectivity_amplitude},
                       {"trajectory", traj}});
  }
  return {{"frame_count", scene.frame_count},
          {"frame_interval_s", scene.frame_interval_s},
          {"objects", objects}};
}

Scene scene_from_json(const json& j) {
  require_object(j, "scene");
  return parse_guard("scene", [&] {
    Scene scene;
    read(j, "frame_count", scene.frame_count);
    read(j, "frame_interval_s", scene.frame_interval_s);
    for (const auto& o : j.value("objects", json::array())) {
      SceneObject obj;
      obj.instance_id = o.at("id").get<int>();
      obj.category = category_from_string(o.at("category").get<std::string>());
      obj.reflectivity_amplitude = o.value("amplitude", 1.0);
      if (o.contains("trajectory")) {
        for (const auto& p : o.at("trajectory")) {
          obj.trajectory.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
        }
      } else if (o.contains("linear")) {
        const auto& lin = o.at("linear");
        const Eigen::Vector2d start(lin.at("start").at(0).get<double>(),
                                    lin.at("start").at(1).get<double>());
        const Eigen::Vector2d vel(lin.at("velocity").at(0).get<double>(),
                                  lin.at("velocity").at(1).get<double>());
        for (int k = 0; k < scene.frame_count; ++k) {
          obj.trajectory.push_back(start + vel * (k * scene.frame_interval_s));
        }
      } else {
        throw Error(ErrorCode::kParseError,
                    "object " + std::to_string(obj.instance_id) + ": needs 'trajectory' or 'linear'");
      }
      scene.objects.push_back(std::move(obj));
    }
    return scene;
  });
}

json camera_to_json(const CameraModel& camera) {
  json a = json::array();
  json b = json::array();
  for (int r = 0; r < 3; ++r) {
    a.push_back({camera.intrinsics(r, 0), camera.intrinsics(r, 1), camera.intrinsics(r, 2)});
    b.push_back({camera.extrinsics(r, 0), camera.extrinsics(r, 1), camera.extrinsics(r, 2),
                 camera.extrinsics(r, 3)});
  }
  return {{"A", a}, {"B", b}, {"width", camera.image_width_px}, {"height", camera.image_height_px}};
}

CameraModel camera_from_json(const json& j) {
  require_object(j, "camera");
  return parse_guard("camera", [&] {
    CameraModel cam;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) cam.intrinsics(r, c) = j.at("A").at(r).at(c).get<double>();
      for (int c = 0; c < 4; ++c) cam.extrinsics(r, c) = j.at("B").at(r).at(c).get<double>();
    }
    cam.image_width_px = j.at("width").get<int>();
    cam.image_height_px = j.at("height").get<int>();
    return cam;
  });
}

json rle_to_json(const RleMask& rle) { return {{"size", {rle.rows, rle.cols}}, {"counts", rle.counts}}; }

RleMask rle_from_json(const json& j) {
  return parse_guard("mask_rle", [&] {
    RleMask rle;
    rle.rows = j.at("size").at(0).get<int>();
    rle.cols = j.at("size").at(1).get<int>();
    rle.counts = j.at("counts").get<std::vector<std::uint32_t>>();
    return rle;
  });
}

json detection_to_json(const InstanceDetection& d) {
  return {{"frame", d.frame_index},
          {"id", d.instance_id},
          {"category", to_string(d.category)},
          {"box", d.box},
          {"mask_rle", rle_to_json(rle_encode(d.mask))},
          {"score", d.confidence}};
}

InstanceDetection detection_from_json(const json& j) {
  return parse_guard("detection", [&] {
    InstanceDetection d;
    d.frame_index = j.at("frame").get<int>();
    d.instance_id = j.at("id").get<int>();
    d.category = category_from_string(j.at("category").get<std::string>());
    d.box = j.at("box").get<std::array<double, 4>>();
    d.mask = rle_decode(rle_from_json(j.at("mask_rle")));
    d.confidence = j.value("score", 1.0);
    return d;
  });
}

json cloud_to_json(const DoaCloud& cloud, std::span<const Detection> detections) {
  json dets = json::array();
  for (const auto& d : detections) dets.push_back({d.bin.row, d.bin.col, d.magnitude});
  json pts = json::array();
  for (const auto& p : cloud.points) pts.push_back({p.x(), p.y(), p.z()});
  return {{"frame", cloud.frame_index},
          {"detections", dets},
          {"points", pts},
          {"bins", bins_to_json(cloud.source_bins)}};
}

DoaCloud cloud_from_json(const json& j) {
  return parse_guard("cloud", [&] {
    DoaCloud cloud;
    cloud.frame_index = j.at("frame").get<int>();
    for (const auto& p : j.at("points")) {
      cloud.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>());
    }
    cloud.source_bins = bins_from_json(j.at("bins"));
    if (cloud.source_bins.size() != cloud.points.size()) {
      throw Error(ErrorCode::kParseError, "cloud: points and bins differ in length");
    }
    return cloud;
  });
}

json annotation_to_json(const Annotation& a) {
  return {{"frame", a.frame_index},
          {"id", a.instance_id},
          {"category", to_string(a.category)},
          {"rd", view_to_json(a.rd)},
          {"ra", view_to_json(a.ra)}};
}

Annotation annotation_from_json(const json& j) {
  return parse_guard("annotation", [&] {
    Annotation a;
    a.frame_index = j.at("frame").get<int>();
    a.instance_id = j.at("id").get<int>();
    a.category = category_from_string(j.at("category").get<std::string>());
    a.rd = view_from_json(j.at("rd"));
    a.ra = view_from_json(j.at("ra"));
    return a;
  });
}

json track_to_json(const Track& track) {
  json frames = json::array();
  for (const auto& f : track.frames) {
    json jf{{"frame", f.frame_index},
            {"status", f.status == FrameStatus::kSeeded       ? "seeded"
                       : f.status == FrameStatus::kPropagated ? "propagated"
                                                              : "lost"},
            {"seed", {f.seed.x(), f.seed.y(), f.seed.z()}}};
    if (f.association) {
      const auto& a = *f.association;
      jf["centroid"] = {a.centroid.x(), a.centroid.y(), a.centroid.z()};
      jf["sigma"] = a.sigma;
      jf["distance"] = a.distance;
      jf["members"] = a.cluster.members;
    }
    frames.push_back(std::move(jf));
  }
  return {{"id", track.instance_id},
          {"category", to_string(track.category)},
          {"seed_frame", track.seed_frame},
          {"frames", frames}};
}

json report_to_json(const MetricReport& report) {
  static constexpr const char* kNames[] = {"background", "pedestrian", "cyclist", "car"};
  json per_class = json::object();
  for (int k : report.class_subset) {
    const auto& m = report.per_class[k];
    per_class[kNames[k]] = {{"iou", optional_to_json(m.iou)},
                            {"pp", optional_to_json(m.precision)},
                            {"pr", optional_to_json(m.recall)}};
  }
  auto agg = [](const Aggregate& a) {
    return json{{"arithmetic", optional_to_json(a.arithmetic)},
                {"harmonic", optional_to_json(a.harmonic)},
                {"included", a.included}};
  };
  return {{"classes", report.class_subset},
          {"per_class", per_class},
          {"iou", agg(report.iou)},
          {"pp", agg(report.precision)},
          {"pr", agg(report.recall)}};
}

}  // namespace radann
