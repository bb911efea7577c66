#include "radann/annotation.hpp"

#include <algorithm>
#include <cmath>

namespace radann {

namespace {

Projection finish(std::vector<Bin> bins, int rows, int cols) {
  Projection out;
  for (auto& b : bins) {
    const Bin clamped{std::clamp(b.row, 0, rows - 1), std::clamp(b.col, 0, cols - 1)};
    if (clamped != b) out.overflow = true;
    b = clamped;
  }
  std::sort(bins.begin(), bins.end());
  bins.erase(std::unique(bins.begin(), bins.end()), bins.end());
  out.bins = std::move(bins);
  return out;
}

int range_bin(const Point3& p, double dd) {
  return static_cast<int>(std::floor(std::hypot(p.x(), p.y()) / dd));
}

}  // namespace

Projection project_rd(std::span<const Point3> points, const RadarConfig& config) {
  const double dd = range_resolution(config);
  const double dv = velocity_resolution(config);
  const int center = doppler_center_bin(config);
  std::vector<Bin> bins;
  bins.reserve(points.size());
  for (const auto& p : points) {
    bins.push_back({range_bin(p, dd), center + static_cast<int>(std::lround(p.z() / dv))});
  }
  return finish(std::move(bins), config.samples_per_chirp, config.chirps_per_frame);
}

Projection project_ra(std::span<const Point3> points, const RadarConfig& config) {
  const double dd = range_resolution(config);
  std::vector<Bin> bins;
  bins.reserve(points.size());
  for (const auto& p : points) {
    const double r = std::hypot(p.x(), p.y());
    const double sine = r > 0 ? p.x() / r : 0.0;
    bins.push_back({range_bin(p, dd), nearest_angle_bin(config, sine)});
  }
  return finish(std::move(bins), config.samples_per_chirp, config.num_angle_bins);
}

Box bounding_box(std::span<const Bin> points) {
  if (points.empty()) throw Error(ErrorCode::kEmptySet, "bounding box of an empty point set");
  Box box{points.front(), points.front()};
  for (const auto& p : points) {
    box.min.row = std::min(box.min.row, p.row);
    box.min.col = std::min(box.min.col, p.col);
    box.max.row = std::max(box.max.row, p.row);
    box.max.col = std::max(box.max.col, p.col);
  }
  return box;
}

BinaryMask dense_mask(std::span<const Bin> points, int radius, int rows, int cols) {
  BinaryMask mask = BinaryMask::Zero(rows, cols);
  const long r2 = static_cast<long>(radius) * radius;
  for (const auto& p : points) {
    for (int dr = -radius; dr <= radius; ++dr) {
      const int row = p.row + dr;
      if (row < 0 || row >= rows) continue;
      for (int dc = -radius; dc <= radius; ++dc) {
        const int col = p.col + dc;
        if (col < 0 || col >= cols) continue;
        if (static_cast<long>(dr) * dr + static_cast<long>(dc) * dc <= r2) mask(row, col) = 1;
      }
    }
  }
  return mask;
}

void AnnotatorConfig::validate() const {
  if (rd_radius < 0 || ra_radius < 0) {
    throw Error(ErrorCode::kInvalidConfig, "dilation radius must be >= 0");
  }
  if (max_lost < 1) throw Error(ErrorCode::kInvalidConfig, "max_lost must be >= 1");
  if (!(association_radius > 0)) {
    throw Error(ErrorCode::kInvalidConfig, "association_radius must be > 0");
  }
}

Annotation make_annotation(int frame_index, int instance_id, Category category,
                           std::span<const Point3> points, const RadarConfig& config,
                           const AnnotatorConfig& options) {
  if (points.empty()) throw Error(ErrorCode::kEmptySet, "annotation of an empty cluster");
  Annotation a;
  a.frame_index = frame_index;
  a.instance_id = instance_id;
  a.category = category;

  const Projection rd = project_rd(points, config);
  const Projection ra = project_ra(points, config);
  if (rd.overflow) a.diagnostics.push_back({ErrorCode::kBinOverflow, "range-Doppler bins clamped"});
  if (ra.overflow) a.diagnostics.push_back({ErrorCode::kBinOverflow, "range-angle bins clamped"});

  a.rd.sparse = rd.bins;
  a.rd.box = bounding_box(a.rd.sparse);
  a.rd.mask = dense_mask(a.rd.sparse, options.rd_radius, config.samples_per_chirp,
                         config.chirps_per_frame);
  a.ra.sparse = ra.bins;
  a.ra.box = bounding_box(a.ra.sparse);
  a.ra.mask = dense_mask(a.ra.sparse, options.ra_radius, config.samples_per_chirp,
                         config.num_angle_bins);
  return a;
}

namespace {

bool view_ok(const ViewAnnotation& v) {
  if (v.sparse.empty()) return !v.mask.any();
  const auto rows = static_cast<int>(v.mask.rows());
  const auto cols = static_cast<int>(v.mask.cols());
  if (v.box.min.row < 0 || v.box.min.col < 0 || v.box.max.row >= rows || v.box.max.col >= cols) {
    return false;
  }
  for (const auto& b : v.sparse) {
    if (!v.box.contains(b)) return false;
    if (b.row < 0 || b.row >= rows || b.col < 0 || b.col >= cols || !v.mask(b.row, b.col)) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool containment_holds(const Annotation& annotation) {
  return view_ok(annotation.rd) && view_ok(annotation.ra);
}

}  // namespace radann
