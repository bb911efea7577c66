#pragma once

#include <span>
#include <vector>

#include "radann/error.hpp"
#include "radann/radar_config.hpp"
#include "radann/types.hpp"

namespace radann {

/// Axis-aligned box on a map; first coordinate is the row (range bin).
struct Box {
  Bin min;
  Bin max;

  bool contains(const Bin& b) const {
    return b.row >= min.row && b.row <= max.row && b.col >= min.col && b.col <= max.col;
  }
  friend bool operator==(const Box&, const Box&) = default;
};

struct Projection {
  // Sorted, duplicate-free.
  std::vector<Bin> bins;
  // Set when a point fell outside the map and was clamped.
  bool overflow = false;
};

/// (x, y, v) -> (floor(sqrt(x^2 + y^2) / dd), centre + round(v / dv)).
Projection project_rd(std::span<const Point3> points, const RadarConfig& config);

/// (x, y, .) -> (floor(r / dd), angle column nearest sin(alpha)).
Projection project_ra(std::span<const Point3> points, const RadarConfig& config);

/// Coordinate-wise min / max. Throws kEmptySet.
Box bounding_box(std::span<const Bin> points);

/// Union of discrete disks {cells within Euclidean distance radius} around
/// every point, clipped to rows x cols.
BinaryMask dense_mask(std::span<const Bin> points, int radius, int rows, int cols);

struct AnnotatorConfig {
  int rd_radius = 2;
  int ra_radius = 2;
  int max_lost = 5;
  // Maximum seed-to-centroid distance, normalised units.
  double association_radius = 2.0;

  void validate() const;
  friend bool operator==(const AnnotatorConfig&, const AnnotatorConfig&) = default;
};

struct ViewAnnotation {
  std::vector<Bin> sparse;
  Box box;
  BinaryMask mask;
};

struct Annotation {
  int frame_index = 0;
  int instance_id = 0;
  Category category = Category::kCar;
  ViewAnnotation rd;
  ViewAnnotation ra;
  Diagnostics diagnostics;
};

/// Sparse points, boxes and dense masks in both views from the physical
/// (x, y, doppler) points of a cluster. Throws kEmptySet on empty input.
Annotation make_annotation(int frame_index, int instance_id, Category category,
                           std::span<const Point3> points, const RadarConfig& config,
                           const AnnotatorConfig& options);

/// sparse within box and mask, box within map bounds, in both views.
bool containment_holds(const Annotation& annotation);

}  // namespace radann
