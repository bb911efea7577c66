#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "radann/annotation.hpp"
#include "radann/bandwidth.hpp"
#include "radann/doa_cloud.hpp"

namespace radann {

/// Seeded cluster in one frame. cluster is in normalised coordinates, with
/// members indexing the frame's cloud; points and centroid are physical.
struct Association {
  Cluster cluster;
  std::vector<Point3> points;
  Point3 centroid = Point3::Zero();
  double sigma = 0.0;
  std::size_t grid_index = 0;
  // Seed-to-centroid distance, normalised units.
  double distance = 0.0;
};

/// Bandwidth-selected cluster nearest the physical seed (x, y, v_R).
/// Throws kEmptyCloud, or kAssociationTooFar when the centroid is farther
/// than association_radius from the seed.
Association associate_cluster(const DoaCloud& cloud, const Point3& seed,
                              const ClusteringConfig& config, double association_radius,
                              std::uint64_t rng_seed);

enum class FrameStatus { kSeeded, kPropagated, kLost };

struct TrackFrame {
  int frame_index = 0;
  FrameStatus status = FrameStatus::kLost;
  // Physical seed used in this frame.
  Point3 seed = Point3::Zero();
  std::optional<Association> association;
};

struct Track {
  int instance_id = 0;
  Category category = Category::kCar;
  int seed_frame = 0;
  // In sequence order.
  std::vector<TrackFrame> frames;

  const TrackFrame* find(int frame_index) const;
  std::size_t associated_count() const;
};

/// Associates at clouds[seed_position], then propagates each centroid as the
/// next seed forwards and backwards. Empty clouds and too-far associations
/// mark the frame lost and reuse the last good centroid; after max_lost
/// consecutive lost frames that direction stops. Per-frame Monte Carlo seeds
/// come from (rng_seed, cloud.frame_index).
/// Throws kSeedAssociationFailed when the seed frame itself is lost.
Track track_sequence(std::span<const DoaCloud> clouds, std::size_t seed_position, const Point3& seed,
                     const ClusteringConfig& clustering, const AnnotatorConfig& annotator,
                     std::uint64_t rng_seed, int instance_id = 0,
                     Category category = Category::kCar);

}  // namespace radann
