#include "radann/tracking.hpp"

#include <string>

#include "radann/random.hpp"

namespace radann {

Association associate_cluster(const DoaCloud& cloud, const Point3& seed,
                              const ClusteringConfig& config, double association_radius,
                              std::uint64_t rng_seed) {
  if (cloud.empty()) {
    throw Error(ErrorCode::kEmptyCloud, "frame " + std::to_string(cloud.frame_index) + " has no points");
  }
  const std::vector<Point3> normalized = config.normalize(cloud.points);
  const Point3 seed_n = config.normalize(seed);
  BandwidthSelection sel = select_bandwidth(normalized, seed_n, config.grid, config.mc_samples,
                                            rng_seed, config.mean_shift);

  Association a;
  a.distance = (sel.cluster.centroid - seed_n).norm();
  if (a.distance > association_radius) {
    throw Error(ErrorCode::kAssociationTooFar,
                "frame " + std::to_string(cloud.frame_index) + ": nearest cluster at " +
                    std::to_string(a.distance) + " > " + std::to_string(association_radius));
  }
  a.sigma = sel.sigma;
  a.grid_index = sel.index;
  a.centroid = config.denormalize(sel.cluster.centroid);
  a.points.reserve(sel.cluster.size());
  for (auto idx : sel.cluster.members) a.points.push_back(cloud.points[idx]);
  a.cluster = std::move(sel.cluster);
  return a;
}

const TrackFrame* Track::find(int frame_index) const {
  for (const auto& f : frames) {
    if (f.frame_index == frame_index) return &f;
  }
  return nullptr;
}

std::size_t Track::associated_count() const {
  std::size_t n = 0;
  for (const auto& f : frames) n += f.association.has_value();
  return n;
}

namespace {

std::optional<Association> try_associate(const DoaCloud& cloud, const Point3& seed,
                                         const ClusteringConfig& clustering,
                                         const AnnotatorConfig& annotator, std::uint64_t rng_seed) {
  if (cloud.empty()) return std::nullopt;
  try {
    return associate_cluster(cloud, seed, clustering, annotator.association_radius,
                             derive_seed(rng_seed, {static_cast<std::uint64_t>(cloud.frame_index)}));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kAssociationTooFar) return std::nullopt;
    throw;
  }
}

}  // namespace

Track track_sequence(std::span<const DoaCloud> clouds, std::size_t seed_position, const Point3& seed,
                     const ClusteringConfig& clustering, const AnnotatorConfig& annotator,
                     std::uint64_t rng_seed, int instance_id, Category category) {
  clustering.validate();
  annotator.validate();
  if (seed_position >= clouds.size()) {
    throw Error(ErrorCode::kValidationError, "seed frame outside the sequence");
  }
  Track track;
  track.instance_id = instance_id;
  track.category = category;
  track.seed_frame = clouds[seed_position].frame_index;

  TrackFrame first;
  first.frame_index = clouds[seed_position].frame_index;
  first.seed = seed;
  first.association = try_associate(clouds[seed_position], seed, clustering, annotator, rng_seed);
  if (!first.association) {
    throw Error(ErrorCode::kSeedAssociationFailed,
                "instance " + std::to_string(instance_id) + ": no cluster near the seed at frame " +
                    std::to_string(first.frame_index));
  }
  first.status = FrameStatus::kSeeded;
  const Point3 seed_centroid = first.association->centroid;

  std::vector<TrackFrame> backward;
  std::vector<TrackFrame> forward;
  for (const int dir : {-1, +1}) {
    auto& out = dir < 0 ? backward : forward;
    Point3 current = seed_centroid;
    int lost = 0;
    for (auto pos = static_cast<long>(seed_position) + dir;
         pos >= 0 && pos < static_cast<long>(clouds.size()); pos += dir) {
      const DoaCloud& cloud = clouds[static_cast<std::size_t>(pos)];
      TrackFrame tf;
      tf.frame_index = cloud.frame_index;
      tf.seed = current;
      tf.association = try_associate(cloud, current, clustering, annotator, rng_seed);
      if (tf.association) {
        tf.status = FrameStatus::kPropagated;
        current = tf.association->centroid;
        lost = 0;
      } else {
        tf.status = FrameStatus::kLost;
        ++lost;
      }
      out.push_back(std::move(tf));
      if (lost >= annotator.max_lost) break;
    }
  }

  track.frames.reserve(backward.size() + 1 + forward.size());
  track.frames.insert(track.frames.end(), std::make_move_iterator(backward.rbegin()),
                      std::make_move_iterator(backward.rend()));
  track.frames.push_back(std::move(first));
  track.frames.insert(track.frames.end(), std::make_move_iterator(forward.begin()),
                      std::make_move_iterator(forward.end()));
  return track;
}

}  // namespace radann
