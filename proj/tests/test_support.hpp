#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "radann/scene.hpp"
#include "radann/types.hpp"

namespace radann::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("radann_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

/// Isotropic Gaussian blob of n points.
inline std::vector<Point3> blob(std::mt19937_64& rng, const Point3& mean, double stddev, int n) {
  std::normal_distribution<double> g(0.0, stddev);
  std::vector<Point3> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.emplace_back(mean + Point3(g(rng), g(rng), g(rng)));
  return out;
}

/// One object moving at constant ground velocity.
inline SceneObject linear_object(int id, Category category, Eigen::Vector2d start, Eigen::Vector2d velocity,
                                 int frames, double dt, double amplitude = 1.0) {
  SceneObject obj;
  obj.instance_id = id;
  obj.category = category;
  obj.reflectivity_amplitude = amplitude;
  for (int k = 0; k < frames; ++k) obj.trajectory.push_back(start + velocity * (k * dt));
  return obj;
}

inline Scene single_target_scene(Eigen::Vector2d position, Eigen::Vector2d velocity = Eigen::Vector2d::Zero(),
                                 int frames = 1, double dt = 0.1) {
  Scene scene;
  scene.frame_count = frames;
  scene.frame_interval_s = dt;
  scene.objects.push_back(linear_object(1, Category::kCar, position, velocity, frames, dt));
  return scene;
}

}  // namespace radann::testing
