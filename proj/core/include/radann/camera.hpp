#pragma once

#include <array>

#include <Eigen/Core>

#include "radann/types.hpp"

namespace radann {

/// Pinhole camera: s [p_x, p_y, 1]^T = A B [c_x, c_y, c_z, 1]^T with A the
/// intrinsics and B = [R | m] the world-to-camera extrinsics. World axes are
/// the radar's: c_x lateral, c_y forward, c_z up.
struct CameraModel {
  Eigen::Matrix3d intrinsics = Eigen::Matrix3d::Identity();
  Eigen::Matrix<double, 3, 4> extrinsics = Eigen::Matrix<double, 3, 4>::Identity();
  int image_width_px = 0;
  int image_height_px = 0;

  /// Throws kInvalidConfig for non-positive focal lengths, a non-orthonormal
  /// rotation (1e-6) or an empty image.
  void validate() const;

  Eigen::Matrix<double, 3, 4> projection() const { return intrinsics * extrinsics; }

  /// Pixel coordinates of a world point; scale receives s.
  Eigen::Vector2d project(const Eigen::Vector3d& world, double* scale = nullptr) const;

  /// Level camera at the given height looking along +c_y, no lateral offset.
  static CameraModel level(double fx, double fy, double ax, double ay, double height_m,
                           int width_px, int height_px);

  friend bool operator==(const CameraModel&, const CameraModel&) = default;
};

/// Column x, row y (rows grow downward).
struct Pixel {
  int x = 0;
  int y = 0;

  friend bool operator==(const Pixel&, const Pixel&) = default;
};

/// Externally produced instance segmentation for one image.
struct InstanceDetection {
  int frame_index = 0;
  int instance_id = 0;
  Category category = Category::kCar;
  // [x0, y0, x1, y1] in pixels.
  std::array<double, 4> box{};
  // Image-sized binary mask.
  BinaryMask mask;
  double confidence = 1.0;
};

/// Ground-contact pixel: the lowest mask pixel in the column nearest the
/// mask's centre-of-mass x (smaller column on ties). Throws kEmptyMask.
Pixel reference_pixel(const BinaryMask& mask);
Pixel reference_pixel(const InstanceDetection& detection);

/// Solves s p = A B [c_x, c_y, ground_height, 1]^T for (c_x, c_y, s).
/// Throws kRayParallelToGround when |det| < 1e-10 and kBehindCamera when s <= 0.
Eigen::Vector2d pixel_to_ground(const Eigen::Vector2d& pixel, const CameraModel& camera,
                                double ground_height_m = 0.0);

/// (c_now - c_prev) / delta_t.
Eigen::Vector2d estimate_velocity(const Eigen::Vector2d& c_now, const Eigen::Vector2d& c_prev,
                                  double delta_t_s);

/// -(v . c) / |c|: the velocity component towards the radar. Throws kAtOrigin.
double radial_velocity(const Eigen::Vector2d& velocity, const Eigen::Vector2d& position);

}  // namespace radann
