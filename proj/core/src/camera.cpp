#include "radann/camera.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "radann/error.hpp"

namespace radann {

void CameraModel::validate() const {
  if (!(intrinsics(0, 0) > 0 && intrinsics(1, 1) > 0)) {
    throw Error(ErrorCode::kInvalidConfig, "camera focal lengths must be > 0");
  }
  const Eigen::Matrix3d r = extrinsics.leftCols<3>();
  if (!(r * r.transpose()).isIdentity(1e-6) || std::abs(r.determinant() - 1.0) > 1e-6) {
    throw Error(ErrorCode::kInvalidConfig, "camera rotation is not orthonormal");
  }
  if (image_width_px <= 0 || image_height_px <= 0) {
    throw Error(ErrorCode::kInvalidConfig, "camera image size must be positive");
  }
}

Eigen::Vector2d CameraModel::project(const Eigen::Vector3d& world, double* scale) const {
  const Eigen::Vector3d h = projection() * world.homogeneous();
  if (scale) *scale = h.z();
  return h.head<2>() / h.z();
}

CameraModel CameraModel::level(double fx, double fy, double ax, double ay, double height_m,
                               int width_px, int height_px) {
  CameraModel cam;
  cam.intrinsics << fx, 0, ax, 0, fy, ay, 0, 0, 1;
  // Camera x = world x, camera y (down) = -world z, camera z = world y.
  cam.extrinsics << 1, 0, 0, 0,
                    0, 0, -1, height_m,
                    0, 1, 0, 0;
  cam.image_width_px = width_px;
  cam.image_height_px = height_px;
  return cam;
}

Pixel reference_pixel(const BinaryMask& mask) {
  double sum_x = 0.0;
  long count = 0;
  for (Eigen::Index r = 0; r < mask.rows(); ++r) {
    for (Eigen::Index c = 0; c < mask.cols(); ++c) {
      if (mask(r, c)) {
        sum_x += static_cast<double>(c);
        ++count;
      }
    }
  }
  if (count == 0) throw Error(ErrorCode::kEmptyMask, "segmentation mask has no pixels");
  const double centroid_x = sum_x / count;

  int best_col = -1;
  double best_gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index c = 0; c < mask.cols(); ++c) {
    if (!mask.col(c).any()) continue;
    const double gap = std::abs(static_cast<double>(c) - centroid_x);
    if (gap < best_gap) {
      best_gap = gap;
      best_col = static_cast<int>(c);
    }
  }
  int bottom = 0;
  for (Eigen::Index r = mask.rows() - 1; r >= 0; --r) {
    if (mask(r, best_col)) {
      bottom = static_cast<int>(r);
      break;
    }
  }
  return {best_col, bottom};
}

Pixel reference_pixel(const InstanceDetection& detection) { return reference_pixel(detection.mask); }

Eigen::Vector2d pixel_to_ground(const Eigen::Vector2d& pixel, const CameraModel& camera,
                                double ground_height_m) {
  const Eigen::Matrix<double, 3, 4> p = camera.projection();
  Eigen::Matrix3d system;
  system.col(0) = p.col(0);
  system.col(1) = p.col(1);
  system.col(2) = -Eigen::Vector3d(pixel.x(), pixel.y(), 1.0);
  const double det = system.determinant();
  if (std::abs(det) < 1e-10) {
    throw Error(ErrorCode::kRayParallelToGround, "pixel ray does not meet the ground plane");
  }
  const Eigen::Vector3d rhs = -(p.col(2) * ground_height_m + p.col(3));
  const Eigen::Vector3d sol = system.partialPivLu().solve(rhs);
  if (!(sol.z() > 0)) {
    throw Error(ErrorCode::kBehindCamera, "ground intersection lies behind the camera");
  }
  return sol.head<2>();
}

Eigen::Vector2d estimate_velocity(const Eigen::Vector2d& c_now, const Eigen::Vector2d& c_prev,
                                  double delta_t_s) {
  if (!(delta_t_s > 0)) throw Error(ErrorCode::kValidationError, "delta_t must be > 0");
  return (c_now - c_prev) / delta_t_s;
}

double radial_velocity(const Eigen::Vector2d& velocity, const Eigen::Vector2d& position) {
  const double range = position.norm();
  if (!(range > 0)) throw Error(ErrorCode::kAtOrigin, "radial velocity undefined at the radar origin");
  return -velocity.dot(position) / range;
}

}  // namespace radann
