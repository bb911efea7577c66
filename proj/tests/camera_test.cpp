#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include "radann/camera.hpp"
#include "radann/error.hpp"

namespace radann {
namespace {

CameraModel tilted_camera() {
  CameraModel cam = CameraModel::level(1200, 1150, 960, 540, 1.6, 1920, 1080);
  // Pitch down 8 degrees and yaw 5 degrees, mounted 0.3 m left of the radar.
  const Eigen::Matrix3d base = cam.extrinsics.leftCols<3>();
  const Eigen::Matrix3d pitch = Eigen::AngleAxisd(-8 * std::numbers::pi / 180, Eigen::Vector3d::UnitX()).matrix();
  const Eigen::Matrix3d yaw = Eigen::AngleAxisd(5 * std::numbers::pi / 180, Eigen::Vector3d::UnitY()).matrix();
  const Eigen::Matrix3d r = pitch * yaw * base;
  const Eigen::Vector3d centre(-0.3, 0.0, 1.6);
  cam.extrinsics.leftCols<3>() = r;
  cam.extrinsics.col(3) = -r * centre;
  return cam;
}

TEST(Camera, LevelCameraIsValid) {
  EXPECT_NO_THROW(CameraModel::level(1000, 1000, 640, 360, 1.5, 1280, 720).validate());
  CameraModel bad = CameraModel::level(1000, 1000, 640, 360, 1.5, 1280, 720);
  bad.extrinsics(0, 0) = 2;
  EXPECT_THROW(bad.validate(), Error);
  EXPECT_NO_THROW(tilted_camera().validate());
}

TEST(Camera, OpticalAxisPointInverts) {
  const CameraModel cam = CameraModel::level(1000, 1000, 640, 360, 1.5, 1280, 720);
  // Explicit projection of (0, 10, 0): camera coords (0, 1.5, 10).
  const Eigen::Vector2d px(640 + 1000 * 0.0 / 10, 360 + 1000 * 1.5 / 10);
  EXPECT_TRUE(cam.project({0, 10, 0}).isApprox(px));
  const Eigen::Vector2d ground = pixel_to_ground(px, cam);
  EXPECT_NEAR(ground.x(), 0.0, 1e-6);
  EXPECT_NEAR(ground.y(), 10.0, 1e-6);
}

TEST(Camera, RandomGroundRoundTrip) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ux(-15, 15), uy(2, 50);
  for (const CameraModel& cam : {CameraModel::level(1500, 1500, 960, 540, 1.5, 1920, 1080), tilted_camera()}) {
    for (int i = 0; i < 1000; ++i) {
      const Eigen::Vector3d p(ux(rng), uy(rng), 0.0);
      double s = 0;
      const Eigen::Vector2d px = cam.project(p, &s);
      ASSERT_GT(s, 0);
      const Eigen::Vector2d back = pixel_to_ground(px, cam);
      EXPECT_LT((back - p.head<2>()).norm(), 1e-6);
    }
  }
}

TEST(Camera, RaisedGroundPlane) {
  const CameraModel cam = tilted_camera();
  const Eigen::Vector3d p(2.0, 12.0, 0.4);
  const Eigen::Vector2d back = pixel_to_ground(cam.project(p), cam, 0.4);
  EXPECT_LT((back - p.head<2>()).norm(), 1e-6);
}

TEST(Camera, HorizonAndSkyPixels) {
  const CameraModel cam = CameraModel::level(1000, 1000, 640, 360, 1.5, 1280, 720);
  try {
    pixel_to_ground({640, 360}, cam);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRayParallelToGround);
  }
  try {
    pixel_to_ground({640, 100}, cam);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBehindCamera);
  }
}

TEST(ReferencePixel, FullSquare) {
  BinaryMask m = BinaryMask::Zero(5, 5);
  m.block(0, 0, 3, 3).setOnes();
  EXPECT_EQ(reference_pixel(m), (Pixel{1, 2}));
}

TEST(ReferencePixel, SinglePixel) {
  BinaryMask m = BinaryMask::Zero(10, 10);
  m(4, 7) = 1;
  EXPECT_EQ(reference_pixel(m), (Pixel{7, 4}));
}

TEST(ReferencePixel, EmptyMaskThrows) {
  try {
    reference_pixel(BinaryMask::Zero(4, 4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyMask);
  }
}

// Scan oracle: centroid x over all pixels, nearest occupied column (smaller on
// ties), lowest pixel in it.
Pixel scan_reference(const BinaryMask& m) {
  double sx = 0;
  int n = 0;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (m(r, c)) sx += c, ++n;
  const double cx = sx / n;
  Pixel best{-1, -1};
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (!m(r, c)) continue;
      const double gap = std::abs(c - cx), best_gap = std::abs(best.x - cx);
      if (best.x < 0 || gap < best_gap || (gap == best_gap && c < best.x) || (c == best.x && r > best.y)) {
        best = {c, r};
      }
    }
  }
  return best;
}

TEST(ReferencePixel, LShapeMatchesScan) {
  BinaryMask m = BinaryMask::Zero(12, 12);
  m.block(1, 2, 9, 2).setOnes();
  m.block(8, 2, 2, 8).setOnes();
  const Pixel p = reference_pixel(m);
  EXPECT_EQ(p, scan_reference(m));
  EXPECT_EQ(p.y, 9);
}

TEST(ReferencePixel, RandomMasksMatchScan) {
  std::mt19937_64 rng(8);
  std::bernoulli_distribution on(0.2);
  for (int t = 0; t < 200; ++t) {
    BinaryMask m = BinaryMask::Zero(9, 13);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = on(rng);
    if (!m.any()) continue;
    EXPECT_EQ(reference_pixel(m), scan_reference(m));
  }
}

TEST(Velocity, Differences) {
  EXPECT_EQ(estimate_velocity({1, 2}, {1, 2}, 0.5), Eigen::Vector2d::Zero());
  EXPECT_TRUE(estimate_velocity({0, 10}, {0, 12}, 1.0).isApprox(Eigen::Vector2d(0, -2)));
  EXPECT_TRUE(estimate_velocity({0, 10}, {0, 12}, 0.5).isApprox(Eigen::Vector2d(0, -4)));
  EXPECT_THROW(estimate_velocity({0, 10}, {0, 12}, 0.0), Error);
}

TEST(RadialVelocity, Cases) {
  EXPECT_DOUBLE_EQ(radial_velocity({0, -2}, {0, 10}), 2.0);
  EXPECT_DOUBLE_EQ(radial_velocity({2, 0}, {0, 10}), 0.0);
  const double a = std::numbers::pi / 3;
  EXPECT_NEAR(radial_velocity({2 * std::sin(a), -2 * std::cos(a)}, {0, 10}), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(radial_velocity({0, 3}, {0, 10}), -3.0);
  try {
    radial_velocity({1, 0}, {0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAtOrigin);
  }
}

}  // namespace
}  // namespace radann
