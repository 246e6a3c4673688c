#pragma once

#include <Eigen/Core>

#include <optional>

namespace viewaug {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kMinProjectDepth = 1e-6;

// Shared pinhole parameters for every image in a run. Pixel coordinates are
// continuous, x right, y down, with the origin at the center of the top-left
// pixel. Skew is fixed at zero.
struct CameraIntrinsics {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;

  bool valid() const;

  // Same camera with pixel coordinates rescaled by (sx, sy); used when the
  // target palette resolution differs from the source image.
  CameraIntrinsics scaled(double sx, double sy) const {
    return {fx * sx, fy * sy, cx * sx, cy * sy};
  }
};

// Rigid camera pose taking world points into the camera frame as
// R * (p - t). rotation must be orthonormal with determinant +1.
struct RigidPose {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  bool valid(double tol = 1e-9) const;
};

// A pixel sample with depth: (u, v) in pixels, d > 0 in scene units.
struct DepthPixel {
  double u = 0.0;
  double v = 0.0;
  double d = 0.0;
};

// Continuous target-palette position plus camera-space z for depth sorting.
struct ProjectedPoint {
  double u = 0.0;
  double v = 0.0;
  double depth = 0.0;
};

// Axis-angle rotation vector (radians) to rotation matrix. A zero vector
// yields the identity. Throws std::invalid_argument on non-finite input.
Mat3 rotation_from_vector(const Vec3& rvec);

// Back-projects a pixel with depth into the camera frame:
//   X = d*(u-cx)/fx, Y = d*(v-cy)/fy, Z = d.
// Throws std::domain_error when d <= 0.
Vec3 unproject(const DepthPixel& p, const CameraIntrinsics& k);

Vec3 world_to_camera(const Vec3& p, const RigidPose& pose);

// Pinhole projection u = fx*X/Z + cx, v = fy*Y/Z + cy. Returns nullopt when
// Z <= kMinProjectDepth; the caller culls such points.
std::optional<ProjectedPoint> project(const Vec3& p, const CameraIntrinsics& k);

}  // namespace viewaug
