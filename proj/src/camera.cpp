#include "viewaug/camera.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <stdexcept>

namespace viewaug {

bool CameraIntrinsics::valid() const {
  return fx > 0.0 && fy > 0.0 && std::isfinite(fx) && std::isfinite(fy) &&
         std::isfinite(cx) && std::isfinite(cy);
}

bool RigidPose::valid(double tol) const {
  if (!rotation.allFinite() || !translation.allFinite()) return false;
  const Mat3 rrt = rotation * rotation.transpose();
  if ((rrt - Mat3::Identity()).cwiseAbs().maxCoeff() > tol) return false;
  return std::abs(rotation.determinant() - 1.0) <= tol;
}

Mat3 rotation_from_vector(const Vec3& rvec) {
  if (!rvec.allFinite()) {
    throw std::invalid_argument("rotation_from_vector: non-finite rotation vector");
  }
  const double angle = rvec.norm();
  if (angle == 0.0) return Mat3::Identity();
  return Eigen::AngleAxisd(angle, rvec / angle).toRotationMatrix();
}

Vec3 unproject(const DepthPixel& p, const CameraIntrinsics& k) {
  if (!(p.d > 0.0)) {
    throw std::domain_error("unproject: non-positive depth " + std::to_string(p.d));
  }
  // Written as scalar expressions; several oracles reproduce this chain
  // bit-for-bit.
  return {p.d * (p.u - k.cx) / k.fx, p.d * (p.v - k.cy) / k.fy, p.d};
}

Vec3 world_to_camera(const Vec3& p, const RigidPose& pose) {
  const double x = p.x() - pose.translation.x();
  const double y = p.y() - pose.translation.y();
  const double z = p.z() - pose.translation.z();
  const Mat3& r = pose.rotation;
  return {r(0, 0) * x + r(0, 1) * y + r(0, 2) * z,
          r(1, 0) * x + r(1, 1) * y + r(1, 2) * z,
          r(2, 0) * x + r(2, 1) * y + r(2, 2) * z};
}

std::optional<ProjectedPoint> project(const Vec3& p, const CameraIntrinsics& k) {
  if (!(p.z() > kMinProjectDepth)) return std::nullopt;
  return ProjectedPoint{k.fx * p.x() / p.z() + k.cx, k.fy * p.y() / p.z() + k.cy,
                        p.z()};
}

}  // namespace viewaug
