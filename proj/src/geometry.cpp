#include "dexseq/geometry.hpp"

#include <cmath>
#include <numbers>

namespace dexseq {

Mat3 rotation_from_ypr(double yaw, double pitch, double roll) {
  return (Eigen::AngleAxisd(yaw, Vec3::UnitZ()) * Eigen::AngleAxisd(pitch, Vec3::UnitY()) *
          Eigen::AngleAxisd(roll, Vec3::UnitX()))
      .toRotationMatrix();
}

Mat3 yaw_rotation(double yaw) { return Eigen::AngleAxisd(yaw, Vec3::UnitZ()).toRotationMatrix(); }

double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  if (a > std::numbers::pi) a -= two_pi;
  return a;
}

Vec3 YawBox::closest_point(const Vec3& p) const {
  const Mat3 r = yaw_rotation(pose.yaw);
  const Vec3 local = r.transpose() * (p - pose.position);
  const Vec3 clamped = local.cwiseMax(-half_extents).cwiseMin(half_extents);
  return pose.position + r * clamped;
}

double YawBox::signed_distance(const Vec3& p) const {
  const Mat3 r = yaw_rotation(pose.yaw);
  const Vec3 local = r.transpose() * (p - pose.position);
  const Vec3 q = local.cwiseAbs() - half_extents;
  const double outside = q.cwiseMax(0.0).norm();
  const double inside = std::min(q.maxCoeff(), 0.0);
  return outside + inside;
}

Vec3 YawBox::outward_direction(const Vec3& p) const {
  const Mat3 r = yaw_rotation(pose.yaw);
  const Vec3 local = r.transpose() * (p - pose.position);
  const Vec3 clamped = local.cwiseMax(-half_extents).cwiseMin(half_extents);
  Vec3 d = local - clamped;
  if (d.squaredNorm() > 0.0) return r * d.normalized();
  // Interior point: push out through the face with the smallest depth.
  const Vec3 depth = half_extents - local.cwiseAbs();
  int axis = 0;
  depth.minCoeff(&axis);
  Vec3 n = Vec3::Zero();
  n[axis] = local[axis] >= 0.0 ? 1.0 : -1.0;
  return r * n;
}

}  // namespace dexseq
