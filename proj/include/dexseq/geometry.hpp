#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace dexseq {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Rz(yaw) * Ry(pitch) * Rx(roll).
Mat3 rotation_from_ypr(double yaw, double pitch, double roll);

// Rotation about the world z axis.
Mat3 yaw_rotation(double yaw);

// Wraps an angle to (-pi, pi].
double wrap_angle(double a);

// Base pose of the hand: position plus yaw/pitch/roll.
struct Pose6 {
  Vec3 position = Vec3::Zero();
  double yaw = 0.0;
  double pitch = 0.0;
  double roll = 0.0;

  Mat3 rotation() const { return rotation_from_ypr(yaw, pitch, roll); }
  Vec3 transform(const Vec3& local) const { return position + rotation() * local; }
  Vec3 inverse_transform(const Vec3& world) const {
    return rotation().transpose() * (world - position);
  }

  bool operator==(const Pose6&) const = default;
};

// Planar pose for tabletop objects and fixtures.
struct Pose4 {
  Vec3 position = Vec3::Zero();
  double yaw = 0.0;

  bool operator==(const Pose4&) const = default;
};

// Oriented box whose only rotation is about the world z axis.
struct YawBox {
  Pose4 pose;
  Vec3 half_extents = Vec3::Constant(0.01);

  // Closest point on or inside the box to `p`.
  Vec3 closest_point(const Vec3& p) const;

  // Signed distance from `p` to the box surface (negative inside).
  double signed_distance(const Vec3& p) const;

  // Outward unit direction from the box toward `p`; for interior points the
  // direction of the nearest face normal.
  Vec3 outward_direction(const Vec3& p) const;

  double bottom() const { return pose.position.z() - half_extents.z(); }
};

}  // namespace dexseq
