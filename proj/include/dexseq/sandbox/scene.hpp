#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dexseq/geometry.hpp"
#include "dexseq/sandbox/hand_model.hpp"

namespace dexseq::sandbox {

using Vec6 = Eigen::Matrix<double, 6, 1>;

struct ObjectGeometry {
  Vec3 half_extents = Vec3::Constant(0.01375);
  double mass_scale = 1.0;
  double friction = 0.3;
  // Recorded for completeness; the quasi-static model has no bounces.
  double restitution = 0.0;

  bool operator==(const ObjectGeometry&) const = default;
};

// Static box used as an obstacle (button guard, cabinet body, knob base).
struct FixtureBox {
  std::string name;
  YawBox box;

  bool operator==(const FixtureBox&) const = default;
};

enum class ArticulationKind { knob, drawer };

// One articulated fixture with a single joint and a box-shaped handle.
//   knob:   revolute about world z through base.position; the handle bar is
//           rotated by base.yaw + q.
//   drawer: prismatic along `axis`; the handle sits at base.position + q * axis.
struct ArticulationGeometry {
  ArticulationKind kind = ArticulationKind::knob;
  Pose4 base;
  Vec3 axis = Vec3::UnitX();
  double handle_radius = 0.04;
  Vec3 handle_half_extents{0.04, 0.008, 0.012};
  double lower = -100.0;
  double upper = 100.0;
  double capture_radius = 0.02;
  double initial_position = 0.0;
  // Sign of the rotation or travel that counts toward the goal.
  double goal_direction = 1.0;

  YawBox handle_box(double q) const;

  bool operator==(const ArticulationGeometry&) const = default;
};

// Everything about a scene that does not change while stepping.
struct SceneGeometry {
  HandModel hand;
  YawBox table{Pose4{Vec3(0.5, 0.0, -0.05), 0.0}, Vec3(1.0, 1.0, 0.05)};
  std::vector<ObjectGeometry> objects;
  std::vector<FixtureBox> fixtures;
  std::vector<ArticulationGeometry> articulations;
  // Goal markers with no physical presence.
  std::vector<Pose4> sites;
  double stiffness = 100.0;
  double query_cutoff = 0.1;

  double table_top() const { return table.pose.position.z() + table.half_extents.z(); }
  double rest_height(int object) const;

  bool operator==(const SceneGeometry&) const = default;
};

// Rigid grasp of an object: its pose in the hand frame is frozen.
struct Attachment {
  int object = 0;
  Vec3 offset_in_hand = Vec3::Zero();
  double relative_yaw = 0.0;

  bool operator==(const Attachment&) const = default;
};

struct SceneState {
  Pose6 hand_base_pose;
  Pose6 base_target;
  Vec6 base_velocity = Vec6::Zero();
  std::vector<double> joint_angles;
  std::vector<double> joint_targets;
  std::vector<double> joint_velocities;
  std::vector<Pose4> object_poses;
  std::vector<double> articulation_positions;
  std::vector<int> articulation_static_steps;
  std::vector<Attachment> attachments;
  std::vector<int> attach_counters;
  int step_index = 0;

  const Attachment* attachment_for(int object) const;
  bool is_attached(int object) const { return attachment_for(object) != nullptr; }

  bool operator==(const SceneState&) const = default;
};

struct Scene {
  SceneGeometry geometry;
  SceneState state;

  bool operator==(const Scene&) const = default;
};

// Hand at `pose` with all joints at `joint_angle` and objects at rest.
SceneState make_initial_state(const SceneGeometry& geometry, const Pose6& pose,
                              const std::vector<Pose4>& object_poses, double joint_angle = 0.0);

YawBox object_box(const SceneGeometry& geometry, const SceneState& state, int object);

}  // namespace dexseq::sandbox
