#include "dexseq/sandbox/scene.hpp"

#include <algorithm>
#include <string>

#include "dexseq/errors.hpp"

namespace dexseq::sandbox {

YawBox ArticulationGeometry::handle_box(double q) const {
  YawBox box;
  box.half_extents = handle_half_extents;
  if (kind == ArticulationKind::knob) {
    box.pose = Pose4{base.position, base.yaw + q};
  } else {
    box.pose = Pose4{base.position + q * axis, base.yaw};
  }
  return box;
}

double SceneGeometry::rest_height(int object) const {
  return table_top() + objects.at(static_cast<std::size_t>(object)).half_extents.z();
}

const Attachment* SceneState::attachment_for(int object) const {
  for (const auto& a : attachments) {
    if (a.object == object) return &a;
  }
  return nullptr;
}

SceneState make_initial_state(const SceneGeometry& geometry, const Pose6& pose,
                              const std::vector<Pose4>& object_poses, double joint_angle) {
  if (object_poses.size() != geometry.objects.size()) {
    throw ConfigError("scene: object pose count does not match geometry");
  }
  SceneState s;
  s.hand_base_pose = pose;
  s.base_target = pose;
  const auto nj = static_cast<std::size_t>(geometry.hand.joint_count());
  const double q = std::clamp(joint_angle, geometry.hand.joint_limits.lower,
                              geometry.hand.joint_limits.upper);
  s.joint_angles.assign(nj, q);
  s.joint_targets.assign(nj, q);
  s.joint_velocities.assign(nj, 0.0);
  s.object_poses = object_poses;
  for (const auto& a : geometry.articulations) s.articulation_positions.push_back(a.initial_position);
  s.articulation_static_steps.assign(geometry.articulations.size(), 0);
  return s;
}

YawBox object_box(const SceneGeometry& geometry, const SceneState& state, int object) {
  const auto k = static_cast<std::size_t>(object);
  if (k >= geometry.objects.size() || k >= state.object_poses.size()) {
    throw LookupError("scene: unknown object " + std::to_string(object));
  }
  return YawBox{state.object_poses[k], geometry.objects[k].half_extents};
}

}  // namespace dexseq::sandbox
