#include "dexseq/sandbox/step.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dexseq/errors.hpp"
#include "dexseq/sandbox/contact.hpp"
#include "dexseq/sandbox/kinematics.hpp"

namespace dexseq::sandbox {
namespace {

double clamp_abs(double v, double limit) { return std::clamp(v, -limit, limit); }

double track(double actual, double target, double gain) { return actual + gain * (target - actual); }

void follow_attachments(SceneState& s) {
  const Mat3 r = s.hand_base_pose.rotation();
  for (const auto& a : s.attachments) {
    Pose4& p = s.object_poses[static_cast<std::size_t>(a.object)];
    p.position = s.hand_base_pose.position + r * a.offset_in_hand;
    p.yaw = s.hand_base_pose.yaw + a.relative_yaw;
  }
}

const GraspRule* rule_for(const StepParams& params, int object) {
  for (const auto& r : params.grasp_rules) {
    if (r.object == object) return &r;
  }
  return nullptr;
}

bool released(const SceneState& s, const HandKinematics& kin, const GraspRule& rule) {
  const Vec3& center = s.object_poses[static_cast<std::size_t>(rule.object)].position;
  for (int f : rule.fingers) {
    if ((kin.fingertips[static_cast<std::size_t>(f)] - center).norm() > rule.release_radius) {
      return true;
    }
  }
  return false;
}

bool captured(const SceneGeometry& g, const SceneState& s, const HandKinematics& kin,
              const GraspRule& rule) {
  const YawBox box = object_box(g, s, rule.object);
  for (int f : rule.fingers) {
    const double gap =
        box.signed_distance(kin.fingertips[static_cast<std::size_t>(f)]) - g.hand.fingertip_radius;
    if (!(gap <= rule.capture_distance)) return false;
  }
  if (rule.include_palm) {
    const double gap = box.signed_distance(kin.palm) - g.hand.palm_radius;
    if (!(gap <= rule.capture_distance)) return false;
  }
  return true;
}

void push_free_objects(const SceneGeometry& g, SceneState& s, const HandKinematics& kin,
                       const StepParams& params) {
  for (std::size_t k = 0; k < g.objects.size(); ++k) {
    const int object = static_cast<int>(k);
    if (s.is_attached(object)) continue;
    const YawBox box = object_box(g, s, object);
    Vec3 net = Vec3::Zero();
    auto accumulate = [&](const Vec3& center, double radius) {
      const double pen = radius - box.signed_distance(center);
      if (pen <= 0.0) return;
      // The sphere pushes the box away from itself.
      Vec3 dir = -box.outward_direction(center);
      dir.z() = 0.0;
      if (dir.squaredNorm() == 0.0) return;
      net += g.stiffness * pen * dir.normalized();
    };
    accumulate(kin.palm, g.hand.palm_radius);
    for (const auto& tip : kin.fingertips) accumulate(tip, g.hand.fingertip_radius);
    const double magnitude = net.norm();
    const double step = quasi_static_displacement(magnitude, g.objects[k], params);
    if (step > 0.0) s.object_poses[k].position += step * (net / magnitude);
  }
}

void update_articulations(const SceneGeometry& g, const SceneState& before, SceneState& s,
                          const HandKinematics& kin_before, const HandKinematics& kin_after,
                          const StepParams& params) {
  for (std::size_t a = 0; a < g.articulations.size(); ++a) {
    const ArticulationGeometry& art = g.articulations[a];
    const double q_before = before.articulation_positions[a];
    const YawBox handle = art.handle_box(q_before);
    double sum = 0.0;
    int contributors = 0;
    if (art.kind == ArticulationKind::knob) {
      for (std::size_t f = 0; f < kin_after.fingertips.size(); ++f) {
        const Vec3& tip = kin_after.fingertips[f];
        if (handle.signed_distance(tip) >= g.hand.fingertip_radius) continue;
        Vec3 radial = tip - art.base.position;
        radial.z() = 0.0;
        if (radial.squaredNorm() == 0.0) continue;
        const Vec3 tangent = Vec3::UnitZ().cross(radial).normalized();
        sum += (kin_after.fingertips[f] - kin_before.fingertips[f]).dot(tangent) / art.handle_radius;
        ++contributors;
      }
    } else {
      for (int f : params.manipulator_fingers) {
        const auto fi = static_cast<std::size_t>(f);
        const double gap = handle.signed_distance(kin_before.fingertips[fi]) - g.hand.fingertip_radius;
        if (gap > art.capture_radius) continue;
        sum += (kin_after.fingertips[fi] - kin_before.fingertips[fi]).dot(art.axis);
        ++contributors;
      }
    }
    double q = q_before;
    if (contributors > 0) q = std::clamp(q_before + sum / contributors, art.lower, art.upper);
    s.articulation_positions[a] = q;
    if (std::abs(q - q_before) < params.static_tolerance) {
      ++s.articulation_static_steps[a];
    } else {
      s.articulation_static_steps[a] = 0;
    }
  }
}

void update_grasps(const SceneGeometry& g, SceneState& s, const HandKinematics& kin,
                   const StepParams& params) {
  // Releases first, so an object dropped this step cannot re-attach in the same step.
  std::erase_if(s.attachments, [&](const Attachment& a) {
    const GraspRule* rule = rule_for(params, a.object);
    return rule == nullptr || released(s, kin, *rule);
  });
  if (s.attach_counters.size() != params.grasp_rules.size()) {
    s.attach_counters.assign(params.grasp_rules.size(), 0);
  }
  for (std::size_t i = 0; i < params.grasp_rules.size(); ++i) {
    const GraspRule& rule = params.grasp_rules[i];
    if (s.is_attached(rule.object)) continue;
    if (captured(g, s, kin, rule)) {
      ++s.attach_counters[i];
    } else {
      s.attach_counters[i] = 0;
    }
    if (s.attach_counters[i] >= rule.consecutive_steps) {
      const Pose4& p = s.object_poses[static_cast<std::size_t>(rule.object)];
      Attachment a;
      a.object = rule.object;
      a.offset_in_hand = s.hand_base_pose.inverse_transform(p.position);
      a.relative_yaw = p.yaw - s.hand_base_pose.yaw;
      s.attachments.push_back(a);
      s.attach_counters[i] = 0;
    }
  }
}

void settle_free_objects(const SceneGeometry& g, SceneState& s) {
  for (std::size_t k = 0; k < g.objects.size(); ++k) {
    if (s.is_attached(static_cast<int>(k))) continue;
    s.object_poses[k].position.z() = g.rest_height(static_cast<int>(k));
  }
}

}  // namespace

int action_dim(const SceneGeometry& geometry) { return geometry.hand.action_dim(); }

double quasi_static_displacement(double force, const ObjectGeometry& object,
                                 const StepParams& params) {
  const double threshold = params.push_threshold * object.friction / 0.3;
  if (!(force > threshold)) return 0.0;
  return std::min(params.push_gain / object.mass_scale * (force - threshold), params.push_step_cap);
}

SceneState step_scene(const SceneGeometry& g, const SceneState& state,
                      std::span<const double> action, const StepParams& params) {
  const HandModel& hand = g.hand;
  if (static_cast<int>(action.size()) != hand.action_dim()) {
    throw ConfigError("step_scene: expected action of size " + std::to_string(hand.action_dim()) +
                      ", got " + std::to_string(action.size()));
  }
  if (static_cast<int>(state.joint_angles.size()) != hand.joint_count()) {
    throw ConfigError("step_scene: joint vector does not match hand model");
  }
  for (double a : action) {
    if (!std::isfinite(a)) throw InputError("step_scene: non-finite action entry");
  }

  SceneState s = state;
  const HandKinematics kin_before = forward_kinematics(hand, state);

  // Base: integrate clamped deltas into the target, then track it.
  Pose6& target = s.base_target;
  for (int i = 0; i < 3; ++i) target.position[i] += clamp_abs(action[i], params.max_translation_delta);
  target.yaw += clamp_abs(action[3], params.max_rotation_delta);
  target.pitch += clamp_abs(action[4], params.max_rotation_delta);
  target.roll += clamp_abs(action[5], params.max_rotation_delta);
  Pose6& pose = s.hand_base_pose;
  const Pose6 old_pose = pose;
  for (int i = 0; i < 3; ++i) pose.position[i] = track(pose.position[i], target.position[i], params.tracking_gain);
  pose.yaw = track(pose.yaw, target.yaw, params.tracking_gain);
  pose.pitch = track(pose.pitch, target.pitch, params.tracking_gain);
  pose.roll = track(pose.roll, target.roll, params.tracking_gain);
  for (int i = 0; i < 3; ++i) s.base_velocity[i] = (pose.position[i] - old_pose.position[i]) / params.dt;
  s.base_velocity[3] = (pose.yaw - old_pose.yaw) / params.dt;
  s.base_velocity[4] = (pose.pitch - old_pose.pitch) / params.dt;
  s.base_velocity[5] = (pose.roll - old_pose.roll) / params.dt;

  // Finger joints.
  const JointLimits lim = hand.joint_limits;
  for (int j = 0; j < hand.joint_count(); ++j) {
    const auto ju = static_cast<std::size_t>(j);
    const double delta = clamp_abs(action[static_cast<std::size_t>(HandModel::kBaseDof + j)],
                                   params.max_joint_delta);
    s.joint_targets[ju] = std::clamp(s.joint_targets[ju] + delta, lim.lower, lim.upper);
    const double next = std::clamp(track(s.joint_angles[ju], s.joint_targets[ju], params.tracking_gain),
                                   lim.lower, lim.upper);
    s.joint_velocities[ju] = (next - s.joint_angles[ju]) / params.dt;
    s.joint_angles[ju] = next;
  }

  const HandKinematics kin_after = forward_kinematics(hand, s);
  follow_attachments(s);
  push_free_objects(g, s, kin_after, params);
  update_articulations(g, state, s, kin_before, kin_after, params);
  update_grasps(g, s, kin_after, params);
  settle_free_objects(g, s);
  ++s.step_index;
  return s;
}

}  // namespace dexseq::sandbox
