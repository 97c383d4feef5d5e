#include "dexseq/tasks/task_queries.hpp"

#include <cmath>
#include <string>

#include "dexseq/errors.hpp"
#include "dexseq/sandbox/kinematics.hpp"

namespace dexseq::tasks {
namespace {

using fingers::FingerConfiguration;
using sandbox::HandKinematics;
using sandbox::Scene;

class LayoutBuilder {
 public:
  void add(std::string name, int length) {
    layout_.slices.push_back(ObservationSlice{std::move(name), layout_.size, length});
    layout_.size += length;
  }
  ObservationLayout take() { return std::move(layout_); }

 private:
  ObservationLayout layout_;
};

void add_object_slices(LayoutBuilder& b, const std::string& prefix, bool attached_flag) {
  b.add(prefix + ".position", 3);
  b.add(prefix + ".yaw", 1);
  b.add(prefix + ".half_extents", 3);
  b.add(prefix + ".rel_wrist", 3);
  if (attached_flag) b.add(prefix + ".attached", 1);
}

void push3(std::vector<double>& out, const Vec3& v) { out.insert(out.end(), {v.x(), v.y(), v.z()}); }

void push_object(std::vector<double>& out, const Scene& scene, int object, const Vec3& wrist,
                 bool attached_flag) {
  const Pose4& p = scene.state.object_poses.at(static_cast<std::size_t>(object));
  push3(out, p.position);
  out.push_back(p.yaw);
  push3(out, scene.geometry.objects[static_cast<std::size_t>(object)].half_extents);
  push3(out, p.position - wrist);
  if (attached_flag) out.push_back(scene.state.is_attached(object) ? 1.0 : 0.0);
}

double sphere_gap(const YawBox& box, const Vec3& center, double radius) {
  return box.signed_distance(center) - radius;
}

double sphere_force(const Scene& scene, const YawBox& box, const Vec3& center, double radius) {
  return scene.geometry.stiffness * std::max(0.0, -sphere_gap(box, center, radius));
}

double hand_force_on(const Scene& scene, const HandKinematics& kin, const YawBox& box) {
  const auto& hand = scene.geometry.hand;
  double total = sphere_force(scene, box, kin.palm, hand.palm_radius);
  for (const auto& tip : kin.fingertips) total += sphere_force(scene, box, tip, hand.fingertip_radius);
  return total;
}

double table_force(const Scene& scene, const HandKinematics& kin) {
  const auto& g = scene.geometry;
  double total = hand_force_on(scene, kin, g.table);
  const YawBox block = sandbox::object_box(g, scene.state, kGraspBlock);
  total += g.stiffness * std::max(0.0, g.table_top() - block.bottom());
  return total;
}

std::vector<double> tip_gaps(const Scene& scene, const HandKinematics& kin, const YawBox& box,
                             const std::vector<int>& fingers) {
  std::vector<double> out;
  out.reserve(fingers.size());
  for (int f : fingers) {
    out.push_back(std::max(
        0.0, sphere_gap(box, kin.fingertips[static_cast<std::size_t>(f)],
                        scene.geometry.hand.fingertip_radius)));
  }
  return out;
}

double palm_gap(const Scene& scene, const HandKinematics& kin, const YawBox& box) {
  return std::max(0.0, sphere_gap(box, kin.palm, scene.geometry.hand.palm_radius));
}

double knob_progress(const Scene& scene) {
  const auto& art = scene.geometry.articulations.at(0);
  return art.goal_direction * (scene.state.articulation_positions.at(0) - art.initial_position);
}

bool hand_touches_guard(const Scene& scene, const HandKinematics& kin) {
  for (const auto& fixture : scene.geometry.fixtures) {
    if (fixture.name.rfind("guard", 0) != 0) continue;
    if (hand_force_on(scene, kin, fixture.box) > 0.0) return true;
  }
  return false;
}

double guard_force(const Scene& scene, const HandKinematics& kin) {
  double total = 0.0;
  for (const auto& fixture : scene.geometry.fixtures) {
    if (fixture.name.rfind("guard", 0) == 0) total += hand_force_on(scene, kin, fixture.box);
  }
  return total;
}

}  // namespace

const ObservationSlice& ObservationLayout::find(std::string_view name) const {
  for (const auto& s : slices) {
    if (s.name == name) return s;
  }
  throw LookupError("observation: no slice named '" + std::string(name) + "'");
}

ObservationLayout observation_layout(const TaskSpec& spec) {
  const int fingers = spec.finger_count;
  const int joints = fingers * 2;
  LayoutBuilder b;
  b.add("joint_positions", joints);
  b.add("joint_velocities", joints);
  b.add("base_pose", 6);
  b.add("base_velocity", 6);
  b.add("palm_position", 3);
  b.add("fingertip_positions", 3 * fingers);
  b.add("wrist_position", 3);
  add_object_slices(b, "grasp_block", true);
  b.add("lift_goal.rel_block", 3);
  switch (spec.kind) {
    case TaskKind::grasp:
      break;
    case TaskKind::push:
      add_object_slices(b, "push_block", false);
      b.add("goal.position", 3);
      b.add("goal.yaw", 1);
      b.add("goal.rel_object", 3);
      break;
    case TaskKind::press:
      b.add("goal.position", 3);
      b.add("goal.rel_wrist", 3);
      b.add("goal.rel_manipulators", 3);
      break;
    case TaskKind::twist:
      b.add("knob.position", 3);
      b.add("knob.rel_wrist", 3);
      b.add("articulation_positions", 1);
      b.add("knob.progress", 1);
      break;
    case TaskKind::drawer:
      b.add("handle.position", 3);
      b.add("handle.rel_wrist", 3);
      b.add("articulation_positions", 1);
      break;
    case TaskKind::two_pick:
      add_object_slices(b, "second_block", true);
      b.add("goal.position", 3);
      b.add("goal.rel_object", 3);
      break;
  }
  b.add("active_one_hot", fingers);
  b.add("phase", 1);
  return b.take();
}

std::vector<double> observe(const Scene& scene, const TaskSpec& spec, const FingerConfiguration& config) {
  const auto& st = scene.state;
  const auto& g = scene.geometry;
  const HandKinematics kin = sandbox::forward_kinematics(g.hand, st);
  const Vec3 wrist = st.hand_base_pose.position;

  std::vector<double> out;
  out.reserve(128);
  out.insert(out.end(), st.joint_angles.begin(), st.joint_angles.end());
  out.insert(out.end(), st.joint_velocities.begin(), st.joint_velocities.end());
  const Pose6& b = st.hand_base_pose;
  out.insert(out.end(), {b.position.x(), b.position.y(), b.position.z(), b.yaw, b.pitch, b.roll});
  for (int i = 0; i < 6; ++i) out.push_back(st.base_velocity[i]);
  push3(out, kin.palm);
  for (const auto& tip : kin.fingertips) push3(out, tip);
  push3(out, wrist);
  push_object(out, scene, kGraspBlock, wrist, true);
  push3(out, g.sites.at(kLiftGoalSite).position - st.object_poses[kGraspBlock].position);

  switch (spec.kind) {
    case TaskKind::grasp:
      break;
    case TaskKind::push: {
      push_object(out, scene, kSecondObject, wrist, false);
      const Pose4& goal = g.sites.at(kTaskGoalSite);
      push3(out, goal.position);
      out.push_back(goal.yaw);
      push3(out, goal.position - st.object_poses[kSecondObject].position);
      break;
    }
    case TaskKind::press: {
      const Vec3& goal = g.sites.at(kTaskGoalSite).position;
      push3(out, goal);
      push3(out, goal - wrist);
      Vec3 centroid = Vec3::Zero();
      const auto& j = config.manipulating();
      for (int f : j) centroid += kin.fingertips[static_cast<std::size_t>(f)];
      if (!j.empty()) centroid /= static_cast<double>(j.size());
      push3(out, goal - centroid);
      break;
    }
    case TaskKind::twist: {
      const Vec3& knob = g.articulations.at(0).base.position;
      push3(out, knob);
      push3(out, knob - wrist);
      out.push_back(st.articulation_positions.at(0));
      out.push_back(knob_progress(scene));
      break;
    }
    case TaskKind::drawer: {
      const Vec3 handle = g.articulations.at(0).handle_box(st.articulation_positions.at(0)).pose.position;
      push3(out, handle);
      push3(out, handle - wrist);
      out.push_back(st.articulation_positions.at(0));
      break;
    }
    case TaskKind::two_pick: {
      push_object(out, scene, kSecondObject, wrist, true);
      const Vec3& goal = g.sites.at(kTaskGoalSite).position;
      push3(out, goal);
      push3(out, goal - st.object_poses[kSecondObject].position);
      break;
    }
  }
  std::vector<double> hot(static_cast<std::size_t>(spec.finger_count), 0.0);
  for (int f : config.holding()) hot.at(static_cast<std::size_t>(f)) = 1.0;
  out.insert(out.end(), hot.begin(), hot.end());
  out.push_back(static_cast<double>(st.step_index) / spec.horizon);
  return out;
}

bool is_grasped(const Scene& scene, const std::vector<int>& holding, double radius) {
  const auto& g = scene.geometry;
  const YawBox block = sandbox::object_box(g, scene.state, kGraspBlock);
  if (!(block.bottom() > g.table_top() + 1e-6)) return false;
  const HandKinematics kin = sandbox::forward_kinematics(g.hand, scene.state);
  for (int f : holding) {
    if (!((kin.fingertips.at(static_cast<std::size_t>(f)) - block.pose.position).norm() <= radius)) {
      return false;
    }
  }
  return true;
}

bool objective_met(const Scene& scene, const TaskSpec& spec, const FingerConfiguration& config) {
  const auto& g = scene.geometry;
  const auto& st = scene.state;
  const SuccessCriteria& c = spec.success;
  switch (spec.kind) {
    case TaskKind::grasp:
      return (st.object_poses[kGraspBlock].position - g.sites.at(kLiftGoalSite).position).norm() <
             c.lift_tolerance;
    case TaskKind::push: {
      const Pose4& goal = g.sites.at(kTaskGoalSite);
      const Pose4& block = st.object_poses.at(kSecondObject);
      return (block.position - goal.position).norm() < c.push_tolerance &&
             std::abs(wrap_angle(block.yaw - goal.yaw)) < c.push_angle_tolerance;
    }
    case TaskKind::press: {
      const HandKinematics kin = sandbox::forward_kinematics(g.hand, st);
      if (hand_touches_guard(scene, kin)) return false;
      const Vec3& goal = g.sites.at(kTaskGoalSite).position;
      for (int f : config.manipulating()) {
        if ((kin.fingertips.at(static_cast<std::size_t>(f)) - goal).norm() < c.press_tolerance) {
          return true;
        }
      }
      return false;
    }
    case TaskKind::twist:
      return knob_progress(scene) > spec.rewards.twist.theta_succ;
    case TaskKind::drawer:
      return st.articulation_positions.at(0) > spec.rewards.drawer.q_target &&
             st.articulation_static_steps.at(0) >= c.drawer_static_steps;
    case TaskKind::two_pick:
      return (st.object_poses.at(kSecondObject).position - g.sites.at(kTaskGoalSite).position)
                 .norm() < c.second_lift_tolerance;
  }
  return false;
}

bool subtask_success(const Scene& scene, const TaskSpec& spec, const FingerConfiguration& config) {
  return objective_met(scene, spec, config) &&
         is_grasped(scene, config.holding(), spec.success.grasp_hold_radius);
}

reward::RewardInputs reward_inputs(const Scene& previous, const Scene& scene, const TaskSpec& spec,
                                   const FingerConfiguration& config) {
  const auto& g = scene.geometry;
  const auto& st = scene.state;
  const HandKinematics kin = sandbox::forward_kinematics(g.hand, st);
  const YawBox block = sandbox::object_box(g, st, kGraspBlock);
  const double r_tip = g.hand.fingertip_radius;

  reward::RewardInputs in;
  if (config.palm_active()) in.holding_distances.push_back(palm_gap(scene, kin, block));
  const auto held = tip_gaps(scene, kin, block, config.holding());
  in.holding_distances.insert(in.holding_distances.end(), held.begin(), held.end());
  for (int f : config.manipulating()) {
    in.interference_forces.push_back(
        sphere_force(scene, block, kin.fingertips[static_cast<std::size_t>(f)], r_tip));
  }
  for (int i = 0; i < 6; ++i) in.joint_velocities.push_back(st.base_velocity[i]);
  in.joint_velocities.insert(in.joint_velocities.end(), st.joint_velocities.begin(),
                             st.joint_velocities.end());
  in.collision_force = table_force(scene, kin);

  if (config.role == fingers::Role::grasping) {
    in.reach_distance = palm_gap(scene, kin, block);
    in.lift_distance = (block.pose.position - g.sites.at(kLiftGoalSite).position).norm();
    in.manipulator_distances = tip_gaps(scene, kin, block, config.manipulating());
    return in;
  }

  switch (spec.kind) {
    case TaskKind::grasp:
      throw ConfigError("reward inputs: grasp task needs a configuration in the grasping role");
    case TaskKind::push: {
      const YawBox target = sandbox::object_box(g, st, kSecondObject);
      const Pose4& goal = g.sites.at(kTaskGoalSite);
      in.reach_distance = palm_gap(scene, kin, target);
      in.manipulator_distances = tip_gaps(scene, kin, target, config.manipulating());
      in.place_distance = (target.pose.position - goal.position).norm();
      in.rotation_error = std::abs(wrap_angle(target.pose.yaw - goal.yaw));
      break;
    }
    case TaskKind::press: {
      const Vec3& goal = g.sites.at(kTaskGoalSite).position;
      for (int f : config.manipulating()) {
        in.manipulator_distances.push_back((kin.fingertips[static_cast<std::size_t>(f)] - goal).norm());
      }
      in.collision_force += guard_force(scene, kin);
      break;
    }
    case TaskKind::twist: {
      const YawBox handle = g.articulations.at(0).handle_box(st.articulation_positions.at(0));
      in.reach_distance = palm_gap(scene, kin, handle);
      in.manipulator_distances = tip_gaps(scene, kin, handle, config.manipulating());
      in.accumulated_rotation = knob_progress(scene);
      in.rotation_velocity = (knob_progress(scene) - knob_progress(previous)) / spec.physics.dt;
      break;
    }
    case TaskKind::drawer: {
      const YawBox handle = g.articulations.at(0).handle_box(st.articulation_positions.at(0));
      in.reach_distance = palm_gap(scene, kin, handle);
      in.manipulator_distances = tip_gaps(scene, kin, handle, config.manipulating());
      in.articulation_position = st.articulation_positions.at(0);
      break;
    }
    case TaskKind::two_pick: {
      const YawBox second = sandbox::object_box(g, st, kSecondObject);
      in.reach_distance = palm_gap(scene, kin, second);
      in.manipulator_distances = tip_gaps(scene, kin, second, config.manipulating());
      in.place_distance = (second.pose.position - g.sites.at(kTaskGoalSite).position).norm();
      in.height = second.pose.position.z();
      in.initial_height = g.rest_height(kSecondObject);
      break;
    }
  }
  return in;
}

}  // namespace dexseq::tasks
