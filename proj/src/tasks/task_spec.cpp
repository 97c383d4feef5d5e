#include "dexseq/tasks/task_spec.hpp"

#include <string>

#include "dexseq/errors.hpp"

namespace dexseq::tasks {

void TaskSpec::validate() const {
  if (horizon <= 0) throw ConfigError("task: horizon must be positive");
  if (finger_count < 1) throw ConfigError("task: finger_count must be positive");
  const SceneLayout& l = layout;
  if (!(l.lift_height > 0.0)) throw ConfigError("task: lift_height must be positive");
  if (!(l.hole_half_width > 0.0 && l.hole_half_width < l.guard_half_width)) {
    throw ConfigError("task: button hole must fit inside the guard");
  }
  if (!(l.press_depth > 0.0 && l.press_depth < 2.0 * l.guard_half_height)) {
    throw ConfigError("task: press depth must lie within the guard height");
  }
  if (!(l.knob_handle_radius > 0.0)) throw ConfigError("task: knob handle radius must be positive");
  if (!(l.drawer_travel > 0.0)) throw ConfigError("task: drawer travel must be positive");
  if (!(rewards.drawer.q_target > 0.0 && rewards.drawer.q_target <= l.drawer_travel)) {
    throw ConfigError("task: q_target must lie within the drawer travel");
  }
  if (!(rewards.twist.theta_succ > 0.0)) throw ConfigError("task: theta_succ must be positive");
  if (l.twist_direction != 1.0 && l.twist_direction != -1.0) {
    throw ConfigError("task: twist_direction must be +1 or -1");
  }
  if (success.drawer_static_steps < 1) throw ConfigError("task: drawer_static_steps must be >= 1");
  if (physics.grasp_consecutive_steps < 1) {
    throw ConfigError("task: grasp_consecutive_steps must be >= 1");
  }
  if (!(physics.dt > 0.0)) throw ConfigError("task: dt must be positive");
  ranges.validate();
  rewards.validate();
}

TaskSpec TaskCatalog::spec(TaskKind kind) const {
  TaskSpec s;
  s.kind = kind;
  s.horizon = kind == TaskKind::grasp ? grasp_horizon : second_horizon;
  s.finger_count = finger_count;
  s.layout = layout;
  s.success = success;
  s.physics = physics;
  s.ranges = ranges;
  s.rewards = rewards;
  return s;
}

Json to_json(const TaskCatalog& c) {
  Json j = Json::object();
  j["grasp_horizon"] = c.grasp_horizon;
  j["second_horizon"] = c.second_horizon;
  j["finger_count"] = c.finger_count;
  j["layout"] = fields_to_json(c.layout);
  j["success"] = fields_to_json(c.success);
  j["physics"] = fields_to_json(c.physics);
  j["randomization"] = fields_to_json(c.ranges);
  j["rewards"] = reward::to_json(c.rewards);
  return j;
}

TaskCatalog task_catalog_from_json(const Json& j, const std::string& path) {
  require_known_keys(j,
                     {"grasp_horizon", "second_horizon", "finger_count", "layout", "success",
                      "physics", "randomization", "rewards"},
                     path);
  TaskCatalog c;
  if (auto it = j.find("grasp_horizon"); it != j.end()) {
    detail::field_from_json(*it, c.grasp_horizon, join_path(path, "grasp_horizon"));
  }
  if (auto it = j.find("second_horizon"); it != j.end()) {
    detail::field_from_json(*it, c.second_horizon, join_path(path, "second_horizon"));
  }
  if (auto it = j.find("finger_count"); it != j.end()) {
    detail::field_from_json(*it, c.finger_count, join_path(path, "finger_count"));
  }
  if (auto it = j.find("layout"); it != j.end()) fields_from_json(*it, c.layout, join_path(path, "layout"));
  if (auto it = j.find("success"); it != j.end()) {
    fields_from_json(*it, c.success, join_path(path, "success"));
  }
  if (auto it = j.find("physics"); it != j.end()) {
    fields_from_json(*it, c.physics, join_path(path, "physics"));
  }
  if (auto it = j.find("randomization"); it != j.end()) {
    fields_from_json(*it, c.ranges, join_path(path, "randomization"));
  }
  if (auto it = j.find("rewards"); it != j.end()) {
    c.rewards = reward::reward_params_from_json(*it, join_path(path, "rewards"));
  }
  for (TaskKind k : kAllTaskKinds) c.spec(k).validate();
  return c;
}

sandbox::StepParams step_params_for(const TaskSpec& spec, const fingers::FingerConfiguration& config,
                                    bool grasp_phase) {
  const PhysicsSettings& ph = spec.physics;
  sandbox::StepParams p;
  p.dt = ph.dt;
  p.max_translation_delta = ph.max_translation_delta;
  p.max_rotation_delta = ph.max_rotation_delta;
  p.max_joint_delta = ph.max_joint_delta;
  p.tracking_gain = ph.tracking_gain;
  p.push_threshold = ph.push_threshold;
  p.push_gain = ph.push_gain;
  p.push_step_cap = ph.push_step_cap;
  p.static_tolerance = ph.static_tolerance;
  p.manipulator_fingers = config.manipulating();

  sandbox::GraspRule hold;
  hold.object = kGraspBlock;
  hold.fingers = config.holding();
  hold.include_palm = grasp_phase && config.include_palm_in_active;
  hold.capture_distance = spec.rewards.grasp.alpha_g;
  hold.release_radius = spec.success.grasp_hold_radius;
  hold.consecutive_steps = ph.grasp_consecutive_steps;
  p.grasp_rules.push_back(hold);

  if (!grasp_phase && spec.kind == TaskKind::two_pick) {
    sandbox::GraspRule second;
    second.object = kSecondObject;
    second.fingers = config.manipulating();
    second.include_palm = false;
    second.capture_distance = spec.rewards.two_pick.alpha_p;
    second.release_radius = spec.rewards.two_pick.alpha_g;
    second.consecutive_steps = ph.grasp_consecutive_steps;
    p.grasp_rules.push_back(second);
  }
  return p;
}

}  // namespace dexseq::tasks
