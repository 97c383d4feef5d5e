#include "dexseq/reward/reward.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dexseq/errors.hpp"

namespace dexseq::reward {
namespace {

void check_distances(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw InputError(std::string("reward: non-finite ") + what);
    if (v < 0.0) throw InputError(std::string("reward: negative ") + what);
  }
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InputError(std::string("reward: non-finite ") + what);
}

void check_inputs(const RewardInputs& in) {
  check_distances(in.holding_distances, "holding distance");
  check_distances(in.manipulator_distances, "manipulator distance");
  check_distances(in.interference_forces, "interference force");
  check_distances({&in.reach_distance, 1}, "reach distance");
  check_distances({&in.lift_distance, 1}, "lift distance");
  check_distances({&in.place_distance, 1}, "place distance");
  check_distances({&in.rotation_error, 1}, "rotation error");
  check_distances({&in.collision_force, 1}, "collision force");
  for (double v : in.joint_velocities) check_finite(v, "joint velocity");
  check_finite(in.articulation_position, "articulation position");
  check_finite(in.accumulated_rotation, "accumulated rotation");
  check_finite(in.rotation_velocity, "rotation velocity");
  check_finite(in.height, "height");
  check_finite(in.initial_height, "initial height");
}

void check_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw ConfigError(std::string("reward: ") + what + " has " + std::to_string(got) +
                      " entries, expected " + std::to_string(want));
  }
}

// Second subtasks: the holding set keeps the first object, J works.
void check_reversed(const RewardInputs& in, const fingers::FingerConfiguration& config) {
  if (config.role != fingers::Role::manipulation) {
    throw ConfigError("reward: second-subtask rewards need the reversed finger configuration");
  }
  check_size(in.holding_distances.size(), config.holding().size(), "holding_distances");
  check_size(in.manipulator_distances.size(), config.manipulating().size(),
             "manipulator_distances");
  check_size(in.interference_forces.size(), config.manipulating().size(), "interference_forces");
}

double soft_collision(double force, double scale) { return -scale * force; }

double clipped_collision(double force, double scale, double cap) {
  return std::clamp(-scale * force, -cap, 0.0);
}

double mean_tanh_reach(std::span<const double> distances, double scale) {
  if (distances.empty()) throw ConfigError("reward: empty manipulator set");
  double sum = 0.0;
  for (double d : distances) sum += tanh_reach(d, scale);
  return sum / static_cast<double>(distances.size());
}

}  // namespace

double RewardBreakdown::value(std::string_view name) const {
  for (const auto& t : view()) {
    if (t.name == name) return t.value;
  }
  throw LookupError("reward: no term named " + std::string(name));
}

double active_finger_reward(std::span<const double> distances, double scale) {
  if (distances.empty()) throw ConfigError("active_finger_reward: empty active set");
  check_distances(distances, "active distance");
  double sum = 0.0;
  for (double d : distances) sum += std::exp(-scale * d);
  return sum / static_cast<double>(distances.size());
}

double inactive_finger_penalty(std::span<const double> forces, double cap) {
  check_distances(forces, "inactive force");
  double sum = 0.0;
  for (double f : forces) sum += f;
  return std::clamp(-sum, -cap, 0.0);
}

double tanh_reach(double distance, double scale) { return 1.0 - std::tanh(scale * distance); }

double threshold_fraction(std::span<const double> distances, double threshold) {
  if (distances.empty()) throw ConfigError("threshold_fraction: empty set");
  double hits = 0.0;
  for (double d : distances) hits += d < threshold ? 1.0 : 0.0;
  return hits / static_cast<double>(distances.size());
}

double velocity_penalty(std::span<const double> velocities) {
  double sq = 0.0;
  for (double v : velocities) sq += v * v;
  return -std::sqrt(sq);
}

RewardBreakdown grasp_reward(const RewardInputs& in, const GraspRewardParams& p,
                             const fingers::FingerConfiguration& config) {
  if (config.role != fingers::Role::grasping) {
    throw ConfigError("grasp_reward: configuration is not in the grasping role");
  }
  check_inputs(in);
  check_size(in.holding_distances.size(), config.holding().size() + (config.palm_active() ? 1 : 0),
             "holding_distances");
  check_size(in.interference_forces.size(), config.manipulating().size(), "interference_forces");

  RewardBreakdown r;
  r.add("reach", p.w_r, tanh_reach(in.reach_distance, p.lambda_r));
  r.add("grasp", p.w_gr, threshold_fraction(in.holding_distances, p.alpha_g));
  r.add("lift", p.w_l, tanh_reach(in.lift_distance, p.lambda_l));
  r.add("active", p.w_a, active_finger_reward(in.holding_distances, p.lambda_a));
  r.add("inactive", p.w_ina, inactive_finger_penalty(in.interference_forces, p.beta_ina));
  r.add("velocity", p.w_v, velocity_penalty(in.joint_velocities));
  r.add("collision", p.w_c, clipped_collision(in.collision_force, p.lambda_c, p.beta_c));
  return r;
}

RewardBreakdown push_reward(const RewardInputs& in, const PushRewardParams& p) {
  check_inputs(in);
  RewardBreakdown r;
  r.add("grasp_stability", p.w_gs, active_finger_reward(in.holding_distances, p.lambda_gs));
  r.add("reach", p.w_r, tanh_reach(in.reach_distance, p.lambda_r));
  r.add("push_proximity", p.w_pp, active_finger_reward(in.manipulator_distances, p.lambda_pp));
  r.add("place", p.w_p, 1.0 - in.place_distance / p.d_0);
  r.add("rotation", p.w_theta, std::exp(-p.lambda_theta * in.rotation_error));
  r.add("interference", p.w_int, inactive_finger_penalty(in.interference_forces, p.beta_int));
  r.add("velocity", p.w_v, velocity_penalty(in.joint_velocities));
  const double binary = in.collision_force > p.epsilon ? p.beta_c : 0.0;
  r.add("collision", p.w_c, -binary + soft_collision(in.collision_force, p.lambda_c));
  return r;
}

RewardBreakdown press_reward(const RewardInputs& in, const PressRewardParams& p) {
  check_inputs(in);
  if (in.manipulator_distances.empty()) throw ConfigError("press_reward: empty pressing set");
  RewardBreakdown r;
  r.add("grasp_stability", p.w_gs, active_finger_reward(in.holding_distances, p.lambda_gs));
  const double closest =
      *std::min_element(in.manipulator_distances.begin(), in.manipulator_distances.end());
  r.add("reach", p.w_r, tanh_reach(closest, p.lambda_r));
  r.add("interference", p.w_int, inactive_finger_penalty(in.interference_forces, p.beta_int));
  r.add("velocity", p.w_v, velocity_penalty(in.joint_velocities));
  r.add("collision", p.w_c, soft_collision(in.collision_force, p.lambda_c));
  return r;
}

RewardBreakdown twist_reward(const RewardInputs& in, const TwistRewardParams& p) {
  check_inputs(in);
  RewardBreakdown r;
  r.add("grasp_stability", p.w_gs, active_finger_reward(in.holding_distances, p.lambda_gs));
  r.add("reach", p.w_r, tanh_reach(in.reach_distance, p.lambda_r));
  r.add("fingertip_reach", p.w_fr, active_finger_reward(in.manipulator_distances, p.lambda_fr));
  r.add("rotation_velocity", p.w_vel, std::tanh(p.lambda_vel * in.rotation_velocity));
  r.add("motion", p.w_m, std::clamp(in.accumulated_rotation / p.theta_succ, -1.0, 1.0));
  r.add("interference", p.w_int, inactive_finger_penalty(in.interference_forces, p.beta_int));
  r.add("velocity", p.w_v, velocity_penalty(in.joint_velocities));
  r.add("collision", p.w_c, clipped_collision(in.collision_force, p.lambda_c, p.beta_c));
  return r;
}

RewardBreakdown drawer_reward(const RewardInputs& in, const DrawerRewardParams& p) {
  check_inputs(in);
  const double q = in.articulation_position;
  const bool opening = q > p.reach_override_q;
  const bool mostly_open = q > p.open_override_fraction * p.q_target;
  RewardBreakdown r;
  r.add("grasp_stability", p.w_gs, active_finger_reward(in.holding_distances, p.lambda_gs));
  r.add("reach", p.w_r, opening || mostly_open ? 1.0 : tanh_reach(in.reach_distance, p.lambda_r));
  r.add("finger_reach", p.w_fr,
        mostly_open ? 1.0 : mean_tanh_reach(in.manipulator_distances, p.lambda_fr));
  r.add("open", p.w_o, q / p.q_target);
  r.add("interference", p.w_int, inactive_finger_penalty(in.interference_forces, p.beta_int));
  r.add("velocity", p.w_v, velocity_penalty(in.joint_velocities));
  r.add("collision", p.w_c, soft_collision(in.collision_force, p.lambda_c));
  return r;
}

RewardBreakdown two_pick_reward(const RewardInputs& in, const TwoPickRewardParams& p) {
  check_inputs(in);
  if (in.manipulator_distances.empty()) throw ConfigError("two_pick_reward: empty picking set");
  double contact_sum = p.palm_weight * std::exp(-p.lambda_fd * in.reach_distance);
  for (double d : in.manipulator_distances) contact_sum += std::exp(-p.lambda_fd * d);
  const double finger_distance =
      contact_sum / (static_cast<double>(in.manipulator_distances.size()) + p.palm_weight);
  const double grasp_fraction = threshold_fraction(in.holding_distances, p.alpha_g);
  const double lift = std::clamp((in.height - in.initial_height) / p.h_max, 0.0, 1.0);

  RewardBreakdown r;
  r.add("grasp_stability", p.w_gs, active_finger_reward(in.holding_distances, p.lambda_gs));
  r.add("reach", p.w_r, tanh_reach(in.reach_distance, p.lambda_r));
  r.add("finger_distance", p.w_fd, finger_distance);
  r.add("second_grasp", p.w_sg, threshold_fraction(in.manipulator_distances, p.alpha_p));
  r.add("height", p.w_h, lift * grasp_fraction);
  r.add("place", p.w_p, tanh_reach(in.place_distance, p.lambda_p));
  r.add("interference", p.w_int, inactive_finger_penalty(in.interference_forces, p.beta_int));
  r.add("velocity", p.w_v, velocity_penalty(in.joint_velocities));
  r.add("collision", p.w_c, soft_collision(in.collision_force, p.lambda_c));
  return r;
}

RewardBreakdown subtask_reward(TaskKind task, const RewardInputs& in, const RewardParams& params,
                               const fingers::FingerConfiguration& config) {
  if (task == TaskKind::grasp) {
    throw ConfigError("subtask_reward: grasp is not a second subtask");
  }
  check_reversed(in, config);
  switch (task) {
    case TaskKind::push: return push_reward(in, params.push);
    case TaskKind::press: return press_reward(in, params.press);
    case TaskKind::twist: return twist_reward(in, params.twist);
    case TaskKind::drawer: return drawer_reward(in, params.drawer);
    case TaskKind::two_pick: return two_pick_reward(in, params.two_pick);
    case TaskKind::grasp: break;
  }
  throw ConfigError("subtask_reward: unknown task kind");
}

RewardBreakdown task_reward(TaskKind task, const RewardInputs& in, const RewardParams& params,
                            const fingers::FingerConfiguration& config) {
  if (task == TaskKind::grasp) return grasp_reward(in, params.grasp, config);
  return subtask_reward(task, in, params, config);
}

}  // namespace dexseq::reward
