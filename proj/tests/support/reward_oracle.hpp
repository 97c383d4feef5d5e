#pragma once

// Term-by-term reference evaluation of every reward, written straight from the
// published formulas. Shares only the plain data structs with the library.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "dexseq/reward/reward.hpp"
#include "dexseq/task_kind.hpp"

namespace oracle {

using dexseq::reward::RewardInputs;

inline double mean_exp(const std::vector<double>& d, double lambda) {
  double s = 0.0;
  for (double x : d) s += std::exp(-lambda * x);
  return s / static_cast<double>(d.size());
}

inline double reach(double d, double lambda) { return 1.0 - std::tanh(lambda * d); }

inline double indicator_mean(const std::vector<double>& d, double alpha) {
  int n = 0;
  for (double x : d) n += x < alpha;
  return static_cast<double>(n) / static_cast<double>(d.size());
}

inline double force_penalty(const std::vector<double>& f, double beta) {
  const double total = std::accumulate(f.begin(), f.end(), 0.0);
  return std::min(0.0, std::max(-beta, -total));
}

inline double velocity_pen(const std::vector<double>& v) {
  return -std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

inline double clip(double x, double lo, double hi) { return std::min(hi, std::max(lo, x)); }

inline double grasp(const RewardInputs& in, const dexseq::reward::GraspRewardParams& p) {
  const double r_r = reach(in.reach_distance, p.lambda_r);
  const double r_gr = indicator_mean(in.holding_distances, p.alpha_g);
  const double r_l = reach(in.lift_distance, p.lambda_l);
  const double r_a = mean_exp(in.holding_distances, p.lambda_a);
  const double p_ina = force_penalty(in.interference_forces, p.beta_ina);
  const double p_v = velocity_pen(in.joint_velocities);
  const double p_c = clip(-p.lambda_c * in.collision_force, -p.beta_c, 0.0);
  return p.w_r * r_r + p.w_gr * r_gr + p.w_l * r_l + p.w_a * r_a + p.w_ina * p_ina + p.w_v * p_v +
         p.w_c * p_c;
}

inline double push(const RewardInputs& in, const dexseq::reward::PushRewardParams& p) {
  const double r_gs = mean_exp(in.holding_distances, p.lambda_gs);
  const double r_r = reach(in.reach_distance, p.lambda_r);
  const double r_pp = mean_exp(in.manipulator_distances, p.lambda_pp);
  const double r_p = 1.0 - in.place_distance / p.d_0;
  const double r_theta = std::exp(-p.lambda_theta * in.rotation_error);
  const double p_int = force_penalty(in.interference_forces, p.beta_int);
  const double p_v = velocity_pen(in.joint_velocities);
  const double p_c = -p.beta_c * (in.collision_force > p.epsilon ? 1.0 : 0.0) - p.lambda_c * in.collision_force;
  return p.w_gs * r_gs + p.w_r * r_r + p.w_pp * r_pp + p.w_p * r_p + p.w_theta * r_theta + p.w_int * p_int +
         p.w_v * p_v + p.w_c * p_c;
}

inline double press(const RewardInputs& in, const dexseq::reward::PressRewardParams& p) {
  double closest = in.manipulator_distances[0];
  for (double d : in.manipulator_distances) closest = std::min(closest, d);
  return p.w_gs * mean_exp(in.holding_distances, p.lambda_gs) + p.w_r * reach(closest, p.lambda_r) +
         p.w_int * force_penalty(in.interference_forces, p.beta_int) + p.w_v * velocity_pen(in.joint_velocities) +
         p.w_c * (-p.lambda_c * in.collision_force);
}

inline double twist(const RewardInputs& in, const dexseq::reward::TwistRewardParams& p) {
  const double r_vel = std::tanh(p.lambda_vel * in.rotation_velocity);
  const double r_m = clip(in.accumulated_rotation / p.theta_succ, -1.0, 1.0);
  return p.w_gs * mean_exp(in.holding_distances, p.lambda_gs) + p.w_r * reach(in.reach_distance, p.lambda_r) +
         p.w_fr * mean_exp(in.manipulator_distances, p.lambda_fr) + p.w_vel * r_vel + p.w_m * r_m +
         p.w_int * force_penalty(in.interference_forces, p.beta_int) + p.w_v * velocity_pen(in.joint_velocities) +
         p.w_c * clip(-p.lambda_c * in.collision_force, -5.0, 0.0);
}

inline double drawer(const RewardInputs& in, const dexseq::reward::DrawerRewardParams& p) {
  const double q = in.articulation_position;
  double r_r = reach(in.reach_distance, p.lambda_r);
  double r_fr = 0.0;
  for (double d : in.manipulator_distances) r_fr += reach(d, p.lambda_fr);
  r_fr /= static_cast<double>(in.manipulator_distances.size());
  if (q > p.reach_override_q) r_r = 1.0;
  if (q > p.open_override_fraction * p.q_target) {
    r_r = 1.0;
    r_fr = 1.0;
  }
  return p.w_gs * mean_exp(in.holding_distances, p.lambda_gs) + p.w_r * r_r + p.w_fr * r_fr +
         p.w_o * (q / p.q_target) + p.w_int * force_penalty(in.interference_forces, p.beta_int) +
         p.w_v * velocity_pen(in.joint_velocities) + p.w_c * (-p.lambda_c * in.collision_force);
}

// The palm joins J for the finger-distance term only, weighted twice.
inline double two_pick(const RewardInputs& in, const dexseq::reward::TwoPickRewardParams& p) {
  const double j = static_cast<double>(in.manipulator_distances.size());
  double fd = 2.0 * std::exp(-p.lambda_fd * in.reach_distance);
  for (double d : in.manipulator_distances) fd += std::exp(-p.lambda_fd * d);
  fd /= j + 2.0;
  const double g_m = indicator_mean(in.holding_distances, p.alpha_g);
  const double r_h = clip((in.height - in.initial_height) / p.h_max, 0.0, 1.0) * g_m;
  return p.w_gs * mean_exp(in.holding_distances, p.lambda_gs) + p.w_r * reach(in.reach_distance, p.lambda_r) +
         p.w_fd * fd + p.w_sg * indicator_mean(in.manipulator_distances, p.alpha_p) + p.w_h * r_h +
         p.w_p * reach(in.place_distance, p.lambda_p) + p.w_int * force_penalty(in.interference_forces, p.beta_int) +
         p.w_v * velocity_pen(in.joint_velocities) + p.w_c * (-p.lambda_c * in.collision_force);
}

inline double total(dexseq::TaskKind kind, const RewardInputs& in, const dexseq::reward::RewardParams& p) {
  switch (kind) {
    case dexseq::TaskKind::grasp: return grasp(in, p.grasp);
    case dexseq::TaskKind::push: return push(in, p.push);
    case dexseq::TaskKind::press: return press(in, p.press);
    case dexseq::TaskKind::twist: return twist(in, p.twist);
    case dexseq::TaskKind::drawer: return drawer(in, p.drawer);
    case dexseq::TaskKind::two_pick: return two_pick(in, p.two_pick);
  }
  return 0.0;
}

}  // namespace oracle
