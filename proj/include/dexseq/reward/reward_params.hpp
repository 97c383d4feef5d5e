#pragma once

#include <numbers>

#include "dexseq/json_fields.hpp"
#include "dexseq/task_kind.hpp"

namespace dexseq::reward {

// Defaults below are the published per-task tables. Force thresholds are in
// the sandbox's force-proxy units.

struct GraspRewardParams {
  double w_r = 2.0, w_gr = 2.5, w_l = 40.0, w_a = 7.5, w_ina = 1.0, w_v = 1.5, w_c = 1.0;
  double lambda_r = 5.0, lambda_a = 20.0, lambda_l = 5.0, lambda_c = 0.05;
  double alpha_g = 0.05;
  double beta_ina = 1.5, beta_c = 1.0;

  template <class F>
  void visit_fields(F&& f) {
    f("w_r", w_r), f("w_gr", w_gr), f("w_l", w_l), f("w_a", w_a), f("w_ina", w_ina);
    f("w_v", w_v), f("w_c", w_c), f("lambda_r", lambda_r), f("lambda_a", lambda_a);
    f("lambda_l", lambda_l), f("lambda_c", lambda_c), f("alpha_g", alpha_g);
    f("beta_ina", beta_ina), f("beta_c", beta_c);
  }
};

struct PushRewardParams {
  double w_gs = 7.5, w_r = 3.0, w_pp = 3.0, w_p = 20.0, w_theta = 5.0, w_int = 1.0, w_v = 0.1,
         w_c = 1.0;
  double lambda_gs = 20.0, lambda_r = 5.0, lambda_pp = 5.0, lambda_theta = 5.0, lambda_c = 0.05;
  double beta_int = 1.0;
  double epsilon = 0.01;
  double beta_c = 4.0;
  double d_0 = 0.4;

  template <class F>
  void visit_fields(F&& f) {
    f("w_gs", w_gs), f("w_r", w_r), f("w_pp", w_pp), f("w_p", w_p), f("w_theta", w_theta);
    f("w_int", w_int), f("w_v", w_v), f("w_c", w_c), f("lambda_gs", lambda_gs);
    f("lambda_r", lambda_r), f("lambda_pp", lambda_pp), f("lambda_theta", lambda_theta);
    f("lambda_c", lambda_c), f("beta_int", beta_int), f("epsilon", epsilon), f("beta_c", beta_c);
    f("d_0", d_0);
  }
};

struct PressRewardParams {
  double w_gs = 2.0, w_r = 7.5, w_int = 1.0, w_v = 0.1, w_c = 1.0;
  double lambda_gs = 20.0, lambda_r = 5.0, lambda_c = 0.05;
  double beta_int = 1.0;

  template <class F>
  void visit_fields(F&& f) {
    f("w_gs", w_gs), f("w_r", w_r), f("w_int", w_int), f("w_v", w_v), f("w_c", w_c);
    f("lambda_gs", lambda_gs), f("lambda_r", lambda_r), f("lambda_c", lambda_c);
    f("beta_int", beta_int);
  }
};

struct TwistRewardParams {
  double w_gs = 7.5, w_r = 3.0, w_fr = 7.5, w_vel = 3.0, w_m = 10.0, w_int = 1.0, w_v = 0.05,
         w_c = 2.0;
  double lambda_gs = 20.0, lambda_r = 5.0, lambda_fr = 10.0, lambda_vel = 5.0, lambda_c = 0.05;
  double beta_int = 1.0;
  double theta_succ = 4.0 * std::numbers::pi / 3.0;
  double beta_c = 5.0;

  template <class F>
  void visit_fields(F&& f) {
    f("w_gs", w_gs), f("w_r", w_r), f("w_fr", w_fr), f("w_vel", w_vel), f("w_m", w_m);
    f("w_int", w_int), f("w_v", w_v), f("w_c", w_c), f("lambda_gs", lambda_gs);
    f("lambda_r", lambda_r), f("lambda_fr", lambda_fr), f("lambda_vel", lambda_vel);
    f("lambda_c", lambda_c), f("beta_int", beta_int), f("theta_succ", theta_succ);
    f("beta_c", beta_c);
  }
};

struct DrawerRewardParams {
  double w_gs = 5.0, w_r = 1.0, w_fr = 5.0, w_o = 15.0, w_int = 1.0, w_v = 0.1, w_c = 3.0;
  double lambda_gs = 20.0, lambda_r = 5.0, lambda_fr = 5.0, lambda_c = 0.05;
  double beta_int = 1.0;
  double q_target = 0.12;
  // Reach terms saturate once the drawer moves past these openings.
  double reach_override_q = 0.005;
  double open_override_fraction = 0.6;

  template <class F>
  void visit_fields(F&& f) {
    f("w_gs", w_gs), f("w_r", w_r), f("w_fr", w_fr), f("w_o", w_o), f("w_int", w_int);
    f("w_v", w_v), f("w_c", w_c), f("lambda_gs", lambda_gs), f("lambda_r", lambda_r);
    f("lambda_fr", lambda_fr), f("lambda_c", lambda_c), f("beta_int", beta_int);
    f("q_target", q_target), f("reach_override_q", reach_override_q);
    f("open_override_fraction", open_override_fraction);
  }
};

struct TwoPickRewardParams {
  double w_gs = 7.5, w_r = 3.0, w_fd = 7.5, w_sg = 2.5, w_h = 20.0, w_p = 30.0, w_int = 1.0,
         w_v = 0.05, w_c = 0.2;
  double lambda_gs = 20.0, lambda_r = 5.0, lambda_fd = 20.0, lambda_p = 5.0, lambda_c = 0.05;
  double alpha_g = 0.07, alpha_p = 0.05;
  double h_max = 0.1;
  double beta_int = 1.0;
  double palm_weight = 2.0;

  template <class F>
  void visit_fields(F&& f) {
    f("w_gs", w_gs), f("w_r", w_r), f("w_fd", w_fd), f("w_sg", w_sg), f("w_h", w_h);
    f("w_p", w_p), f("w_int", w_int), f("w_v", w_v), f("w_c", w_c), f("lambda_gs", lambda_gs);
    f("lambda_r", lambda_r), f("lambda_fd", lambda_fd), f("lambda_p", lambda_p);
    f("lambda_c", lambda_c), f("alpha_g", alpha_g), f("alpha_p", alpha_p), f("h_max", h_max);
    f("beta_int", beta_int), f("palm_weight", palm_weight);
  }
};

struct RewardParams {
  GraspRewardParams grasp;
  PushRewardParams push;
  PressRewardParams press;
  TwistRewardParams twist;
  DrawerRewardParams drawer;
  TwoPickRewardParams two_pick;

  // Throws ConfigError when a scale is not positive, a cap is negative or a
  // contact threshold is not positive.
  void validate() const;
};

Json to_json(const RewardParams& params);
// Strict: unknown tasks or keys raise SchemaError.
RewardParams reward_params_from_json(const Json& j, const std::string& path = "rewards");

}  // namespace dexseq::reward
