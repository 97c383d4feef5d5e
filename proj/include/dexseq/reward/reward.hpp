#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "dexseq/fingers/finger_config.hpp"
#include "dexseq/reward/reward_params.hpp"
#include "dexseq/task_kind.hpp"

namespace dexseq::reward {

// Per-step quantities every reward reads. Sets are named by role so they do
// not change meaning when finger roles flip between subtasks:
//   holding_*      fingers that grasp the first object (M), plus the palm
//                  as the first entry while it is an active contact point
//   manipulator_*  fingers reserved for the second objective (J)
struct RewardInputs {
  std::vector<double> holding_distances;      // d_i
  std::vector<double> manipulator_distances;  // d_j
  std::vector<double> interference_forces;    // f_j, J fingers on the grasped block
  double reach_distance = 0.0;                // d_r, palm to target
  double lift_distance = 0.0;                 // d_l, block to lift goal
  double place_distance = 0.0;                // d_p, object to placement goal
  double rotation_error = 0.0;                // theta, push block vs goal
  double collision_force = 0.0;               // T
  std::vector<double> joint_velocities;       // v_a
  double articulation_position = 0.0;         // q, drawer
  double accumulated_rotation = 0.0;          // knob rotation toward the goal direction
  double rotation_velocity = 0.0;             // knob velocity toward the goal direction
  double height = 0.0;                        // h, second block
  double initial_height = 0.0;                // h_0
};

struct RewardTerm {
  std::string_view name;
  double weight = 0.0;
  double value = 0.0;  // unweighted
};

struct RewardBreakdown {
  std::array<RewardTerm, 9> terms{};
  std::size_t count = 0;
  double total = 0.0;

  void add(std::string_view name, double weight, double value) {
    terms[count++] = RewardTerm{name, weight, value};
    total += weight * value;
  }
  // Throws LookupError for names not in the breakdown.
  double value(std::string_view name) const;
  std::span<const RewardTerm> view() const { return {terms.data(), count}; }
};

// Shared finger-resource terms.

// Mean of exp(-scale * d) over the active contact points. Throws ConfigError
// on an empty set and InputError on negative or non-finite distances.
double active_finger_reward(std::span<const double> distances, double scale);

// clip(-sum f, -cap, 0); zero for an empty set.
double inactive_finger_penalty(std::span<const double> forces, double cap);

// Elementary shapes.
double tanh_reach(double distance, double scale);                       // 1 - tanh(scale d)
double threshold_fraction(std::span<const double> distances, double threshold);  // mean 1(d < t)
double velocity_penalty(std::span<const double> velocities);            // -||v||_2

// Grasp subtask. `config` must be in the grasping role; holding_distances
// carries the palm first when config.palm_active().
RewardBreakdown grasp_reward(const RewardInputs& in, const GraspRewardParams& params,
                             const fingers::FingerConfiguration& config);

// Second subtasks. `config` must be in the manipulation role (reversed).
// Throws ConfigError for TaskKind::grasp or a non-reversed configuration.
RewardBreakdown subtask_reward(TaskKind task, const RewardInputs& in, const RewardParams& params,
                               const fingers::FingerConfiguration& config);

RewardBreakdown push_reward(const RewardInputs& in, const PushRewardParams& p);
RewardBreakdown press_reward(const RewardInputs& in, const PressRewardParams& p);
RewardBreakdown twist_reward(const RewardInputs& in, const TwistRewardParams& p);
RewardBreakdown drawer_reward(const RewardInputs& in, const DrawerRewardParams& p);
RewardBreakdown two_pick_reward(const RewardInputs& in, const TwoPickRewardParams& p);

// Dispatches on the task kind; grasp uses params.grasp.
RewardBreakdown task_reward(TaskKind task, const RewardInputs& in, const RewardParams& params,
                            const fingers::FingerConfiguration& config);

}  // namespace dexseq::reward
