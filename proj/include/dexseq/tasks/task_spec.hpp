#pragma once

#include <vector>

#include "dexseq/fingers/finger_config.hpp"
#include "dexseq/json_fields.hpp"
#include "dexseq/randomization/randomizer.hpp"
#include "dexseq/reward/reward_params.hpp"
#include "dexseq/sandbox/step.hpp"
#include "dexseq/task_kind.hpp"

namespace dexseq::tasks {

// Object and site indices shared by every task scene.
inline constexpr int kGraspBlock = 0;
inline constexpr int kSecondObject = 1;  // push block or second block
inline constexpr int kLiftGoalSite = 0;
inline constexpr int kTaskGoalSite = 1;

// Nominal placement of every fixture, in meters. Heights are derived from
// the table top unless stated.
struct SceneLayout {
  Vec3 grasp_block_center{0.45, 0.0, 0.0};
  double lift_height = 0.10;

  Vec3 push_block_center{0.60, 0.0, 0.0};
  Vec3 push_block_half_extents{0.025, 0.025, 0.025};
  Vec3 push_goal_center{0.75, 0.0, 0.0};

  Vec3 button_center{0.45, 0.20, 0.0};
  double guard_half_width = 0.06;
  double guard_half_height = 0.03;
  double hole_half_width = 0.02;
  double press_depth = 0.04;

  Vec3 knob_center{0.45, 0.20, 0.0};
  double knob_handle_radius = 0.04;
  double knob_handle_height = 0.05;
  Vec3 knob_handle_half_extents{0.04, 0.008, 0.012};
  double twist_direction = 1.0;

  double cabinet_radius = 0.8;
  Vec3 cabinet_half_extents{0.15, 0.20, 0.15};
  double drawer_handle_height = 0.12;
  Vec3 drawer_handle_half_extents{0.01, 0.05, 0.01};
  double drawer_handle_standoff = 0.02;
  double drawer_travel = 0.25;
  double drawer_capture_radius = 0.02;

  Vec3 second_block_center{0.45, -0.20, 0.0};
  Vec3 second_block_half_extents{0.02, 0.02, 0.02};

  // Initial palm placement relative to the nominal grasp block center.
  Vec3 top_down_offset{0.0, 0.0, 0.15};
  Vec3 horizontal_offset{-0.15, 0.0, 0.036};
  double initial_joint_angle = 0.0;

  template <class F>
  void visit_fields(F&& f) {
    f("grasp_block_center", grasp_block_center), f("lift_height", lift_height);
    f("push_block_center", push_block_center);
    f("push_block_half_extents", push_block_half_extents);
    f("push_goal_center", push_goal_center), f("button_center", button_center);
    f("guard_half_width", guard_half_width), f("guard_half_height", guard_half_height);
    f("hole_half_width", hole_half_width), f("press_depth", press_depth);
    f("knob_center", knob_center), f("knob_handle_radius", knob_handle_radius);
    f("knob_handle_height", knob_handle_height);
    f("knob_handle_half_extents", knob_handle_half_extents);
    f("twist_direction", twist_direction), f("cabinet_radius", cabinet_radius);
    f("cabinet_half_extents", cabinet_half_extents);
    f("drawer_handle_height", drawer_handle_height);
    f("drawer_handle_half_extents", drawer_handle_half_extents);
    f("drawer_handle_standoff", drawer_handle_standoff), f("drawer_travel", drawer_travel);
    f("drawer_capture_radius", drawer_capture_radius);
    f("second_block_center", second_block_center);
    f("second_block_half_extents", second_block_half_extents);
    f("top_down_offset", top_down_offset), f("horizontal_offset", horizontal_offset);
    f("initial_joint_angle", initial_joint_angle);
  }
};

struct SuccessCriteria {
  double grasp_hold_radius = 0.07;
  double lift_tolerance = 0.03;
  double push_tolerance = 0.03;
  double push_angle_tolerance = 0.5;
  double press_tolerance = 0.04;
  int drawer_static_steps = 5;
  double second_lift_tolerance = 0.03;
  // A body counts as off the table when its bottom is this far above it.
  double lift_clearance = 1e-6;

  template <class F>
  void visit_fields(F&& f) {
    f("grasp_hold_radius", grasp_hold_radius), f("lift_tolerance", lift_tolerance);
    f("push_tolerance", push_tolerance), f("push_angle_tolerance", push_angle_tolerance);
    f("press_tolerance", press_tolerance), f("drawer_static_steps", drawer_static_steps);
    f("second_lift_tolerance", second_lift_tolerance), f("lift_clearance", lift_clearance);
  }
};

// Physics settings shared by all tasks; grasp rules are filled in per
// configuration by step_params_for.
struct PhysicsSettings {
  double dt = 0.05;
  double max_translation_delta = 0.01;
  double max_rotation_delta = 0.05;
  double max_joint_delta = 0.1;
  double tracking_gain = 0.6;
  double push_threshold = 0.05;
  double push_gain = 0.01;
  double push_step_cap = 0.01;
  double static_tolerance = 1e-4;
  int grasp_consecutive_steps = 3;
  double stiffness = 100.0;

  template <class F>
  void visit_fields(F&& f) {
    f("dt", dt), f("max_translation_delta", max_translation_delta);
    f("max_rotation_delta", max_rotation_delta), f("max_joint_delta", max_joint_delta);
    f("tracking_gain", tracking_gain), f("push_threshold", push_threshold);
    f("push_gain", push_gain), f("push_step_cap", push_step_cap);
    f("static_tolerance", static_tolerance), f("grasp_consecutive_steps", grasp_consecutive_steps);
    f("stiffness", stiffness);
  }
};

struct TaskSpec {
  TaskKind kind = TaskKind::grasp;
  int horizon = 75;
  int finger_count = 4;
  SceneLayout layout;
  SuccessCriteria success;
  PhysicsSettings physics;
  randomization::RandomizationRanges ranges;
  reward::RewardParams rewards;

  // Throws ConfigError when the horizon is not positive or the fixture
  // dimensions cannot host the goal (e.g. a press goal below the table).
  void validate() const;
};

// Shared settings for all task kinds; individual specs are derived from it.
struct TaskCatalog {
  int grasp_horizon = 75;
  int second_horizon = 100;
  int finger_count = 4;
  SceneLayout layout;
  SuccessCriteria success;
  PhysicsSettings physics;
  randomization::RandomizationRanges ranges;
  reward::RewardParams rewards;

  TaskSpec spec(TaskKind kind) const;
};

Json to_json(const TaskCatalog& catalog);
// Strict load rooted at `path`.
TaskCatalog task_catalog_from_json(const Json& j, const std::string& path = "tasks");

inline TaskSpec default_task_spec(TaskKind kind) { return TaskCatalog{}.spec(kind); }

// Step parameters for `config`. In the grasp phase the holding fingers (and
// palm when active) capture the grasp block. In the second phase the hold is
// kept without the palm, and for two-pick the manipulating fingers can
// capture the second block.
sandbox::StepParams step_params_for(const TaskSpec& spec, const fingers::FingerConfiguration& config,
                                    bool grasp_phase);

}  // namespace dexseq::tasks
