#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dexseq/fingers/finger_config.hpp"
#include "dexseq/reward/reward.hpp"
#include "dexseq/sandbox/scene.hpp"
#include "dexseq/tasks/task_spec.hpp"

namespace dexseq::tasks {

struct ObservationSlice {
  std::string name;
  int offset = 0;
  int length = 0;
};

// Observation vector layout. Every task starts with the same hand and grasp
// block entries:
//   joint_positions, joint_velocities          (2 * joints)
//   base_pose (x y z yaw pitch roll), base_velocity   (6 + 6)
//   palm_position, fingertip_positions, wrist_position (3 + 3F + 3)
//   grasp_block.position, .yaw, .half_extents, .rel_wrist, .attached
//   lift_goal.rel_block
// followed by task entries:
//   push      push_block.position, .yaw, .half_extents, .rel_wrist,
//             goal.position, goal.yaw, goal.rel_object
//   press     goal.position, goal.rel_wrist, goal.rel_manipulators (centroid)
//   twist     knob.position, knob.rel_wrist, articulation_positions, knob.progress
//   drawer    handle.position, handle.rel_wrist, articulation_positions
//   two-pick  second_block.position, .yaw, .half_extents, .rel_wrist,
//             .attached, goal.position, goal.rel_object
// and closing with active_one_hot (F) and phase (step / horizon).
// Relative vectors are target minus reference.
struct ObservationLayout {
  std::vector<ObservationSlice> slices;
  int size = 0;

  // Throws LookupError for unknown names.
  const ObservationSlice& find(std::string_view name) const;
};

ObservationLayout observation_layout(const TaskSpec& spec);

std::vector<double> observe(const sandbox::Scene& scene, const TaskSpec& spec,
                            const fingers::FingerConfiguration& config);

// True when the grasp block's bottom is above the table and every listed
// fingertip is within `radius` of its center.
bool is_grasped(const sandbox::Scene& scene, const std::vector<int>& holding, double radius = 0.07);

// Objective of `spec.kind` alone, without the hold requirement.
bool objective_met(const sandbox::Scene& scene, const TaskSpec& spec,
                   const fingers::FingerConfiguration& config);

// Objective plus is_grasped with the configuration's holding fingers.
bool subtask_success(const sandbox::Scene& scene, const TaskSpec& spec,
                     const fingers::FingerConfiguration& config);

// Reward inputs at `scene`, reached from `previous` in one step. The
// configuration's role decides which reward the inputs feed: grasping role
// for the grasp reward, manipulation role for the task reward.
reward::RewardInputs reward_inputs(const sandbox::Scene& previous, const sandbox::Scene& scene,
                                   const TaskSpec& spec, const fingers::FingerConfiguration& config);

}  // namespace dexseq::tasks
