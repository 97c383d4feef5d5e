#pragma once

#include "dexseq/fingers/finger_config.hpp"
#include "dexseq/randomization/randomizer.hpp"
#include "dexseq/sandbox/scene.hpp"
#include "dexseq/tasks/task_spec.hpp"

namespace dexseq::tasks {

// Geometry for `spec.kind` placed according to `draw`:
//   objects   grasp block, then the push block or second block
//   fixtures  button guard walls, knob stand or cabinet body
//   sites     lift goal, then the task goal (push goal pose, press goal
//             point, second block lift goal)
// Throws InputError when the draw lies outside its stage ranges.
sandbox::SceneGeometry build_geometry(const TaskSpec& spec, const randomization::RandomizationDraw& draw);

// Initial hand pose for a configuration, relative to the nominal block spot.
Pose6 initial_hand_pose(const TaskSpec& spec, fingers::HandPose pose);

// Fresh episode: hand at its initial pose, objects at rest. Deterministic in
// (spec, draw, config).
sandbox::Scene build_scene(const TaskSpec& spec, const randomization::RandomizationDraw& draw,
                           const fingers::FingerConfiguration& config);

// Second-subtask episode that continues from a grasp terminal scene: the hand,
// grasp block and its attachment are copied, the task fixtures come from
// `draw`. The grasp block keeps its size and physical properties.
sandbox::Scene build_second_scene(const TaskSpec& spec, const randomization::RandomizationDraw& draw,
                                  const sandbox::Scene& terminal);

}  // namespace dexseq::tasks
