#pragma once

#include <span>
#include <vector>

#include "dexseq/sandbox/scene.hpp"

namespace dexseq::sandbox {

// Attaches `object` once every listed fingertip (and the palm when
// `include_palm`) stays within `capture_distance` of the object surface for
// `consecutive_steps` steps. Releases it as soon as any listed fingertip is
// farther than `release_radius` from the object center.
struct GraspRule {
  int object = 0;
  std::vector<int> fingers;
  bool include_palm = false;
  double capture_distance = 0.05;
  double release_radius = 0.07;
  int consecutive_steps = 3;

  bool operator==(const GraspRule&) const = default;
};

struct StepParams {
  double dt = 0.05;
  double max_translation_delta = 0.01;
  double max_rotation_delta = 0.05;
  double max_joint_delta = 0.1;
  // First-order tracking: actual += gain * (target - actual).
  double tracking_gain = 0.6;
  // Quasi-static pushing: displacement = gain / mass_scale * (|F| - threshold),
  // capped at push_step_cap, whenever |F| exceeds threshold * friction / 0.3.
  double push_threshold = 0.05;
  double push_gain = 0.01;
  double push_step_cap = 0.01;
  // Articulation considered static when |dq| stays below this.
  double static_tolerance = 1e-4;
  std::vector<GraspRule> grasp_rules;
  // Fingertips allowed to drive a drawer handle.
  std::vector<int> manipulator_fingers;

  bool operator==(const StepParams&) const = default;
};

// Clamped delta-command layout: [x, y, z, yaw, pitch, roll, joints...].
int action_dim(const SceneGeometry& geometry);

// Quasi-static displacement magnitude for a net horizontal force.
double quasi_static_displacement(double force, const ObjectGeometry& object,
                                 const StepParams& params);

// Advances the scene by one control step. Throws ConfigError on a
// dimension mismatch and InputError on non-finite actions.
SceneState step_scene(const SceneGeometry& geometry, const SceneState& state,
                      std::span<const double> action, const StepParams& params);

}  // namespace dexseq::sandbox
