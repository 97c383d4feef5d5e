#pragma once

#include <vector>

#include "dexseq/sandbox/hand_model.hpp"
#include "dexseq/sandbox/scene.hpp"

namespace dexseq::sandbox {

struct HandKinematics {
  Vec3 palm = Vec3::Zero();
  std::vector<Vec3> fingertips;
};

// Palm and fingertip sphere centers in the world frame. Throws ConfigError
// when the joint vector does not match the model.
HandKinematics forward_kinematics(const HandModel& model, const Pose6& base,
                                  const std::vector<double>& joint_angles);

inline HandKinematics forward_kinematics(const HandModel& model, const SceneState& state) {
  return forward_kinematics(model, state.hand_base_pose, state.joint_angles);
}

}  // namespace dexseq::sandbox
