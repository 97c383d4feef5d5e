#pragma once

#include <vector>

#include "dexseq/geometry.hpp"

namespace dexseq::sandbox {

// Where a finger attaches to the hand. The finger's flexion joints rotate
// about the mount's local z axis; the chain extends along local x. The mount
// frame is the hand frame rolled by `roll` about the hand x axis.
struct FingerMount {
  Vec3 base_offset = Vec3::Zero();
  double roll = 0.0;

  bool operator==(const FingerMount&) const = default;
};

struct JointLimits {
  double lower = -0.5;
  double upper = 1.6;

  bool operator==(const JointLimits&) const = default;
};

// Kinematic hand: a spherical palm plus `finger_count` planar serial chains
// ending in spherical fingertips. The base carries six actuated values.
struct HandModel {
  static constexpr int kBaseDof = 6;

  int finger_count = 4;
  int links_per_finger = 2;
  std::vector<double> link_lengths{0.04, 0.03};
  double fingertip_radius = 0.01;
  double palm_radius = 0.02;
  Vec3 palm_offset = Vec3::Zero();
  std::vector<FingerMount> mounts;
  JointLimits joint_limits;

  int joint_count() const { return finger_count * links_per_finger; }
  int action_dim() const { return kBaseDof + joint_count(); }
  int joint_index(int finger, int link) const { return finger * links_per_finger + link; }

  // Throws ConfigError when an invariant is violated.
  void validate() const;

  bool operator==(const HandModel&) const = default;
};

// Fingers spaced evenly on a ring of `ring_radius` around the hand x axis,
// each flexing toward that axis.
HandModel make_ring_hand(int finger_count = 4, double ring_radius = 0.032,
                         std::vector<double> link_lengths = {0.04, 0.03});

}  // namespace dexseq::sandbox
