#include "dexseq/sandbox/hand_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dexseq/errors.hpp"

namespace dexseq::sandbox {

void HandModel::validate() const {
  if (finger_count < 1) throw ConfigError("hand: finger_count must be >= 1");
  if (links_per_finger < 1) throw ConfigError("hand: links_per_finger must be >= 1");
  if (static_cast<int>(link_lengths.size()) != links_per_finger) {
    throw ConfigError("hand: expected " + std::to_string(links_per_finger) + " link lengths, got " +
                      std::to_string(link_lengths.size()));
  }
  for (double l : link_lengths) {
    if (!(l > 0.0)) throw ConfigError("hand: link lengths must be positive");
  }
  if (!(fingertip_radius > 0.0)) throw ConfigError("hand: fingertip_radius must be positive");
  if (!(palm_radius > 0.0)) throw ConfigError("hand: palm_radius must be positive");
  if (static_cast<int>(mounts.size()) != finger_count) {
    throw ConfigError("hand: expected one mount per finger");
  }
  if (!(joint_limits.lower <= joint_limits.upper)) throw ConfigError("hand: empty joint limits");
}

HandModel make_ring_hand(int finger_count, double ring_radius, std::vector<double> link_lengths) {
  HandModel h;
  h.finger_count = finger_count;
  h.links_per_finger = static_cast<int>(link_lengths.size());
  h.link_lengths = std::move(link_lengths);
  h.mounts.clear();
  for (int i = 0; i < finger_count; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / finger_count;
    FingerMount m;
    m.base_offset = Vec3(0.0, ring_radius * std::cos(phi), ring_radius * std::sin(phi));
    // Local y points back toward the hand axis, so positive flexion curls inward.
    m.roll = phi + std::numbers::pi;
    if (finger_count == 1) {
      m.base_offset.setZero();
      m.roll = 0.0;
    }
    h.mounts.push_back(m);
  }
  h.validate();
  return h;
}

}  // namespace dexseq::sandbox
