#include "dexseq/sandbox/kinematics.hpp"

#include <string>

#include "dexseq/errors.hpp"

namespace dexseq::sandbox {

HandKinematics forward_kinematics(const HandModel& model, const Pose6& base,
                                  const std::vector<double>& joint_angles) {
  if (static_cast<int>(joint_angles.size()) != model.joint_count()) {
    throw ConfigError("forward_kinematics: expected " + std::to_string(model.joint_count()) +
                      " joint angles, got " + std::to_string(joint_angles.size()));
  }
  if (static_cast<int>(model.mounts.size()) != model.finger_count) {
    throw ConfigError("forward_kinematics: mount count does not match finger count");
  }
  const Mat3 r_base = base.rotation();
  HandKinematics out;
  out.palm = base.position + r_base * model.palm_offset;
  out.fingertips.reserve(static_cast<std::size_t>(model.finger_count));
  for (int f = 0; f < model.finger_count; ++f) {
    const FingerMount& mount = model.mounts[static_cast<std::size_t>(f)];
    double angle = 0.0;
    Vec3 local = Vec3::Zero();  // planar chain in the mount frame
    for (int l = 0; l < model.links_per_finger; ++l) {
      angle += joint_angles[static_cast<std::size_t>(model.joint_index(f, l))];
      const double len = model.link_lengths[static_cast<std::size_t>(l)];
      local += Vec3(len * std::cos(angle), len * std::sin(angle), 0.0);
    }
    const Mat3 r_mount = Eigen::AngleAxisd(mount.roll, Vec3::UnitX()).toRotationMatrix();
    out.fingertips.push_back(base.position + r_base * (mount.base_offset + r_mount * local));
  }
  return out;
}

}  // namespace dexseq::sandbox
