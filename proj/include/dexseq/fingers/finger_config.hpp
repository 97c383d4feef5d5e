#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dexseq/json_fields.hpp"

namespace dexseq::fingers {

enum class HandPose { top_down, horizontal };

std::string_view to_string(HandPose pose);
HandPose hand_pose_from_string(std::string_view name);

// Which subtask the configuration is currently assigned to. Roles flip
// between the grasp and the second subtask.
enum class Role { grasping, manipulation };

// Finger resource allocation: `active` fingers work on the current objective,
// `inactive` fingers are kept off it. The palm only counts as an active
// contact point while grasping.
struct FingerConfiguration {
  int id = 0;
  std::vector<int> active;
  std::vector<int> inactive;
  bool include_palm_in_active = true;
  HandPose initial_pose = HandPose::top_down;
  Role role = Role::grasping;

  bool palm_active() const { return include_palm_in_active && role == Role::grasping; }
  int finger_count() const { return static_cast<int>(active.size() + inactive.size()); }

  // Fingers that hold the first object (M). Fixed across subtasks.
  const std::vector<int>& holding() const { return role == Role::grasping ? active : inactive; }
  // Fingers reserved for the second objective (J).
  const std::vector<int>& manipulating() const {
    return role == Role::grasping ? inactive : active;
  }

  std::vector<double> active_one_hot() const;

  // Throws ConfigError unless active/inactive partition 0..finger_count-1.
  void validate(int finger_count) const;

  bool operator==(const FingerConfiguration&) const = default;
};

struct FeasibilityEntry {
  std::vector<int> active;
  HandPose pose = HandPose::top_down;
  bool feasible = true;

  bool operator==(const FeasibilityEntry&) const = default;
};

using FeasibilityTable = std::vector<FeasibilityEntry>;

// One pose per 1- and 2-finger subset of a four-finger hand, with the lone
// bottom finger in the horizontal pose marked infeasible.
FeasibilityTable default_feasibility_table();

// All 1- and 2-finger active subsets. Without a table every subset is listed
// once with the top-down pose; with a table, each (subset, pose) pair the
// table marks feasible is listed. Ids are assigned 1.. in enumeration order.
// Throws ConfigError when finger_count < 1 or nothing survives.
std::vector<FingerConfiguration> enumerate_configurations(
    int finger_count, const std::optional<FeasibilityTable>& table);

FingerConfiguration reverse_roles(const FingerConfiguration& config);

// Throws LookupError when the id is absent.
const FingerConfiguration& find_configuration(const std::vector<FingerConfiguration>& configs,
                                              int id);

Json to_json(const FingerConfiguration& config);
FingerConfiguration finger_configuration_from_json(const Json& j, const std::string& path);
Json to_json(const FeasibilityTable& table);
FeasibilityTable feasibility_table_from_json(const Json& j, const std::string& path);

}  // namespace dexseq::fingers
