#include "dexseq/fingers/finger_config.hpp"

#include <algorithm>
#include <string>

#include "dexseq/errors.hpp"

namespace dexseq::fingers {

std::string_view to_string(HandPose pose) {
  return pose == HandPose::top_down ? "top-down" : "horizontal";
}

HandPose hand_pose_from_string(std::string_view name) {
  if (name == "top-down") return HandPose::top_down;
  if (name == "horizontal") return HandPose::horizontal;
  throw ConfigError("unknown hand pose '" + std::string(name) + "'");
}

std::vector<double> FingerConfiguration::active_one_hot() const {
  std::vector<double> v(static_cast<std::size_t>(finger_count()), 0.0);
  for (int f : active) v[static_cast<std::size_t>(f)] = 1.0;
  return v;
}

void FingerConfiguration::validate(int count) const {
  std::vector<int> seen(static_cast<std::size_t>(std::max(count, 0)), 0);
  auto mark = [&](const std::vector<int>& set) {
    for (int f : set) {
      if (f < 0 || f >= count) {
        throw ConfigError("finger configuration " + std::to_string(id) + ": finger " +
                          std::to_string(f) + " out of range");
      }
      ++seen[static_cast<std::size_t>(f)];
    }
  };
  mark(active);
  mark(inactive);
  for (int n : seen) {
    if (n != 1) {
      throw ConfigError("finger configuration " + std::to_string(id) +
                        ": active and inactive sets must partition the fingers");
    }
  }
  if (holding().empty() || holding().size() > 2) {
    throw ConfigError("finger configuration " + std::to_string(id) +
                      ": grasping set must hold one or two fingers");
  }
}

FeasibilityTable default_feasibility_table() {
  using enum HandPose;
  // Finger 3 sits below the palm in the horizontal pose; alone it would have
  // to pin the block against the table.
  return {
      {{0}, top_down, true},       {{1}, horizontal, true},    {{2}, top_down, true},
      {{3}, horizontal, false},    {{0, 1}, horizontal, true}, {{0, 2}, top_down, true},
      {{0, 3}, horizontal, true},  {{1, 2}, horizontal, true}, {{1, 3}, top_down, true},
      {{2, 3}, horizontal, true},
  };
}

std::vector<FingerConfiguration> enumerate_configurations(
    int finger_count, const std::optional<FeasibilityTable>& table) {
  if (finger_count < 1) throw ConfigError("enumerate_configurations: finger_count must be >= 1");

  std::vector<std::vector<int>> subsets;
  for (int a = 0; a < finger_count; ++a) subsets.push_back({a});
  for (int a = 0; a < finger_count; ++a) {
    for (int b = a + 1; b < finger_count; ++b) subsets.push_back({a, b});
  }

  auto make = [&](const std::vector<int>& active, HandPose pose) {
    FingerConfiguration c;
    c.active = active;
    for (int f = 0; f < finger_count; ++f) {
      if (std::find(active.begin(), active.end(), f) == active.end()) c.inactive.push_back(f);
    }
    c.initial_pose = pose;
    return c;
  };

  std::vector<FingerConfiguration> out;
  for (const auto& subset : subsets) {
    if (!table) {
      out.push_back(make(subset, HandPose::top_down));
      continue;
    }
    for (HandPose pose : {HandPose::top_down, HandPose::horizontal}) {
      const bool feasible = std::any_of(table->begin(), table->end(), [&](const auto& e) {
        auto sorted = e.active;
        std::sort(sorted.begin(), sorted.end());
        return e.feasible && e.pose == pose && sorted == subset;
      });
      if (feasible) out.push_back(make(subset, pose));
    }
  }
  if (out.empty()) throw ConfigError("enumerate_configurations: no feasible configuration");
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<int>(i) + 1;
  return out;
}

FingerConfiguration reverse_roles(const FingerConfiguration& config) {
  FingerConfiguration r = config;
  std::swap(r.active, r.inactive);
  r.role = config.role == Role::grasping ? Role::manipulation : Role::grasping;
  return r;
}

const FingerConfiguration& find_configuration(const std::vector<FingerConfiguration>& configs,
                                              int id) {
  for (const auto& c : configs) {
    if (c.id == id) return c;
  }
  throw LookupError("no finger configuration with id " + std::to_string(id));
}

namespace {

HandPose pose_field(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  try {
    return hand_pose_from_string(j.get<std::string>());
  } catch (const ConfigError& e) {
    throw SchemaError(path, e.what());
  }
}

}  // namespace

Json to_json(const FingerConfiguration& c) {
  return Json{{"id", c.id},
              {"active", c.active},
              {"inactive", c.inactive},
              {"include_palm", c.include_palm_in_active},
              {"pose", std::string(to_string(c.initial_pose))},
              {"role", c.role == Role::grasping ? "grasping" : "manipulation"}};
}

FingerConfiguration finger_configuration_from_json(const Json& j, const std::string& path) {
  require_known_keys(j, {"id", "active", "inactive", "include_palm", "pose", "role"}, path);
  FingerConfiguration c;
  if (j.contains("id")) detail::field_from_json(j["id"], c.id, join_path(path, "id"));
  if (j.contains("active")) detail::field_from_json(j["active"], c.active, join_path(path, "active"));
  if (j.contains("inactive")) {
    detail::field_from_json(j["inactive"], c.inactive, join_path(path, "inactive"));
  }
  if (j.contains("include_palm")) {
    detail::field_from_json(j["include_palm"], c.include_palm_in_active, join_path(path, "include_palm"));
  }
  if (j.contains("pose")) c.initial_pose = pose_field(j["pose"], join_path(path, "pose"));
  if (j.contains("role")) {
    const Json& r = j["role"];
    if (r == "grasping") {
      c.role = Role::grasping;
    } else if (r == "manipulation") {
      c.role = Role::manipulation;
    } else {
      throw SchemaError(join_path(path, "role"), "expected grasping or manipulation");
    }
  }
  return c;
}

Json to_json(const FeasibilityTable& table) {
  Json out = Json::array();
  for (const auto& e : table) {
    out.push_back(Json{{"active", e.active},
                       {"pose", std::string(to_string(e.pose))},
                       {"feasible", e.feasible}});
  }
  return out;
}

FeasibilityTable feasibility_table_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  FeasibilityTable table;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    require_known_keys(j[i], {"active", "pose", "feasible"}, p);
    FeasibilityEntry e;
    if (!j[i].contains("active")) throw SchemaError(join_path(p, "active"), "missing");
    detail::field_from_json(j[i]["active"], e.active, join_path(p, "active"));
    if (j[i].contains("pose")) e.pose = pose_field(j[i]["pose"], join_path(p, "pose"));
    if (j[i].contains("feasible")) {
      detail::field_from_json(j[i]["feasible"], e.feasible, join_path(p, "feasible"));
    }
    table.push_back(std::move(e));
  }
  return table;
}

}  // namespace dexseq::fingers
