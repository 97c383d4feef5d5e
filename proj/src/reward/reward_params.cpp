#include "dexseq/reward/reward_params.hpp"

#include <string>

namespace dexseq::reward {
namespace {

template <class T>
void check_task(const T& params, const std::string& task) {
  T copy = params;
  copy.visit_fields([&](const char* name, double& v) {
    const std::string key(name);
    const std::string where = "rewards." + task + "." + key;
    if (!std::isfinite(v)) throw SchemaError(where, "must be finite");
    if (key.starts_with("lambda_") && !(v > 0.0)) throw SchemaError(where, "scale must be > 0");
    if (key.starts_with("beta_") && v < 0.0) throw SchemaError(where, "cap must be >= 0");
    if (key.starts_with("alpha_") && !(v > 0.0)) throw SchemaError(where, "threshold must be > 0");
  });
}

}  // namespace

void RewardParams::validate() const {
  check_task(grasp, "grasp");
  check_task(push, "push");
  check_task(press, "press");
  check_task(twist, "twist");
  check_task(drawer, "drawer");
  check_task(two_pick, "two-pick");
  if (!(push.d_0 > 0.0)) throw SchemaError("rewards.push.d_0", "must be > 0");
  if (!(twist.theta_succ > 0.0)) throw SchemaError("rewards.twist.theta_succ", "must be > 0");
  if (!(drawer.q_target > 0.0)) throw SchemaError("rewards.drawer.q_target", "must be > 0");
  if (!(two_pick.h_max > 0.0)) throw SchemaError("rewards.two-pick.h_max", "must be > 0");
}

Json to_json(const RewardParams& p) {
  return Json{{"grasp", fields_to_json(p.grasp)},   {"push", fields_to_json(p.push)},
              {"press", fields_to_json(p.press)},   {"twist", fields_to_json(p.twist)},
              {"drawer", fields_to_json(p.drawer)}, {"two-pick", fields_to_json(p.two_pick)}};
}

RewardParams reward_params_from_json(const Json& j, const std::string& path) {
  require_known_keys(j, {"grasp", "push", "press", "twist", "drawer", "two-pick"}, path);
  RewardParams p;
  if (j.contains("grasp")) fields_from_json(j["grasp"], p.grasp, join_path(path, "grasp"));
  if (j.contains("push")) fields_from_json(j["push"], p.push, join_path(path, "push"));
  if (j.contains("press")) fields_from_json(j["press"], p.press, join_path(path, "press"));
  if (j.contains("twist")) fields_from_json(j["twist"], p.twist, join_path(path, "twist"));
  if (j.contains("drawer")) fields_from_json(j["drawer"], p.drawer, join_path(path, "drawer"));
  if (j.contains("two-pick")) {
    fields_from_json(j["two-pick"], p.two_pick, join_path(path, "two-pick"));
  }
  p.validate();
  return p;
}

}  // namespace dexseq::reward
