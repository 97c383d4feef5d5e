#include "dexseq/task_kind.hpp"

#include <string>

#include "dexseq/errors.hpp"

namespace dexseq {

std::string_view to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::grasp: return "grasp";
    case TaskKind::push: return "push";
    case TaskKind::press: return "press";
    case TaskKind::twist: return "twist";
    case TaskKind::drawer: return "drawer";
    case TaskKind::two_pick: return "two-pick";
  }
  return "unknown";
}

std::optional<TaskKind> parse_task_kind(std::string_view name) {
  for (TaskKind k : kAllTaskKinds) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

TaskKind task_kind_from_string(std::string_view name) {
  if (auto k = parse_task_kind(name)) return *k;
  throw ConfigError("unknown task kind '" + std::string(name) + "'");
}

}  // namespace dexseq
