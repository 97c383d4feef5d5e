#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace dexseq {

enum class TaskKind { grasp, push, press, twist, drawer, two_pick };

inline constexpr std::array<TaskKind, 6> kAllTaskKinds{TaskKind::grasp, TaskKind::push,
                                                       TaskKind::press, TaskKind::twist,
                                                       TaskKind::drawer, TaskKind::two_pick};

std::string_view to_string(TaskKind kind);
std::optional<TaskKind> parse_task_kind(std::string_view name);
// Throws ConfigError on unknown names.
TaskKind task_kind_from_string(std::string_view name);

}  // namespace dexseq
