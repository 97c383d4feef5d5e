#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dexseq/fingers/finger_config.hpp"
#include "dexseq/optim/policy.hpp"
#include "dexseq/randomization/randomizer.hpp"
#include "dexseq/sandbox/scene.hpp"
#include "dexseq/tasks/task_spec.hpp"

namespace dexseq::optim {

// Successful grasp end states, all produced with one configuration (in the
// grasping role).
struct TerminalStateBuffer {
  fingers::FingerConfiguration config;
  std::vector<sandbox::Scene> states;
};

// How episodes of one task are started and scored. `config` is always given
// in the grasping role.
//   grasp task          fresh scene, grasp reward
//   second subtask      start from a buffered terminal state (whose config
//                       must equal `config`), subtask reward with roles
//                       reversed
//   phase-based task    no buffer and switch_step >= 0: a fresh scene driven
//                       by the grasp reward for switch_step steps, then the
//                       subtask reward for spec.horizon steps
struct EpisodeSetup {
  tasks::TaskSpec spec;
  fingers::FingerConfiguration config;
  randomization::Stage stage = randomization::Stage::C2;
  const TerminalStateBuffer* buffer = nullptr;
  int switch_step = -1;

  // Throws ConfigError when the combination above is inconsistent or the
  // buffer is empty.
  void validate() const;
  int horizon() const;
  bool phase_based() const { return spec.kind != TaskKind::grasp && buffer == nullptr; }
  // Configuration used while scoring step t (0-based).
  fingers::FingerConfiguration config_at(int step) const;
};

struct EpisodeStart {
  sandbox::Scene scene;
  randomization::RandomizationDraw draw;
  int buffer_index = -1;
};

// Deterministic in (setup, seed).
EpisodeStart make_start(const EpisodeSetup& setup, std::uint64_t seed);

struct EpisodeOutcome {
  double episode_return = 0.0;
  bool terminal_success = false;
  bool any_success = false;
  int steps = 0;
  sandbox::Scene final_scene;
};

using Controller = std::function<std::vector<double>(std::span<const double> observation, int step)>;

// Runs the full horizon; episodes never stop early. Success is evaluated
// after every step. When `actions` is given, the executed actions are
// appended to it.
EpisodeOutcome run_from(const EpisodeSetup& setup, const sandbox::Scene& start,
                        const Controller& controller,
                        std::vector<std::vector<double>>* actions = nullptr);

EpisodeOutcome run_episode(const EpisodeSetup& setup, const Policy& policy, std::uint64_t seed,
                           std::vector<std::vector<double>>* actions = nullptr);

struct EvalMetrics {
  double p_st = 0.0;
  double p_sa = 0.0;
  double p_ar = 0.0;
  int episodes = 0;

  bool operator==(const EvalMetrics&) const = default;
};

// Reduces per-episode outcomes in index order.
EvalMetrics summarize(std::span<const EpisodeOutcome> outcomes);

// Episode i uses seed derive_seed(seed, i). Throws ConfigError when
// n_episodes < 1.
EvalMetrics evaluate_policy(const Policy& policy, const EpisodeSetup& setup, int n_episodes,
                            std::uint64_t seed, int workers = 0);

// Runs n grasp episodes and keeps the final scenes of those that succeed at
// the last step. Throws EmptyBufferError when none does.
TerminalStateBuffer collect_terminal_states(const Policy& policy, const EpisodeSetup& grasp_setup,
                                            int n, std::uint64_t seed, int workers = 0);

}  // namespace dexseq::optim
