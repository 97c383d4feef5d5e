#pragma once

#include <cstdint>
#include <optional>

#include "dexseq/app/run_config.hpp"
#include "dexseq/optim/cem.hpp"
#include "dexseq/optim/episode.hpp"

namespace dexseq::app {

// Seed streams derived from the run seed.
enum SeedStream : std::uint64_t {
  kGraspTrainSeed = 1,
  kGraspEvalSeed = 2,
  kBufferSeed = 3,
  kSecondTrainSeed = 4,
  kSecondEvalSeed = 5,
  kDatasetSeed = 6,
  kQuerySeed = 7,
  kCandidateSeed = 8,
};

struct PhaseResult {
  optim::TrainResult train;
  optim::EvalMetrics eval;
};

optim::EpisodeSetup grasp_setup(const RunConfig& config, const fingers::FingerConfiguration& fingers,
                                randomization::Stage stage);
optim::EpisodeSetup second_setup(const RunConfig& config, const optim::TerminalStateBuffer& buffer,
                                 randomization::Stage stage);

// Zero policy plus the phase's reach prior.
optim::Policy initial_policy(const PhaseSettings& phase, const tasks::TaskSpec& spec);

// Trains the grasp policy for `fingers` and evaluates it over
// grasp.train.eval_episodes episodes.
PhaseResult train_grasp(const RunConfig& config, const fingers::FingerConfiguration& fingers,
                        long budget, std::uint64_t seed);

// Terminal states of grasp.terminal_episodes grasp episodes.
optim::TerminalStateBuffer grasp_buffer(const RunConfig& config, const optim::Policy& grasp,
                                        const fingers::FingerConfiguration& fingers, std::uint64_t seed);

// Trains the second-subtask policy from buffered grasp end states, starting
// from `init` or the reach-prior policy, and evaluates it at `stage`.
PhaseResult train_second(const RunConfig& config, const optim::TerminalStateBuffer& buffer,
                         const std::optional<optim::Policy>& init, randomization::Stage stage,
                         long budget, std::uint64_t seed, int eval_episodes);

}  // namespace dexseq::app
