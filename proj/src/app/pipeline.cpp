#include "dexseq/app/pipeline.hpp"

#include "dexseq/random.hpp"

namespace dexseq::app {

optim::EpisodeSetup grasp_setup(const RunConfig& config, const fingers::FingerConfiguration& fingers,
                                randomization::Stage stage) {
  optim::EpisodeSetup s;
  s.spec = config.grasp_spec();
  s.config = fingers;
  s.stage = stage;
  return s;
}

optim::EpisodeSetup second_setup(const RunConfig& config, const optim::TerminalStateBuffer& buffer,
                                 randomization::Stage stage) {
  optim::EpisodeSetup s;
  s.spec = config.second_spec();
  s.config = buffer.config;
  s.stage = stage;
  s.buffer = &buffer;
  return s;
}

optim::Policy initial_policy(const PhaseSettings& phase, const tasks::TaskSpec& spec) {
  optim::Policy p(phase.architecture_for(spec), spec);
  if (phase.reach_prior != 0.0) p.add_reach_prior(phase.reach_prior);
  return p;
}

PhaseResult train_grasp(const RunConfig& config, const fingers::FingerConfiguration& fingers,
                        long budget, std::uint64_t seed) {
  const PhaseSettings& phase = config.grasp.train;
  const optim::EpisodeSetup setup = grasp_setup(config, fingers, phase.stage);
  optim::Policy init = initial_policy(phase, setup.spec);
  PhaseResult r{optim::train_policy(setup, init, init.architecture(), budget,
                                    derive_seed(seed, kGraspTrainSeed), phase.cem),
                {}};
  r.eval = optim::evaluate_policy(r.train.policy, setup, phase.eval_episodes,
                                  derive_seed(seed, kGraspEvalSeed), phase.cem.workers);
  return r;
}

optim::TerminalStateBuffer grasp_buffer(const RunConfig& config, const optim::Policy& grasp,
                                        const fingers::FingerConfiguration& fingers, std::uint64_t seed) {
  const optim::EpisodeSetup setup = grasp_setup(config, fingers, config.grasp.train.stage);
  return optim::collect_terminal_states(grasp, setup, config.grasp.terminal_episodes,
                                        derive_seed(seed, kBufferSeed), config.grasp.train.cem.workers);
}

PhaseResult train_second(const RunConfig& config, const optim::TerminalStateBuffer& buffer,
                         const std::optional<optim::Policy>& init, randomization::Stage stage,
                         long budget, std::uint64_t seed, int eval_episodes) {
  const PhaseSettings& phase = config.second.train;
  const optim::EpisodeSetup setup = second_setup(config, buffer, stage);
  const optim::Policy start = init ? *init : initial_policy(phase, setup.spec);
  PhaseResult r{optim::train_policy(setup, start, start.architecture(), budget,
                                    derive_seed(seed, kSecondTrainSeed), phase.cem),
                {}};
  r.eval = optim::evaluate_policy(r.train.policy, setup, eval_episodes, derive_seed(seed, kSecondEvalSeed),
                                  phase.cem.workers);
  return r;
}

}  // namespace dexseq::app
