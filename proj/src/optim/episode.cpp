#include "dexseq/optim/episode.hpp"

#include "dexseq/errors.hpp"
#include "dexseq/random.hpp"
#include "dexseq/reward/reward.hpp"
#include "dexseq/sandbox/step.hpp"
#include "dexseq/tasks/scene_builder.hpp"
#include "dexseq/tasks/task_queries.hpp"
#include "dexseq/util/parallel.hpp"

namespace dexseq::optim {

void EpisodeSetup::validate() const {
  spec.validate();
  config.validate(spec.finger_count);
  if (config.role != fingers::Role::grasping) {
    throw ConfigError("episode: configuration must be given in the grasping role");
  }
  if (spec.kind == TaskKind::grasp) {
    if (buffer != nullptr || switch_step >= 0) {
      throw ConfigError("episode: the grasp task takes neither a buffer nor a switch step");
    }
    return;
  }
  if (buffer != nullptr) {
    if (buffer->states.empty()) throw ConfigError("episode: terminal-state buffer is empty");
    if (!(buffer->config == config)) {
      throw ConfigError("episode: buffer was collected with a different configuration");
    }
    if (switch_step >= 0) throw ConfigError("episode: switch step given with a buffer");
    return;
  }
  if (switch_step < 0) {
    throw ConfigError("episode: second subtask needs a terminal-state buffer or a switch step");
  }
}

int EpisodeSetup::horizon() const {
  return phase_based() ? switch_step + spec.horizon : spec.horizon;
}

fingers::FingerConfiguration EpisodeSetup::config_at(int step) const {
  if (spec.kind == TaskKind::grasp) return config;
  if (phase_based() && step < switch_step) return config;
  return fingers::reverse_roles(config);
}

EpisodeStart make_start(const EpisodeSetup& setup, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 1));
  EpisodeStart start;
  if (setup.buffer != nullptr) {
    start.buffer_index = static_cast<int>(rng.below(setup.buffer->states.size()));
  }
  start.draw = randomization::sample_scene(setup.spec.ranges, setup.stage, rng);
  if (setup.buffer != nullptr) {
    start.scene = tasks::build_second_scene(
        setup.spec, start.draw, setup.buffer->states[static_cast<std::size_t>(start.buffer_index)]);
  } else {
    start.scene = tasks::build_scene(setup.spec, start.draw, setup.config);
  }
  return start;
}

EpisodeOutcome run_from(const EpisodeSetup& setup, const sandbox::Scene& start,
                        const Controller& controller, std::vector<std::vector<double>>* actions) {
  const tasks::TaskSpec& spec = setup.spec;
  const int horizon = setup.horizon();
  const fingers::FingerConfiguration first = setup.config_at(0);
  const fingers::FingerConfiguration last = setup.config_at(horizon - 1);
  const bool starts_in_grasp = spec.kind == TaskKind::grasp || setup.phase_based();
  const sandbox::StepParams grasp_params = tasks::step_params_for(spec, first, true);
  const sandbox::StepParams second_params = tasks::step_params_for(spec, last, false);
  tasks::TaskSpec grasp_view = spec;
  grasp_view.kind = TaskKind::grasp;

  EpisodeOutcome out;
  sandbox::Scene scene = start;
  sandbox::Scene previous;
  for (int t = 0; t < horizon; ++t) {
    const bool grasp_phase = starts_in_grasp && (spec.kind == TaskKind::grasp || t < setup.switch_step);
    const fingers::FingerConfiguration& config = grasp_phase ? first : last;
    const std::vector<double> obs = tasks::observe(scene, spec, config);
    std::vector<double> action = controller(obs, t);
    previous = scene;
    scene.state = sandbox::step_scene(scene.geometry, scene.state, action,
                                      grasp_phase ? grasp_params : second_params);
    if (actions != nullptr) actions->push_back(std::move(action));

    const reward::RewardInputs in = tasks::reward_inputs(previous, scene, spec, config);
    if (grasp_phase) {
      out.episode_return += reward::grasp_reward(in, spec.rewards.grasp, config).total;
    } else {
      out.episode_return += reward::subtask_reward(spec.kind, in, spec.rewards, config).total;
    }
    // The phase-based task only scores its final objective.
    const bool success = grasp_phase && spec.kind != TaskKind::grasp
                             ? false
                             : tasks::subtask_success(scene, grasp_phase ? grasp_view : spec, config);
    out.any_success = out.any_success || success;
    out.terminal_success = success;
  }
  out.steps = horizon;
  out.final_scene = std::move(scene);
  return out;
}

EpisodeOutcome run_episode(const EpisodeSetup& setup, const Policy& policy, std::uint64_t seed,
                           std::vector<std::vector<double>>* actions) {
  setup.validate();
  const EpisodeStart start = make_start(setup, seed);
  return run_from(
      setup, start.scene,
      [&](std::span<const double> obs, int) { return policy.act(obs); }, actions);
}

EvalMetrics summarize(std::span<const EpisodeOutcome> outcomes) {
  EvalMetrics m;
  m.episodes = static_cast<int>(outcomes.size());
  if (outcomes.empty()) return m;
  int st = 0, sa = 0;
  double ret = 0.0;
  for (const auto& o : outcomes) {
    st += o.terminal_success ? 1 : 0;
    sa += (o.any_success || o.terminal_success) ? 1 : 0;
    ret += o.episode_return;
  }
  const double n = static_cast<double>(outcomes.size());
  m.p_st = st / n;
  m.p_sa = sa / n;
  m.p_ar = ret / n;
  return m;
}

namespace {

std::vector<EpisodeOutcome> run_batch(const Policy& policy, const EpisodeSetup& setup, int n,
                                      std::uint64_t seed, int workers) {
  if (n < 1) throw ConfigError("evaluation needs at least one episode");
  setup.validate();
  std::vector<EpisodeOutcome> outcomes(static_cast<std::size_t>(n));
  parallel_for(n, workers, [&](int i) {
    outcomes[static_cast<std::size_t>(i)] =
        run_episode(setup, policy, derive_seed(seed, static_cast<std::uint64_t>(i)));
  });
  return outcomes;
}

}  // namespace

EvalMetrics evaluate_policy(const Policy& policy, const EpisodeSetup& setup, int n_episodes,
                            std::uint64_t seed, int workers) {
  return summarize(run_batch(policy, setup, n_episodes, seed, workers));
}

TerminalStateBuffer collect_terminal_states(const Policy& policy, const EpisodeSetup& grasp_setup,
                                            int n, std::uint64_t seed, int workers) {
  if (grasp_setup.spec.kind != TaskKind::grasp) {
    throw ConfigError("terminal states come from the grasp task");
  }
  const auto outcomes = run_batch(policy, grasp_setup, n, seed, workers);
  TerminalStateBuffer buffer;
  buffer.config = grasp_setup.config;
  for (const auto& o : outcomes) {
    if (o.terminal_success) buffer.states.push_back(o.final_scene);
  }
  if (buffer.states.empty()) {
    throw EmptyBufferError("no grasp episode succeeded at its final step (" + std::to_string(n) +
                           " episodes)");
  }
  return buffer;
}

}  // namespace dexseq::optim
