#include "doctest.h"

#include <vector>

#include "dexseq/errors.hpp"
#include "dexseq/optim/cem.hpp"
#include "dexseq/tasks/task_queries.hpp"
#include "trained.hpp"

using namespace dexseq;
using namespace dexseq::optim;

namespace {

const std::vector<double> kTarget{0.5, -0.3, 0.8, 0.0, -1.2};

CemProblem quadratic(long steps_per_episode) {
  CemProblem p;
  p.dimension = static_cast<int>(kTarget.size());
  p.steps_per_episode = steps_per_episode;
  p.evaluate = [steps_per_episode](const std::vector<double>& x, int episodes, std::uint64_t) {
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) d += (x[i] - kTarget[i]) * (x[i] - kTarget[i]);
    CandidateEvaluation e;
    e.metrics.p_ar = -d;
    e.metrics.p_st = d < 0.01 ? 1.0 : 0.0;
    e.metrics.episodes = episodes;
    e.steps = steps_per_episode * episodes;
    return e;
  };
  return p;
}

EpisodeSetup grasp_setup() {
  const auto& pair = support::shared_pair();
  return app::grasp_setup(pair.config, pair.fingers, randomization::Stage::C2);
}

}  // namespace

TEST_SUITE("optim") {

TEST_CASE("summary counts") {
  std::vector<EpisodeOutcome> o(4);
  const bool st[] = {true, false, false, true};
  const bool sa[] = {true, true, false, false};
  for (int i = 0; i < 4; ++i) {
    o[i].terminal_success = st[i];
    o[i].any_success = sa[i];
    o[i].episode_return = i + 1.0;
  }
  const EvalMetrics m = summarize(o);
  CHECK(m.episodes == 4);
  CHECK(m.p_st == 0.5);
  CHECK(m.p_sa == 0.75);
  CHECK(m.p_ar == 2.5);
}

TEST_CASE("cem on a quadratic") {
  CemSettings s;
  s.initial_std = 1.0;
  const long budget = 75 * 64 * 40;
  const auto r = run_cem(quadratic(75), std::vector<double>(5, 0.0), budget, 11, s);
  CHECK(r.env_steps <= budget + 75);
  REQUIRE(r.curve.size() > 2);
  for (std::size_t i = 1; i < r.curve.size(); ++i) {
    CHECK(r.curve[i].best_return >= r.curve[i - 1].best_return);
    CHECK(r.curve[i].env_steps > r.curve[i - 1].env_steps);
  }
  CHECK(r.curve.back().best_return > -0.01);
  CHECK(r.best_metrics.p_ar == r.curve.back().best_return);

  const auto again = run_cem(quadratic(75), std::vector<double>(5, 0.0), budget, 11, s);
  CHECK(again.curve == r.curve);
  CHECK(again.best_params == r.best_params);
}

TEST_CASE("cem settings validation") {
  CemSettings s;
  s.elite_fraction = 0.0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = CemSettings{};
  s.population = 0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("policy evaluation") {
  const auto& pair = support::shared_pair();
  const auto setup = grasp_setup();
  const auto a = evaluate_policy(pair.grasp.train.policy, setup, 16, 5);
  const auto b = evaluate_policy(pair.grasp.train.policy, setup, 16, 5, 3);
  CHECK(a == b);
  CHECK(a.episodes == 16);
  CHECK(a.p_sa >= a.p_st);
  CHECK(pair.grasp.train.env_steps <= 50000);
  CHECK(pair.grasp.eval.p_st >= 0.8);
  CHECK_THROWS_AS(evaluate_policy(pair.grasp.train.policy, setup, 0, 5), ConfigError);
}

TEST_CASE("terminal state buffer") {
  const auto& pair = support::shared_pair();
  REQUIRE_FALSE(pair.buffer.states.empty());
  CHECK(pair.buffer.config == pair.fingers);
  for (const auto& s : pair.buffer.states) CHECK(tasks::is_grasped(s, pair.fingers.holding()));

  const auto setup = grasp_setup();
  const Policy idle(pair.grasp.train.policy.architecture(), setup.spec);
  CHECK_THROWS_AS(collect_terminal_states(idle, setup, 8, 1), EmptyBufferError);
}

TEST_CASE("policy json round trip") {
  const auto& pair = support::shared_pair();
  const auto& p = pair.second.train.policy;
  const auto q = policy_from_json(to_json(p), pair.config.second_spec());
  CHECK(q.parameters() == p.parameters());
  CHECK(q.architecture() == p.architecture());
}

}
