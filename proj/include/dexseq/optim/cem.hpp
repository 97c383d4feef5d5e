#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dexseq/json_fields.hpp"
#include "dexseq/optim/episode.hpp"
#include "dexseq/optim/policy.hpp"

namespace dexseq::optim {

struct CemSettings {
  int population = 64;
  double elite_fraction = 0.125;
  double initial_std = 0.1;
  double std_floor = 0.01;
  int episodes_per_candidate = 1;
  int workers = 0;  // 0: DEXSEQ_WORKERS or 1

  template <class F>
  void visit_fields(F&& f) {
    f("population", population), f("elite_fraction", elite_fraction);
    f("initial_std", initial_std), f("std_floor", std_floor);
    f("episodes_per_candidate", episodes_per_candidate), f("workers", workers);
  }
  // Throws ConfigError on non-positive sizes or fractions outside (0, 1].
  void validate() const;
};

struct CandidateEvaluation {
  EvalMetrics metrics;
  long steps = 0;
};

// Black-box objective: evaluate `params` over `episodes` episodes seeded
// from `seed`. Must be deterministic and safe to call concurrently.
struct CemProblem {
  int dimension = 0;
  long steps_per_episode = 1;
  std::function<CandidateEvaluation(const std::vector<double>& params, int episodes,
                                    std::uint64_t seed)>
      evaluate;
};

struct CurvePoint {
  int generation = 0;
  long env_steps = 0;
  int evaluated = 0;
  double mean_return = 0.0;
  double elite_return = 0.0;
  double best_return = 0.0;
  double best_p_st = 0.0;
  double mean_std = 0.0;

  bool operator==(const CurvePoint&) const = default;
};

Json to_json(const CurvePoint& p);

struct CemResult {
  std::vector<double> best_params;
  EvalMetrics best_metrics;
  std::vector<CurvePoint> curve;
  long env_steps = 0;
};

// Generation 0 evaluates `initial_mean` alone. Each later generation samples
// mean + std * noise (member 0 is the mean itself), stopping early once the
// step budget is spent, and refits mean and std to the elites by return.
// The best-so-far candidate ranks by return, then by p_st. Later generations
// only start episodes that fit, so total steps exceed the budget only when
// the initial evaluation alone does.
CemResult run_cem(const CemProblem& problem, std::vector<double> initial_mean, long budget,
                  std::uint64_t seed, const CemSettings& settings);

struct TrainResult {
  Policy policy;
  EvalMetrics best_metrics;
  std::vector<CurvePoint> curve;
  long env_steps = 0;
};

// CEM over the policy parameters on `setup`. Starts from `init` when given,
// otherwise from a zero policy with `architecture`.
TrainResult train_policy(const EpisodeSetup& setup, const std::optional<Policy>& init,
                         const PolicyArchitecture& architecture, long budget, std::uint64_t seed,
                         const CemSettings& settings);

}  // namespace dexseq::optim
