#include "dexseq/optim/cem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dexseq/errors.hpp"
#include "dexseq/random.hpp"
#include "dexseq/util/parallel.hpp"

namespace dexseq::optim {

void CemSettings::validate() const {
  if (population < 1) throw ConfigError("cem: population must be >= 1");
  if (!(elite_fraction > 0.0 && elite_fraction <= 1.0)) {
    throw ConfigError("cem: elite_fraction must lie in (0, 1]");
  }
  if (!(initial_std >= 0.0) || !(std_floor >= 0.0)) throw ConfigError("cem: std must be >= 0");
  if (episodes_per_candidate < 1) throw ConfigError("cem: episodes_per_candidate must be >= 1");
}

Json to_json(const CurvePoint& p) {
  return Json{{"generation", p.generation},   {"env_steps", p.env_steps},
              {"evaluated", p.evaluated},     {"mean_return", p.mean_return},
              {"elite_return", p.elite_return}, {"best_return", p.best_return},
              {"best_p_st", p.best_p_st},     {"mean_std", p.mean_std}};
}

namespace {

bool better(const EvalMetrics& a, const EvalMetrics& b) {
  if (a.p_ar != b.p_ar) return a.p_ar > b.p_ar;
  return a.p_st > b.p_st;
}

}  // namespace

CemResult run_cem(const CemProblem& problem, std::vector<double> mean, long budget,
                  std::uint64_t seed, const CemSettings& settings) {
  settings.validate();
  if (budget <= 0) throw ConfigError("cem: budget must be positive");
  if (static_cast<int>(mean.size()) != problem.dimension) {
    throw ConfigError("cem: initial mean has the wrong dimension");
  }
  if (problem.steps_per_episode < 1) throw ConfigError("cem: steps_per_episode must be >= 1");
  const auto dim = mean.size();
  std::vector<double> stddev(dim, std::max(settings.initial_std, settings.std_floor));

  CemResult result;
  {
    const CandidateEvaluation e =
        problem.evaluate(mean, settings.episodes_per_candidate, derive_seed(seed, 0));
    result.env_steps = e.steps;
    result.best_params = mean;
    result.best_metrics = e.metrics;
    result.curve.push_back(CurvePoint{0, result.env_steps, 1, e.metrics.p_ar, e.metrics.p_ar,
                                      e.metrics.p_ar, e.metrics.p_st, settings.initial_std});
  }

  for (int gen = 1; result.env_steps + problem.steps_per_episode <= budget; ++gen) {
    // Episode allotment: only whole episodes that fit in the budget; the last
    // member may get fewer episodes.
    std::vector<int> episodes;
    long planned = 0;
    const long remaining = budget - result.env_steps;
    while (static_cast<int>(episodes.size()) < settings.population &&
           planned + problem.steps_per_episode <= remaining) {
      const long left_episodes = (remaining - planned) / problem.steps_per_episode;
      const int e = static_cast<int>(
          std::min<long>(settings.episodes_per_candidate, left_episodes));
      episodes.push_back(e);
      planned += e * problem.steps_per_episode;
    }
    const int members = static_cast<int>(episodes.size());

    Rng noise(derive_seed(seed, static_cast<std::uint64_t>(gen), 0x6e6f697365ULL));
    std::vector<std::vector<double>> candidates(static_cast<std::size_t>(members), mean);
    for (int m = 1; m < members; ++m) {
      for (std::size_t d = 0; d < dim; ++d) {
        candidates[static_cast<std::size_t>(m)][d] += stddev[d] * noise.normal();
      }
    }
    const std::uint64_t episode_seed = derive_seed(seed, static_cast<std::uint64_t>(gen));
    std::vector<CandidateEvaluation> evals(static_cast<std::size_t>(members));
    parallel_for(members, settings.workers, [&](int m) {
      const auto i = static_cast<std::size_t>(m);
      evals[i] = problem.evaluate(candidates[i], episodes[i], episode_seed);
    });

    std::vector<int> order(static_cast<std::size_t>(members));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return better(evals[static_cast<std::size_t>(a)].metrics,
                    evals[static_cast<std::size_t>(b)].metrics);
    });
    double mean_return = 0.0;
    for (const auto& e : evals) {
      result.env_steps += e.steps;
      mean_return += e.metrics.p_ar;
    }
    mean_return /= members;
    const auto& top = evals[static_cast<std::size_t>(order[0])];
    if (better(top.metrics, result.best_metrics)) {
      result.best_metrics = top.metrics;
      result.best_params = candidates[static_cast<std::size_t>(order[0])];
    }

    const int n_elite = std::max(1, static_cast<int>(std::ceil(settings.elite_fraction * members)));
    double elite_return = 0.0;
    for (int k = 0; k < n_elite; ++k) {
      elite_return += evals[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])].metrics.p_ar;
    }
    elite_return /= n_elite;
    if (members >= 2) {
      std::vector<double> new_mean(dim, 0.0), new_var(dim, 0.0);
      for (int k = 0; k < n_elite; ++k) {
        const auto& c = candidates[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
        for (std::size_t d = 0; d < dim; ++d) new_mean[d] += c[d] / n_elite;
      }
      for (int k = 0; k < n_elite; ++k) {
        const auto& c = candidates[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
        for (std::size_t d = 0; d < dim; ++d) {
          new_var[d] += (c[d] - new_mean[d]) * (c[d] - new_mean[d]) / n_elite;
        }
      }
      mean = std::move(new_mean);
      for (std::size_t d = 0; d < dim; ++d) {
        stddev[d] = std::max(std::sqrt(new_var[d]), settings.std_floor);
      }
    }
    double mean_std = 0.0;
    for (double s : stddev) mean_std += s;
    if (dim > 0) mean_std /= static_cast<double>(dim);
    result.curve.push_back(CurvePoint{gen, result.env_steps, members, mean_return, elite_return,
                                      result.best_metrics.p_ar, result.best_metrics.p_st, mean_std});
  }
  return result;
}

TrainResult train_policy(const EpisodeSetup& setup, const std::optional<Policy>& init,
                         const PolicyArchitecture& architecture, long budget, std::uint64_t seed,
                         const CemSettings& settings) {
  setup.validate();
  const Policy start = init ? *init : Policy(architecture, setup.spec);
  CemProblem problem;
  problem.dimension = start.parameter_count();
  problem.steps_per_episode = setup.horizon();
  problem.evaluate = [&](const std::vector<double>& params, int episodes, std::uint64_t s) {
    Policy p = start;
    p.set_parameters(params);
    std::vector<EpisodeOutcome> outcomes;
    outcomes.reserve(static_cast<std::size_t>(episodes));
    long steps = 0;
    for (int e = 0; e < episodes; ++e) {
      outcomes.push_back(run_episode(setup, p, derive_seed(s, static_cast<std::uint64_t>(e))));
      steps += outcomes.back().steps;
    }
    return CandidateEvaluation{summarize(outcomes), steps};
  };
  CemResult r = run_cem(problem, start.parameters(), budget, seed, settings);
  Policy best = start;
  best.set_parameters(std::move(r.best_params));
  return TrainResult{std::move(best), r.best_metrics, std::move(r.curve), r.env_steps};
}

}  // namespace dexseq::optim
