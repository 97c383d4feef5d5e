#include "doctest.h"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <tuple>

#include "dexseq/curriculum/scheduler.hpp"
#include "dexseq/errors.hpp"
#include "dexseq/random.hpp"

using namespace dexseq;
using namespace dexseq::curriculum;

namespace {

std::vector<CandidateRecord> candidates(int n) {
  const auto configs = fingers::enumerate_configurations(4, std::nullopt);
  std::vector<CandidateRecord> out;
  for (int i = 0; i < n; ++i) {
    CandidateRecord r;
    r.id = i + 1;
    r.config = configs[static_cast<std::size_t>(i) % configs.size()];
    out.push_back(r);
  }
  return out;
}

std::vector<CandidateRecord> scored(Stage stage, const std::vector<optim::EvalMetrics>& m) {
  auto recs = candidates(static_cast<int>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) recs[i].history.push_back({stage, m[i]});
  return recs;
}

optim::EvalMetrics metrics(double st, double sa = 0.0, double ar = 0.0) {
  optim::EvalMetrics m;
  m.p_st = st, m.p_sa = sa, m.p_ar = ar, m.episodes = 64;
  return m;
}

// Reference ordering: plain sort on (-p_st, -p_sa, -p_ar, id).
std::vector<int> reference_rank(const std::vector<CandidateRecord>& recs, Stage stage) {
  std::vector<std::tuple<double, double, double, int>> keys;
  for (const auto& r : recs) {
    const auto& m = r.result_for(stage)->metrics;
    keys.emplace_back(-m.p_st, -m.p_sa, -m.p_ar, r.id);
  }
  std::sort(keys.begin(), keys.end());
  std::vector<int> ids;
  for (const auto& k : keys) ids.push_back(std::get<3>(k));
  return ids;
}

StageTrainer fixed_scores(const std::map<int, double>& score) {
  return [score](CandidateRecord& r, Stage, long) { return metrics(score.at(r.id)); };
}

}  // namespace

TEST_SUITE("curriculum") {

TEST_CASE("ranking reproduces the early stage selection") {
  const double p[] = {51.8, 0.0, 42.8, 0.0, 0.0, 29.4, 36.4, 18.4, 1.6};
  std::vector<optim::EvalMetrics> m;
  for (double v : p) m.push_back(metrics(v / 100.0));
  const auto ranking = rank_candidates(scored(Stage::C0, m), Stage::C0);
  const std::vector<int> top(ranking.begin(), ranking.begin() + 6);
  CHECK(top == std::vector<int>{1, 3, 7, 6, 8, 9});
  CHECK(ranking == reference_rank(scored(Stage::C0, m), Stage::C0));
}

TEST_CASE("lexicographic order and id ties") {
  CHECK(rank_candidates(scored(Stage::C1, {metrics(0.5, 0.7), metrics(0.5, 0.9)}), Stage::C1) ==
        std::vector<int>{2, 1});
  CHECK(rank_candidates(scored(Stage::C1, {metrics(0.5, 0.9, 3.0), metrics(0.5, 0.9, 3.0)}), Stage::C1) ==
        std::vector<int>{1, 2});

  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<optim::EvalMetrics> m;
    for (int i = 0; i < 9; ++i) {
      m.push_back(metrics(rng.below(4) / 4.0, rng.below(3) / 3.0, static_cast<double>(rng.below(3))));
    }
    const auto recs = scored(Stage::C2, m);
    CHECK(rank_candidates(recs, Stage::C2) == reference_rank(recs, Stage::C2));
  }
  CHECK_THROWS_AS(rank_candidates(candidates(2), Stage::C0), StateError);
}

TEST_CASE("winner is the global best under fixed scores") {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    std::map<int, double> score;
    int best = 1;
    for (int id = 1; id <= 9; ++id) {
      score[id] = rng.uniform();
      if (score[id] > score[best]) best = id;
    }
    const auto r = run_curriculum(candidates(9), CurriculumConfig{}, fixed_scores(score));
    CHECK(r.winner == best);
  }
}

TEST_CASE("single candidate wins") {
  const auto r = run_curriculum(candidates(1), CurriculumConfig{}, fixed_scores({{1, 0.0}}));
  CHECK(r.winner == 1);
  CHECK(r.records[0].history.size() == 3);
}

TEST_CASE("survivor sets shrink and dispatched steps match the report") {
  std::map<int, double> score;
  for (int id = 1; id <= 9; ++id) score[id] = id * 0.1;
  std::atomic<long> seen{0};
  StageTrainer trainer = [&](CandidateRecord& r, Stage, long budget) {
    seen += budget;
    return metrics(score.at(r.id));
  };
  const CurriculumConfig cfg;
  const auto r = run_curriculum(candidates(9), cfg, trainer, 3);
  REQUIRE(r.stages.size() == 3);
  for (std::size_t j = 1; j < r.stages.size(); ++j) {
    const std::set<int> before(r.stages[j - 1].survivors.begin(), r.stages[j - 1].survivors.end());
    for (int id : r.stages[j].entered) CHECK(before.contains(id));
  }
  CHECK(r.stages[0].entered.size() == 9);
  CHECK(r.stages[1].entered.size() == 6);
  CHECK(r.stages[2].entered.size() == 3);
  CHECK(r.dispatched_steps == budget_report(cfg, 9).total);
  CHECK(seen.load() == r.dispatched_steps);
  for (const auto& rec : r.records) CHECK(rec.history.size() >= 1);
}

TEST_CASE("failed candidates are marked dead") {
  StageTrainer trainer = [](CandidateRecord& r, Stage, long) {
    if (r.id == 2) throw std::runtime_error("boom");
    return metrics(r.id == 2 ? 1.0 : 0.1 * r.id);
  };
  const auto r = run_curriculum(candidates(3), CurriculumConfig{}, trainer);
  CHECK(r.winner == 3);
  CHECK(r.records[1].history[0].failed);
  CHECK(r.records[1].history[0].metrics.p_st == 0.0);
  StageTrainer all_fail = [](CandidateRecord&, Stage, long) -> optim::EvalMetrics {
    throw std::runtime_error("boom");
  };
  CHECK_THROWS_AS(run_curriculum(candidates(3), CurriculumConfig{}, all_fail), StateError);
  CHECK_THROWS_AS(run_curriculum({}, CurriculumConfig{}, all_fail), ConfigError);
}

TEST_CASE("budget arithmetic") {
  CurriculumConfig cfg;
  cfg.budgets = {3'000'000, 2'000'000, 5'000'000};
  auto rep = budget_report(cfg, 9);
  CHECK(rep.total == 54'000'000);
  CHECK(rep.flat == 90'000'000);
  CHECK(rep.saving == doctest::Approx(0.40).epsilon(1e-12));

  cfg.survivors = {9, 9};
  CHECK(budget_report(cfg, 9).saving == 0.0);

  cfg.survivors = {1, 1};
  CHECK(budget_report(cfg, 9).total == 9 * 3'000'000L + 2'000'000L + 5'000'000L);

  cfg.survivors = {3, 6};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

}
