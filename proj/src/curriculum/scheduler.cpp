#include "dexseq/curriculum/scheduler.hpp"

#include <algorithm>
#include <set>

#include "dexseq/errors.hpp"
#include "dexseq/util/parallel.hpp"

namespace dexseq::curriculum {

const StageResult* CandidateRecord::result_for(Stage stage) const {
  for (const auto& r : history) {
    if (r.stage == stage) return &r;
  }
  return nullptr;
}

void CurriculumConfig::validate() const {
  for (long b : budgets) {
    if (b <= 0) throw ConfigError("curriculum: stage budgets must be positive");
  }
  if (survivors[0] < 1 || survivors[1] < 1) {
    throw ConfigError("curriculum: survivor counts must be positive");
  }
  if (survivors[1] > survivors[0]) throw ConfigError("curriculum: survivor counts must not grow");
}

Json to_json(const CurriculumConfig& c) {
  return Json{{"budgets", c.budgets}, {"survivors", c.survivors}};
}

CurriculumConfig curriculum_config_from_json(const Json& j, const std::string& path) {
  require_known_keys(j, {"budgets", "survivors"}, path);
  CurriculumConfig c;
  if (auto it = j.find("budgets"); it != j.end()) {
    detail::field_from_json(*it, c.budgets, join_path(path, "budgets"));
  }
  if (auto it = j.find("survivors"); it != j.end()) {
    detail::field_from_json(*it, c.survivors, join_path(path, "survivors"));
  }
  c.validate();
  return c;
}

std::vector<int> rank_candidates(const std::vector<CandidateRecord>& records, Stage stage) {
  struct Entry {
    int id;
    optim::EvalMetrics m;
  };
  std::vector<Entry> entries;
  for (const auto& r : records) {
    if (!r.alive) continue;
    const StageResult* res = r.result_for(stage);
    if (res == nullptr) {
      throw StateError("rank: candidate " + std::to_string(r.id) + " has no metrics for stage " +
                       std::string(randomization::to_string(stage)));
    }
    entries.push_back(Entry{r.id, res->metrics});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.m.p_st != b.m.p_st) return a.m.p_st > b.m.p_st;
    if (a.m.p_sa != b.m.p_sa) return a.m.p_sa > b.m.p_sa;
    if (a.m.p_ar != b.m.p_ar) return a.m.p_ar > b.m.p_ar;
    return a.id < b.id;
  });
  std::vector<int> ids;
  for (const auto& e : entries) ids.push_back(e.id);
  return ids;
}

CurriculumResult run_curriculum(std::vector<CandidateRecord> candidates,
                                const CurriculumConfig& config, const StageTrainer& trainer,
                                int workers) {
  config.validate();
  if (candidates.empty()) throw ConfigError("curriculum: no candidates");
  std::set<int> ids;
  for (const auto& c : candidates) {
    if (!ids.insert(c.id).second) throw ConfigError("curriculum: duplicate candidate id");
  }

  CurriculumResult result;
  for (std::size_t j = 0; j < randomization::kAllStages.size(); ++j) {
    const Stage stage = randomization::kAllStages[j];
    const long budget = config.budgets[j];
    StageSummary summary;
    summary.stage = stage;
    std::vector<std::size_t> entered;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (candidates[i].alive) entered.push_back(i);
    }
    std::vector<StageResult> results(entered.size());
    parallel_for(static_cast<int>(entered.size()), workers, [&](int k) {
      CandidateRecord& rec = candidates[entered[static_cast<std::size_t>(k)]];
      StageResult& out = results[static_cast<std::size_t>(k)];
      out.stage = stage;
      try {
        out.metrics = trainer(rec, stage, budget);
      } catch (const std::exception& e) {
        out.failed = true;
        out.error = e.what();
        out.metrics = optim::EvalMetrics{};
      }
    });
    for (std::size_t k = 0; k < entered.size(); ++k) {
      CandidateRecord& rec = candidates[entered[k]];
      rec.history.push_back(results[k]);
      if (results[k].failed) rec.alive = false;
      summary.entered.push_back(rec.id);
      summary.dispatched_steps += budget;
    }
    result.dispatched_steps += summary.dispatched_steps;

    summary.ranking = rank_candidates(candidates, stage);
    if (summary.ranking.empty()) throw StateError("curriculum: every candidate failed");
    const std::size_t keep =
        j < config.survivors.size() ? static_cast<std::size_t>(config.survivors[j]) : 1;
    summary.survivors.assign(summary.ranking.begin(),
                             summary.ranking.begin() +
                                 static_cast<long>(std::min(keep, summary.ranking.size())));
    if (j + 1 < randomization::kAllStages.size()) {
      for (auto& c : candidates) {
        if (c.alive && std::find(summary.survivors.begin(), summary.survivors.end(), c.id) ==
                           summary.survivors.end()) {
          c.alive = false;
        }
      }
    } else {
      result.winner = summary.ranking.front();
    }
    result.stages.push_back(std::move(summary));
  }
  result.records = std::move(candidates);
  return result;
}

BudgetReport budget_report(const CurriculumConfig& config, int n_candidates) {
  config.validate();
  if (n_candidates < 1) throw ConfigError("budget report: need at least one candidate");
  BudgetReport r;
  r.alive[0] = n_candidates;
  r.alive[1] = std::min(config.survivors[0], r.alive[0]);
  r.alive[2] = std::min(config.survivors[1], r.alive[1]);
  long per_candidate = 0;
  for (std::size_t j = 0; j < 3; ++j) {
    r.total += r.alive[j] * config.budgets[j];
    per_candidate += config.budgets[j];
  }
  r.flat = n_candidates * per_candidate;
  r.saving = 1.0 - static_cast<double>(r.total) / static_cast<double>(r.flat);
  return r;
}

}  // namespace dexseq::curriculum
