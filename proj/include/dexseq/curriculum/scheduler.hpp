#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "dexseq/fingers/finger_config.hpp"
#include "dexseq/json_fields.hpp"
#include "dexseq/optim/episode.hpp"
#include "dexseq/randomization/randomizer.hpp"

namespace dexseq::curriculum {

using randomization::Stage;

struct StageResult {
  Stage stage = Stage::C0;
  optim::EvalMetrics metrics;
  bool failed = false;
  std::string error;

  bool operator==(const StageResult&) const = default;
};

// One (grasp terminal-state buffer, second-subtask policy) pair. Policy
// fields are opaque references (paths or keys) owned by the trainer.
struct CandidateRecord {
  int id = 0;
  fingers::FingerConfiguration config;
  std::string grasp_policy;
  std::string second_policy;
  std::vector<StageResult> history;  // one entry per stage entered
  bool alive = true;

  // Metrics recorded for `stage`, or nullptr.
  const StageResult* result_for(Stage stage) const;
};

struct CurriculumConfig {
  std::array<long, 3> budgets{30000, 20000, 50000};
  // Survivors kept after C0 and after C1.
  std::array<int, 2> survivors{6, 3};

  // Throws ConfigError unless budgets > 0 and survivors are positive and
  // non-increasing.
  void validate() const;
};

Json to_json(const CurriculumConfig& config);
CurriculumConfig curriculum_config_from_json(const Json& j, const std::string& path = "curriculum");

// Ids of the alive records, best first: descending (p_st, p_sa, p_ar) at
// `stage`, then ascending id. Throws StateError when an alive record has no
// metrics for the stage.
std::vector<int> rank_candidates(const std::vector<CandidateRecord>& records, Stage stage);

// Trains a candidate for one stage and returns its evaluation. May update
// the record's policy references. Called concurrently for different
// candidates; exceptions mark the candidate dead with p_st = 0.
using StageTrainer =
    std::function<optim::EvalMetrics(CandidateRecord& record, Stage stage, long budget)>;

struct StageSummary {
  Stage stage = Stage::C0;
  std::vector<int> entered;
  std::vector<int> ranking;
  std::vector<int> survivors;
  long dispatched_steps = 0;
};

struct CurriculumResult {
  int winner = -1;
  std::vector<CandidateRecord> records;
  std::vector<StageSummary> stages;
  long dispatched_steps = 0;
};

// Trains every alive candidate at C0, keeps survivors[0], trains at C1, keeps
// survivors[1], trains at C2 and returns the top-ranked candidate. Throws
// ConfigError for an empty candidate list or duplicate ids, StateError when
// every candidate fails.
CurriculumResult run_curriculum(std::vector<CandidateRecord> candidates,
                                const CurriculumConfig& config, const StageTrainer& trainer,
                                int workers = 0);

struct BudgetReport {
  long total = 0;
  long flat = 0;
  double saving = 0.0;
  std::array<int, 3> alive{};
};

// Steps used when n candidates run the full curriculum versus training all
// of them through every stage.
BudgetReport budget_report(const CurriculumConfig& config, int n_candidates);

}  // namespace dexseq::curriculum
