#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dexseq/fingers/finger_config.hpp"
#include "dexseq/json_fields.hpp"
#include "dexseq/optim/cem.hpp"
#include "dexseq/optim/policy.hpp"
#include "dexseq/curriculum/scheduler.hpp"
#include "dexseq/randomization/randomizer.hpp"
#include "dexseq/tasks/task_spec.hpp"

namespace dexseq::app {

// Training settings for one phase. `architecture` falls back to
// default_architecture for the task when absent.
struct PhaseSettings {
  long budget = 50000;
  double reach_prior = 0.5;
  randomization::Stage stage = randomization::Stage::C2;
  int eval_episodes = 64;
  optim::CemSettings cem;
  std::optional<optim::PolicyArchitecture> architecture;

  optim::PolicyArchitecture architecture_for(const tasks::TaskSpec& spec) const;
};

struct GraspSection {
  int config_id = 5;
  // Grasp episodes run to fill the terminal-state buffer.
  int terminal_episodes = 64;
  PhaseSettings train;
};

struct SecondSection {
  TaskKind task = TaskKind::push;
  PhaseSettings train;
};

enum class RankingSource { evaluation, training_max };

struct CurriculumSection {
  curriculum::CurriculumConfig schedule;
  // Candidate ids from the enumerated configurations; empty means all.
  std::vector<int> candidates;
  // Grasp training budget per candidate, spent before C0.
  long grasp_budget = 50000;
  int eval_episodes = 64;
  RankingSource ranking = RankingSource::evaluation;
};

struct DatasetSection {
  int size = 50;
  int queries = 15;
  int max_attempts_per_trajectory = 20;
  randomization::Stage stage = randomization::Stage::C2;
  // Collection and query scenes randomize the grasp block only; the second
  // object stays at its nominal placement.
  randomization::Scope scope = randomization::Scope::grasp_block;
};

struct RunConfig {
  tasks::TaskCatalog tasks;
  fingers::FeasibilityTable feasibility = fingers::default_feasibility_table();
  GraspSection grasp;
  SecondSection second;
  CurriculumSection curriculum;
  DatasetSection dataset;
  std::uint64_t seed = 0;
  std::string out = "runs";
  int workers = 0;

  // Tuned desk-scale defaults for the second phase: wider search, stronger
  // reach prior.
  RunConfig();

  tasks::TaskSpec grasp_spec() const { return tasks.spec(TaskKind::grasp); }
  tasks::TaskSpec second_spec() const { return tasks.spec(second.task); }
  std::vector<fingers::FingerConfiguration> configurations() const;
  // Throws ConfigError on inconsistent values.
  void validate() const;
};

Json to_json(const RunConfig& config);
// Strict: unknown keys and wrong types raise SchemaError naming the key path.
RunConfig run_config_from_json(const Json& j);
// "default" yields the built-in config. Throws LookupError for a missing file.
RunConfig load_run_config(const std::string& path);

}  // namespace dexseq::app
