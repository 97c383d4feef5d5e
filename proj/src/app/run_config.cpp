#include "dexseq/app/run_config.hpp"

#include <fstream>

#include "dexseq/errors.hpp"

namespace dexseq::app {
namespace {

using randomization::Stage;

Stage stage_field(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a stage name");
  try {
    return randomization::stage_from_string(j.get<std::string>());
  } catch (const ConfigError& e) {
    throw SchemaError(path, e.what());
  }
}

randomization::Scope scope_field(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a scope name");
  try {
    return randomization::scope_from_string(j.get<std::string>());
  } catch (const ConfigError& e) {
    throw SchemaError(path, e.what());
  }
}

Json phase_to_json(const PhaseSettings& p) {
  return Json{{"budget", p.budget},
              {"reach_prior", p.reach_prior},
              {"stage", std::string(to_string(p.stage))},
              {"eval_episodes", p.eval_episodes},
              {"cem", fields_to_json(p.cem)},
              {"architecture", p.architecture ? optim::to_json(*p.architecture) : Json(nullptr)}};
}

void phase_from_json(const Json& j, PhaseSettings& p, const std::string& path) {
  require_known_keys(j, {"budget", "reach_prior", "stage", "eval_episodes", "cem", "architecture"}, path);
  if (j.contains("budget")) detail::field_from_json(j["budget"], p.budget, join_path(path, "budget"));
  if (j.contains("reach_prior")) {
    detail::field_from_json(j["reach_prior"], p.reach_prior, join_path(path, "reach_prior"));
  }
  if (j.contains("stage")) p.stage = stage_field(j["stage"], join_path(path, "stage"));
  if (j.contains("eval_episodes")) {
    detail::field_from_json(j["eval_episodes"], p.eval_episodes, join_path(path, "eval_episodes"));
  }
  if (j.contains("cem")) fields_from_json(j["cem"], p.cem, join_path(path, "cem"));
  if (j.contains("architecture")) {
    if (j["architecture"].is_null()) {
      p.architecture.reset();
    } else {
      p.architecture = optim::architecture_from_json(j["architecture"], join_path(path, "architecture"));
    }
  }
}

void validate_phase(const PhaseSettings& p, const std::string& name) {
  if (p.budget <= 0) throw ConfigError(name + ".budget must be > 0");
  if (p.eval_episodes < 1) throw ConfigError(name + ".eval_episodes must be >= 1");
  p.cem.validate();
}

const char* to_string(RankingSource s) {
  return s == RankingSource::evaluation ? "evaluation" : "training_max";
}

}  // namespace

optim::PolicyArchitecture PhaseSettings::architecture_for(const tasks::TaskSpec& spec) const {
  if (architecture) return *architecture;
  return optim::default_architecture(spec);
}

RunConfig::RunConfig() {
  second.train.reach_prior = 1.0;
  second.train.stage = Stage::C0;
  second.train.cem.initial_std = 0.5;
}

std::vector<fingers::FingerConfiguration> RunConfig::configurations() const {
  return fingers::enumerate_configurations(tasks.finger_count, feasibility);
}

void RunConfig::validate() const {
  grasp_spec().validate();
  if (second.task == TaskKind::grasp) throw ConfigError("second.task must not be grasp");
  second_spec().validate();
  const auto configs = configurations();
  fingers::find_configuration(configs, grasp.config_id);
  for (int id : curriculum.candidates) fingers::find_configuration(configs, id);
  if (grasp.terminal_episodes < 1) throw ConfigError("grasp.terminal_episodes must be >= 1");
  validate_phase(grasp.train, "grasp");
  validate_phase(second.train, "second");
  curriculum.schedule.validate();
  if (curriculum.grasp_budget <= 0) throw ConfigError("curriculum.grasp_budget must be > 0");
  if (curriculum.eval_episodes < 1) throw ConfigError("curriculum.eval_episodes must be >= 1");
  if (dataset.size < 0) throw ConfigError("dataset.size must be >= 0");
  if (dataset.queries < 0) throw ConfigError("dataset.queries must be >= 0");
  if (dataset.max_attempts_per_trajectory < 1) {
    throw ConfigError("dataset.max_attempts_per_trajectory must be >= 1");
  }
  if (workers < 0) throw ConfigError("workers must be >= 0");
  if (out.empty()) throw ConfigError("out must not be empty");
}

Json to_json(const RunConfig& c) {
  Json j = Json::object();
  j["tasks"] = tasks::to_json(c.tasks);
  j["feasibility"] = fingers::to_json(c.feasibility);
  j["grasp"] = Json{{"config_id", c.grasp.config_id},
                    {"terminal_episodes", c.grasp.terminal_episodes},
                    {"train", phase_to_json(c.grasp.train)}};
  j["second"] = Json{{"task", std::string(to_string(c.second.task))}, {"train", phase_to_json(c.second.train)}};
  j["curriculum"] = Json{{"schedule", curriculum::to_json(c.curriculum.schedule)},
                         {"candidates", c.curriculum.candidates},
                         {"grasp_budget", c.curriculum.grasp_budget},
                         {"eval_episodes", c.curriculum.eval_episodes},
                         {"ranking", to_string(c.curriculum.ranking)}};
  j["dataset"] = Json{{"size", c.dataset.size},
                      {"queries", c.dataset.queries},
                      {"max_attempts_per_trajectory", c.dataset.max_attempts_per_trajectory},
                      {"stage", std::string(to_string(c.dataset.stage))},
                      {"scope", std::string(to_string(c.dataset.scope))}};
  j["seed"] = c.seed;
  j["out"] = c.out;
  j["workers"] = c.workers;
  return j;
}

RunConfig run_config_from_json(const Json& j) {
  RunConfig c;
  require_known_keys(j, {"tasks", "feasibility", "grasp", "second", "curriculum", "dataset", "seed", "out", "workers"},
                     "");
  if (j.contains("tasks")) c.tasks = tasks::task_catalog_from_json(j["tasks"], "tasks");
  if (j.contains("feasibility")) c.feasibility = fingers::feasibility_table_from_json(j["feasibility"], "feasibility");
  if (j.contains("grasp")) {
    const Json& g = j["grasp"];
    require_known_keys(g, {"config_id", "terminal_episodes", "train"}, "grasp");
    if (g.contains("config_id")) detail::field_from_json(g["config_id"], c.grasp.config_id, "grasp.config_id");
    if (g.contains("terminal_episodes")) {
      detail::field_from_json(g["terminal_episodes"], c.grasp.terminal_episodes, "grasp.terminal_episodes");
    }
    if (g.contains("train")) phase_from_json(g["train"], c.grasp.train, "grasp.train");
  }
  if (j.contains("second")) {
    const Json& s = j["second"];
    require_known_keys(s, {"task", "train"}, "second");
    if (s.contains("task")) {
      if (!s["task"].is_string()) throw SchemaError("second.task", "expected a task name");
      const auto kind = parse_task_kind(s["task"].get<std::string>());
      if (!kind) throw SchemaError("second.task", "unknown task kind");
      c.second.task = *kind;
    }
    if (s.contains("train")) phase_from_json(s["train"], c.second.train, "second.train");
  }
  if (j.contains("curriculum")) {
    const Json& k = j["curriculum"];
    require_known_keys(k, {"schedule", "candidates", "grasp_budget", "eval_episodes", "ranking"}, "curriculum");
    if (k.contains("schedule")) {
      c.curriculum.schedule = curriculum::curriculum_config_from_json(k["schedule"], "curriculum.schedule");
    }
    if (k.contains("candidates")) {
      detail::field_from_json(k["candidates"], c.curriculum.candidates, "curriculum.candidates");
    }
    if (k.contains("grasp_budget")) {
      detail::field_from_json(k["grasp_budget"], c.curriculum.grasp_budget, "curriculum.grasp_budget");
    }
    if (k.contains("eval_episodes")) {
      detail::field_from_json(k["eval_episodes"], c.curriculum.eval_episodes, "curriculum.eval_episodes");
    }
    if (k.contains("ranking")) {
      const Json& r = k["ranking"];
      if (r == "evaluation") {
        c.curriculum.ranking = RankingSource::evaluation;
      } else if (r == "training_max") {
        c.curriculum.ranking = RankingSource::training_max;
      } else {
        throw SchemaError("curriculum.ranking", "expected \"evaluation\" or \"training_max\"");
      }
    }
  }
  if (j.contains("dataset")) {
    const Json& d = j["dataset"];
    require_known_keys(d, {"size", "queries", "max_attempts_per_trajectory", "stage", "scope"}, "dataset");
    if (d.contains("size")) detail::field_from_json(d["size"], c.dataset.size, "dataset.size");
    if (d.contains("queries")) detail::field_from_json(d["queries"], c.dataset.queries, "dataset.queries");
    if (d.contains("max_attempts_per_trajectory")) {
      detail::field_from_json(d["max_attempts_per_trajectory"], c.dataset.max_attempts_per_trajectory,
                              "dataset.max_attempts_per_trajectory");
    }
    if (d.contains("stage")) c.dataset.stage = stage_field(d["stage"], "dataset.stage");
    if (d.contains("scope")) c.dataset.scope = scope_field(d["scope"], "dataset.scope");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw SchemaError("seed", "expected a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("out")) detail::field_from_json(j["out"], c.out, "out");
  if (j.contains("workers")) detail::field_from_json(j["workers"], c.workers, "workers");
  c.validate();
  return c;
}

RunConfig load_run_config(const std::string& path) {
  if (path == "default") return RunConfig{};
  std::ifstream in(path);
  if (!in) throw LookupError("config file not found: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(path, std::string("invalid JSON (") + e.what() + ")");
  }
  return run_config_from_json(j);
}

}  // namespace dexseq::app
