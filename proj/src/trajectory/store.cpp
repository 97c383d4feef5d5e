#include "dexseq/trajectory/store.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>

#include "dexseq/errors.hpp"
#include "dexseq/random.hpp"
#include "dexseq/sandbox/step.hpp"
#include "dexseq/tasks/scene_builder.hpp"
#include "dexseq/tasks/task_queries.hpp"
#include "dexseq/util/parallel.hpp"

namespace dexseq::trajectory {
namespace {

constexpr const char* kFormat = "dexseq-trajectories";
constexpr int kVersion = 1;

RunFlags final_flags(const sandbox::Scene& scene, const tasks::TaskSpec& spec,
                     const fingers::FingerConfiguration& config) {
  const fingers::FingerConfiguration second = fingers::reverse_roles(config);
  RunFlags f;
  f.held = tasks::is_grasped(scene, second.holding(), spec.success.grasp_hold_radius);
  f.objective = tasks::objective_met(scene, spec, second);
  return f;
}

bool grasp_done(const sandbox::Scene& scene, const tasks::TaskSpec& spec,
                const fingers::FingerConfiguration& config) {
  tasks::TaskSpec view = spec;
  view.kind = TaskKind::grasp;
  return tasks::subtask_success(scene, view, config);
}

}  // namespace

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::success_both: return "success-both";
    case Outcome::fail_subtask1_only: return "fail-subtask1-only";
    case Outcome::fail_subtask2_only: return "fail-subtask2-only";
    case Outcome::fail_both: return "fail-both";
  }
  return "?";
}

Outcome classify(bool held, bool objective) {
  if (held && objective) return Outcome::success_both;
  if (!held && objective) return Outcome::fail_subtask1_only;
  if (held) return Outcome::fail_subtask2_only;
  return Outcome::fail_both;
}

sandbox::Scene initial_scene(const tasks::TaskSpec& spec, const randomization::RandomizationDraw& draw,
                             const fingers::FingerConfiguration& config) {
  return tasks::build_scene(spec, draw, config);
}

RunFlags run_pair(const tasks::TaskSpec& grasp_spec, const tasks::TaskSpec& spec,
                  const fingers::FingerConfiguration& config, const PolicyPair& policies,
                  const sandbox::Scene& start, std::vector<std::vector<double>>& actions) {
  if (policies.grasp == nullptr || policies.second == nullptr) {
    throw ConfigError("run_pair: both policies are required");
  }
  const fingers::FingerConfiguration second = fingers::reverse_roles(config);
  const sandbox::StepParams grasp_params = tasks::step_params_for(spec, config, true);
  const sandbox::StepParams second_params = tasks::step_params_for(spec, second, false);
  sandbox::Scene scene = start;
  RunFlags flags;
  for (int t = 0; t < grasp_spec.horizon; ++t) {
    std::vector<double> a = policies.grasp->act(tasks::observe(scene, grasp_spec, config));
    scene.state = sandbox::step_scene(scene.geometry, scene.state, a, grasp_params);
    actions.push_back(std::move(a));
  }
  flags.grasp_success = grasp_done(scene, spec, config);
  // The second policy sees step counts relative to its own phase.
  const int offset = scene.state.step_index;
  for (int t = 0; t < spec.horizon; ++t) {
    sandbox::Scene view = scene;
    view.state.step_index -= offset;
    std::vector<double> a = policies.second->act(tasks::observe(view, spec, second));
    scene.state = sandbox::step_scene(scene.geometry, scene.state, a, second_params);
    actions.push_back(std::move(a));
  }
  const RunFlags end = final_flags(scene, spec, config);
  flags.held = end.held;
  flags.objective = end.objective;
  return flags;
}

RunFlags replay(const tasks::TaskSpec& spec, const fingers::FingerConfiguration& config,
                const sandbox::Scene& start, const std::vector<std::vector<double>>& actions,
                int grasp_steps) {
  const fingers::FingerConfiguration second = fingers::reverse_roles(config);
  const sandbox::StepParams grasp_params = tasks::step_params_for(spec, config, true);
  const sandbox::StepParams second_params = tasks::step_params_for(spec, second, false);
  sandbox::Scene scene = start;
  RunFlags flags;
  for (std::size_t t = 0; t < actions.size(); ++t) {
    const bool grasp_phase = static_cast<int>(t) < grasp_steps;
    scene.state = sandbox::step_scene(scene.geometry, scene.state, actions[t],
                                      grasp_phase ? grasp_params : second_params);
    if (static_cast<int>(t) + 1 == grasp_steps) flags.grasp_success = grasp_done(scene, spec, config);
  }
  const RunFlags end = final_flags(scene, spec, config);
  flags.held = end.held;
  flags.objective = end.objective;
  return flags;
}

std::string policy_checksum(const PolicyPair& policies) {
  // FNV-1a over the raw parameter bytes of both policies.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](const optim::Policy* p) {
    if (p == nullptr) return;
    for (double v : p->parameters()) {
      unsigned char bytes[sizeof(double)];
      std::memcpy(bytes, &v, sizeof(double));
      for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
      }
    }
  };
  feed(policies.grasp);
  feed(policies.second);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Dataset collect_dataset(const tasks::TaskSpec& grasp_spec, const tasks::TaskSpec& spec,
                        const fingers::FingerConfiguration& config, const PolicyPair& policies, int n,
                        std::uint64_t seed, const CollectOptions& options) {
  if (n < 0) throw ConfigError("dataset: n must be >= 0");
  if (spec.kind == TaskKind::grasp) throw ConfigError("dataset: needs a second-subtask spec");
  if (options.max_attempts_per_trajectory < 1) {
    throw ConfigError("dataset: max_attempts_per_trajectory must be >= 1");
  }
  Dataset dataset;
  if (n == 0) return dataset;
  const std::string checksum = policy_checksum(policies);
  const int cap = n * options.max_attempts_per_trajectory;
  const int batch = std::max(1, options.workers > 0 ? options.workers : default_workers()) * 4;
  int attempts = 0;
  while (static_cast<int>(dataset.trajectories.size()) < n && attempts < cap) {
    const int count = std::min(batch, cap - attempts);
    std::vector<std::optional<Trajectory>> found(static_cast<std::size_t>(count));
    parallel_for(count, options.workers, [&](int k) {
      const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(attempts + k));
      Rng rng(s);
      Trajectory t;
      t.task = spec.kind;
      t.config = config;
      t.draw = randomization::sample_scene(spec.ranges, options.stage, rng, options.scope);
      const sandbox::Scene scene = initial_scene(spec, t.draw, config);
      t.initial_position = scene.state.object_poses[tasks::kGraspBlock].position;
      t.initial_yaw = scene.state.object_poses[tasks::kGraspBlock].yaw;
      t.grasp_steps = grasp_spec.horizon;
      const RunFlags live = run_pair(grasp_spec, spec, config, policies, scene, t.actions);
      if (!(live.held && live.objective)) return;
      const RunFlags again = replay(spec, config, scene, t.actions, t.grasp_steps);
      if (!(again.held && again.objective)) return;
      t.grasp_success = again.grasp_success;
      t.held = again.held;
      t.objective = again.objective;
      t.seed = s;
      t.policy_checksum = checksum;
      found[static_cast<std::size_t>(k)] = std::move(t);
    });
    for (auto& f : found) {
      if (f && static_cast<int>(dataset.trajectories.size()) < n) {
        f->id = static_cast<int>(dataset.trajectories.size());
        dataset.trajectories.push_back(std::move(*f));
      }
    }
    attempts += count;
  }
  if (static_cast<int>(dataset.trajectories.size()) < n) {
    throw PartialDatasetError(n, static_cast<int>(dataset.trajectories.size()), attempts);
  }
  return dataset;
}

int retrieve(const Dataset& dataset, const Vec3& query) {
  if (dataset.trajectories.empty()) throw LookupError("retrieve: dataset is empty");
  if (!query.allFinite()) throw InputError("retrieve: query is not finite");
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& t : dataset.trajectories) {
    const double d = (t.initial_position - query).squaredNorm();
    if (d < best_d || (d == best_d && t.id < best)) {
      best_d = d;
      best = t.id;
    }
  }
  return best;
}

const Trajectory& find_trajectory(const Dataset& dataset, int id) {
  for (const auto& t : dataset.trajectories) {
    if (t.id == id) return t;
  }
  throw LookupError("trajectory " + std::to_string(id) + " not in dataset");
}

Outcome execute_open_loop(const Trajectory& t, const tasks::TaskSpec& spec, const sandbox::Scene& scene) {
  if (t.task != spec.kind) throw ConfigError("execute: trajectory and scene tasks differ");
  if (static_cast<int>(t.actions.size()) != t.grasp_steps + spec.horizon) {
    throw InputError("execute: trajectory has " + std::to_string(t.actions.size()) +
                     " actions, the task expects " + std::to_string(t.grasp_steps + spec.horizon));
  }
  const RunFlags f = replay(spec, t.config, scene, t.actions, t.grasp_steps);
  return classify(f.held, f.objective);
}

Json to_json(const Trajectory& t) {
  return Json{{"id", t.id},
              {"task", std::string(to_string(t.task))},
              {"config", fingers::to_json(t.config)},
              {"initial_position", detail::field_to_json(t.initial_position)},
              {"initial_yaw", t.initial_yaw},
              {"draw", randomization::to_json(t.draw)},
              {"grasp_steps", t.grasp_steps},
              {"actions", t.actions},
              {"grasp_success", t.grasp_success},
              {"held", t.held},
              {"objective", t.objective},
              {"seed", t.seed},
              {"policy_checksum", t.policy_checksum}};
}

Trajectory trajectory_from_json(const Json& j) {
  const std::string path = "trajectory";
  require_known_keys(j,
                     {"id", "task", "config", "initial_position", "initial_yaw", "draw",
                      "grasp_steps", "actions", "grasp_success", "held", "objective", "seed",
                      "policy_checksum"},
                     path);
  for (const char* key : {"id", "task", "config", "initial_position", "draw", "grasp_steps", "actions"}) {
    if (!j.contains(key)) throw SchemaError(join_path(path, key), "missing");
  }
  Trajectory t;
  detail::field_from_json(j["id"], t.id, "trajectory.id");
  if (!j["task"].is_string()) throw SchemaError("trajectory.task", "expected a string");
  t.task = task_kind_from_string(j["task"].get<std::string>());
  t.config = fingers::finger_configuration_from_json(j["config"], "trajectory.config");
  detail::field_from_json(j["initial_position"], t.initial_position, "trajectory.initial_position");
  if (j.contains("initial_yaw")) detail::field_from_json(j["initial_yaw"], t.initial_yaw, "trajectory.initial_yaw");
  t.draw = randomization::draw_from_json(j["draw"]);
  detail::field_from_json(j["grasp_steps"], t.grasp_steps, "trajectory.grasp_steps");
  detail::field_from_json(j["actions"], t.actions, "trajectory.actions");
  if (j.contains("grasp_success")) detail::field_from_json(j["grasp_success"], t.grasp_success, "trajectory.grasp_success");
  if (j.contains("held")) detail::field_from_json(j["held"], t.held, "trajectory.held");
  if (j.contains("objective")) detail::field_from_json(j["objective"], t.objective, "trajectory.objective");
  if (j.contains("seed")) detail::field_from_json(j["seed"], t.seed, "trajectory.seed");
  if (j.contains("policy_checksum")) {
    detail::field_from_json(j["policy_checksum"], t.policy_checksum, "trajectory.policy_checksum");
  }
  return t;
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw LookupError("cannot write dataset file " + path.string());
  out << Json{{"format", kFormat}, {"version", kVersion}}.dump() << '\n';
  for (const auto& t : dataset.trajectories) out << to_json(t).dump() << '\n';
  if (!out) throw LookupError("failed writing dataset file " + path.string());
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LookupError("dataset file not found: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("dataset", "missing header line");
  Json header;
  try {
    header = Json::parse(line);
  } catch (const Json::parse_error& e) {
    throw SchemaError("dataset.header", e.what());
  }
  if (!header.is_object() || header.value("format", "") != kFormat) {
    throw SchemaError("dataset.header", "not a trajectory dataset");
  }
  if (header.value("version", 0) != kVersion) {
    throw SchemaError("dataset.header.version", "unsupported version");
  }
  Dataset d;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      d.trajectories.push_back(trajectory_from_json(Json::parse(line)));
    } catch (const Json::parse_error& e) {
      throw SchemaError("dataset line " + std::to_string(line_no), e.what());
    }
  }
  return d;
}

}  // namespace dexseq::trajectory
