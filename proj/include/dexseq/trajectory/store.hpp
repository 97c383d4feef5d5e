#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dexseq/fingers/finger_config.hpp"
#include "dexseq/json_fields.hpp"
#include "dexseq/optim/policy.hpp"
#include "dexseq/randomization/randomizer.hpp"
#include "dexseq/sandbox/scene.hpp"
#include "dexseq/tasks/task_spec.hpp"

namespace dexseq::trajectory {

enum class Outcome { success_both, fail_subtask1_only, fail_subtask2_only, fail_both };

std::string_view to_string(Outcome outcome);
// held: the grasp block is still held at the end; objective: the second
// objective is met at the end.
Outcome classify(bool held, bool objective);

struct Trajectory {
  int id = 0;
  TaskKind task = TaskKind::push;
  fingers::FingerConfiguration config;  // grasping role
  Vec3 initial_position = Vec3::Zero();  // grasp block at the start
  double initial_yaw = 0.0;
  randomization::RandomizationDraw draw;
  int grasp_steps = 0;
  std::vector<std::vector<double>> actions;
  bool grasp_success = false;  // grasp objective held when the phases switched
  bool held = false;
  bool objective = false;
  std::uint64_t seed = 0;
  std::string policy_checksum;

  bool operator==(const Trajectory&) const = default;
};

struct Dataset {
  std::vector<Trajectory> trajectories;
};

// Both phases of a sequential task: grasp_policy for grasp_spec.horizon
// steps, then second_policy with reversed roles for spec.horizon steps.
struct PolicyPair {
  const optim::Policy* grasp = nullptr;
  const optim::Policy* second = nullptr;
};

struct RunFlags {
  bool grasp_success = false;
  bool held = false;
  bool objective = false;
};

// Fresh scene for spec.kind with the grasp block and every task fixture.
sandbox::Scene initial_scene(const tasks::TaskSpec& spec, const randomization::RandomizationDraw& draw,
                             const fingers::FingerConfiguration& config);

// Closed-loop run of both phases from `scene`; executed actions are appended
// to `actions`.
RunFlags run_pair(const tasks::TaskSpec& grasp_spec, const tasks::TaskSpec& spec,
                  const fingers::FingerConfiguration& config, const PolicyPair& policies,
                  const sandbox::Scene& scene, std::vector<std::vector<double>>& actions);

// Open-loop replay of `actions` from `scene`; the first grasp_steps steps use
// grasp-phase contact rules.
RunFlags replay(const tasks::TaskSpec& spec, const fingers::FingerConfiguration& config,
                const sandbox::Scene& scene, const std::vector<std::vector<double>>& actions,
                int grasp_steps);

std::string policy_checksum(const PolicyPair& policies);

struct CollectOptions {
  randomization::Stage stage = randomization::Stage::C2;
  randomization::Scope scope = randomization::Scope::grasp_block;
  int max_attempts_per_trajectory = 20;
  int workers = 0;
};

// Runs seeded episodes until n are successful for both subtasks and confirmed
// by an open-loop replay. Attempt i uses seed derive_seed(seed, i); ids are
// 0..n-1 in attempt order. Throws PartialDatasetError after
// n * max_attempts_per_trajectory attempts.
Dataset collect_dataset(const tasks::TaskSpec& grasp_spec, const tasks::TaskSpec& spec,
                        const fingers::FingerConfiguration& config, const PolicyPair& policies,
                        int n, std::uint64_t seed, const CollectOptions& options = {});

// Id of the trajectory whose initial position is nearest to `query`; ties go
// to the lowest id. Throws LookupError on an empty dataset and InputError on a
// non-finite query.
int retrieve(const Dataset& dataset, const Vec3& query);

const Trajectory& find_trajectory(const Dataset& dataset, int id);

// Replays the trajectory on `scene`. Throws ConfigError when the task kinds
// differ and InputError when the action count does not match
// grasp_steps + spec.horizon.
Outcome execute_open_loop(const Trajectory& trajectory, const tasks::TaskSpec& spec,
                          const sandbox::Scene& scene);

Json to_json(const Trajectory& t);
Trajectory trajectory_from_json(const Json& j);

// Line-delimited: a header line, then one trajectory per line.
void save_dataset(const Dataset& dataset, const std::filesystem::path& path);
// Throws LookupError when the file is missing and SchemaError on a bad
// header or record.
Dataset load_dataset(const std::filesystem::path& path);

}  // namespace dexseq::trajectory
