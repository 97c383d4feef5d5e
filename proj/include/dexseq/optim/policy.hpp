#pragma once

#include <span>
#include <string>
#include <vector>

#include "dexseq/json_fields.hpp"
#include "dexseq/tasks/task_queries.hpp"
#include "dexseq/tasks/task_spec.hpp"

namespace dexseq::optim {

struct PolicyInput {
  std::string name;  // observation slice
  double scale = 1.0;

  bool operator==(const PolicyInput&) const = default;
};

enum class PolicyKind { affine, axis_affine, mlp };

// Maps selected observation slices to selected action entries:
//   affine       y = clamp(W x + c b, -1, 1)
//   axis_affine  as affine, but output k (a base translation axis) only reads
//                component k of each 3-vector input plus the scalar inputs
//   mlp          y = clamp(W2 tanh(W1 x + c b1) + c b2, -1, 1)
// with c = bias_scale, so unit-sized parameters give decisive commands.
// and writes y[k] * output_limits[k] into action entry outputs[k]. Other
// action entries stay zero.
struct PolicyArchitecture {
  PolicyKind kind = PolicyKind::affine;
  TaskKind task = TaskKind::grasp;
  std::vector<PolicyInput> inputs;
  std::vector<int> outputs;
  std::vector<double> output_limits;
  int hidden = 0;
  double bias_scale = 1.0;

  bool operator==(const PolicyArchitecture&) const = default;
};

// Relative-position features for the task and xyz base commands, with limits
// taken from the task's physics settings. Axis-aligned except for twist,
// which also drives the base yaw.
PolicyArchitecture default_architecture(const tasks::TaskSpec& spec);

class Policy {
 public:
  // Zero parameters. Throws ConfigError when an input slice does not exist
  // for the task, an output index is outside the action, or the limits do not
  // match the outputs.
  Policy(PolicyArchitecture arch, const tasks::TaskSpec& spec);
  Policy(PolicyArchitecture arch, const tasks::TaskSpec& spec, std::vector<double> params);

  const PolicyArchitecture& architecture() const { return arch_; }
  const std::vector<double>& parameters() const { return params_; }
  // Throws ConfigError on a size mismatch.
  void set_parameters(std::vector<double> params);
  int parameter_count() const { return static_cast<int>(params_.size()); }
  int input_dim() const { return input_dim_; }
  int action_dim() const { return action_dim_; }

  // Adds `gain` to the weight linking each base translation output to the
  // same component of the first input, which must be a 3-vector (usually the
  // target position relative to the wrist). Throws ConfigError for mlp
  // policies and when the first input is not a 3-vector.
  void add_reach_prior(double gain);

  // Throws ConfigError when the observation size differs from the layout and
  // InputError on non-finite entries.
  std::vector<double> act(std::span<const double> observation) const;

 private:
  void bind(const tasks::TaskSpec& spec);

  PolicyArchitecture arch_;
  std::vector<double> params_;
  std::vector<int> input_index_;
  std::vector<double> input_scale_;
  // Input positions read by each first-layer row.
  std::vector<std::vector<int>> rows_;
  int first_input_length_ = 0;
  int parameter_count_ = 0;
  int input_dim_ = 0;
  int observation_size_ = 0;
  int action_dim_ = 0;
};

int parameter_count(const PolicyArchitecture& arch, const tasks::TaskSpec& spec);

// Checkpoint: {"architecture": {...}, "parameters": [...]}.
Json to_json(const Policy& policy);
Json to_json(const PolicyArchitecture& arch);
PolicyArchitecture architecture_from_json(const Json& j, const std::string& path = "architecture");
Policy policy_from_json(const Json& j, const tasks::TaskSpec& spec);

}  // namespace dexseq::optim
