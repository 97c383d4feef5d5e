#include "dexseq/optim/policy.hpp"

#include <algorithm>
#include <cmath>

#include "dexseq/errors.hpp"

namespace dexseq::optim {
namespace {

std::string_view kind_name(PolicyKind k) {
  switch (k) {
    case PolicyKind::affine: return "affine";
    case PolicyKind::axis_affine: return "axis_affine";
    case PolicyKind::mlp: return "mlp";
  }
  return "?";
}

PolicyKind kind_from_name(const std::string& name, const std::string& path) {
  if (name == "affine") return PolicyKind::affine;
  if (name == "axis_affine") return PolicyKind::axis_affine;
  if (name == "mlp") return PolicyKind::mlp;
  throw SchemaError(path, "unknown policy kind '" + name + "'");
}

double output_limit(const tasks::TaskSpec& spec, int index) {
  if (index < 3) return spec.physics.max_translation_delta;
  if (index < 6) return spec.physics.max_rotation_delta;
  return spec.physics.max_joint_delta;
}

}  // namespace

PolicyArchitecture default_architecture(const tasks::TaskSpec& spec) {
  PolicyArchitecture a;
  a.task = spec.kind;
  a.kind = spec.kind == TaskKind::twist ? PolicyKind::affine : PolicyKind::axis_affine;
  constexpr double kPosition = 30.0;
  switch (spec.kind) {
    case TaskKind::grasp:
      a.inputs = {{"grasp_block.rel_wrist", 100.0},
                  {"lift_goal.rel_block", 100.0},
                  {"grasp_block.attached", 10.0}};
      break;
    case TaskKind::push:
      a.inputs = {{"push_block.rel_wrist", kPosition}, {"goal.rel_object", kPosition}};
      break;
    case TaskKind::press:
      a.inputs = {{"goal.rel_manipulators", kPosition}, {"goal.rel_wrist", kPosition}};
      break;
    case TaskKind::twist:
      a.inputs = {{"knob.rel_wrist", kPosition}, {"knob.progress", 1.0}};
      break;
    case TaskKind::drawer:
      a.inputs = {{"handle.rel_wrist", kPosition}, {"articulation_positions", 10.0}};
      break;
    case TaskKind::two_pick:
      a.inputs = {{"second_block.rel_wrist", kPosition},
                  {"goal.rel_object", kPosition},
                  {"second_block.attached", 10.0}};
      break;
  }
  a.outputs = {0, 1, 2};
  if (spec.kind == TaskKind::twist) a.outputs.push_back(3);
  for (int o : a.outputs) a.output_limits.push_back(output_limit(spec, o));
  return a;
}

Policy::Policy(PolicyArchitecture arch, const tasks::TaskSpec& spec) : arch_(std::move(arch)) {
  bind(spec);
  params_.assign(static_cast<std::size_t>(parameter_count_), 0.0);
}

Policy::Policy(PolicyArchitecture arch, const tasks::TaskSpec& spec, std::vector<double> params)
    : arch_(std::move(arch)) {
  bind(spec);
  set_parameters(std::move(params));
}

void Policy::bind(const tasks::TaskSpec& spec) {
  if (arch_.task != spec.kind) {
    throw ConfigError("policy: architecture is for task '" + std::string(to_string(arch_.task)) +
                      "', not '" + std::string(to_string(spec.kind)) + "'");
  }
  const tasks::ObservationLayout layout = tasks::observation_layout(spec);
  observation_size_ = layout.size;
  action_dim_ = 6 + 2 * spec.finger_count;
  if (arch_.inputs.empty()) throw ConfigError("policy: no inputs");
  std::vector<int> slice_starts, slice_lengths;
  for (const auto& in : arch_.inputs) {
    const tasks::ObservationSlice* slice = nullptr;
    try {
      slice = &layout.find(in.name);
    } catch (const LookupError&) {
      throw ConfigError("policy: task '" + std::string(to_string(spec.kind)) +
                        "' has no observation '" + in.name + "'");
    }
    if (!std::isfinite(in.scale)) throw ConfigError("policy: non-finite input scale");
    if (arch_.kind == PolicyKind::axis_affine && slice->length != 1 && slice->length != 3) {
      throw ConfigError("policy: axis_affine inputs must be scalars or 3-vectors ('" + in.name + "')");
    }
    slice_starts.push_back(static_cast<int>(input_index_.size()));
    slice_lengths.push_back(slice->length);
    for (int i = 0; i < slice->length; ++i) {
      input_index_.push_back(slice->offset + i);
      input_scale_.push_back(in.scale);
    }
  }
  input_dim_ = static_cast<int>(input_index_.size());
  first_input_length_ = slice_lengths.front();
  if (arch_.outputs.empty()) throw ConfigError("policy: no outputs");
  if (arch_.output_limits.size() != arch_.outputs.size()) {
    throw ConfigError("policy: output_limits must match outputs");
  }
  for (std::size_t k = 0; k < arch_.outputs.size(); ++k) {
    if (arch_.outputs[k] < 0 || arch_.outputs[k] >= action_dim_) {
      throw ConfigError("policy: output index outside the action");
    }
    if (!(arch_.output_limits[k] >= 0.0)) throw ConfigError("policy: output limits must be >= 0");
  }
  if (!std::isfinite(arch_.bias_scale)) throw ConfigError("policy: non-finite bias scale");
  const int outs = static_cast<int>(arch_.outputs.size());
  rows_.clear();
  switch (arch_.kind) {
    case PolicyKind::affine:
    case PolicyKind::mlp: {
      const int rows = arch_.kind == PolicyKind::affine ? outs : arch_.hidden;
      if (arch_.kind == PolicyKind::mlp && arch_.hidden < 1) {
        throw ConfigError("policy: mlp needs hidden >= 1");
      }
      std::vector<int> all(static_cast<std::size_t>(input_dim_));
      for (int i = 0; i < input_dim_; ++i) all[static_cast<std::size_t>(i)] = i;
      rows_.assign(static_cast<std::size_t>(rows), all);
      break;
    }
    case PolicyKind::axis_affine:
      // Output k reads component k of every 3-vector and every scalar.
      for (int k = 0; k < outs; ++k) {
        const int axis = arch_.outputs[static_cast<std::size_t>(k)];
        if (axis > 2) throw ConfigError("policy: axis_affine drives base translation only");
        std::vector<int> row;
        for (std::size_t s = 0; s < slice_starts.size(); ++s) {
          row.push_back(slice_starts[s] + (slice_lengths[s] == 3 ? axis : 0));
        }
        rows_.push_back(std::move(row));
      }
      break;
  }
  parameter_count_ = 0;
  for (const auto& r : rows_) parameter_count_ += static_cast<int>(r.size()) + 1;
  if (arch_.kind == PolicyKind::mlp) parameter_count_ += (arch_.hidden + 1) * outs;
}

int parameter_count(const PolicyArchitecture& arch, const tasks::TaskSpec& spec) {
  return Policy(arch, spec).parameter_count();
}

void Policy::add_reach_prior(double gain) {
  if (arch_.kind == PolicyKind::mlp) throw ConfigError("policy: reach prior needs an affine policy");
  if (first_input_length_ != 3) throw ConfigError("policy: reach prior needs a 3-vector first input");
  std::size_t offset = 0;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const int axis = arch_.outputs[r];
    if (axis < 3) {
      for (std::size_t j = 0; j < rows_[r].size(); ++j) {
        if (rows_[r][j] == axis) params_[offset + j] += gain;
      }
    }
    offset += rows_[r].size() + 1;
  }
}

void Policy::set_parameters(std::vector<double> params) {
  if (static_cast<int>(params.size()) != parameter_count_) {
    throw ConfigError("policy: expected " + std::to_string(parameter_count_) +
                      " parameters, got " + std::to_string(params.size()));
  }
  params_ = std::move(params);
}

std::vector<double> Policy::act(std::span<const double> observation) const {
  if (static_cast<int>(observation.size()) != observation_size_) {
    throw ConfigError("policy: observation size mismatch");
  }
  std::vector<double> x(static_cast<std::size_t>(input_dim_));
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = observation[static_cast<std::size_t>(input_index_[i])];
    if (!std::isfinite(v)) throw InputError("policy: non-finite observation");
    x[i] = v * input_scale_[i];
  }
  // Each row holds its weights followed by its bias.
  const double c = arch_.bias_scale;
  const double* w = params_.data();
  std::vector<double> first(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    double acc = 0.0;
    for (int i : rows_[r]) acc += *w++ * x[static_cast<std::size_t>(i)];
    first[r] = acc + c * *w++;
  }
  const std::size_t outs = arch_.outputs.size();
  std::vector<double> y = std::move(first);
  if (arch_.kind == PolicyKind::mlp) {
    std::vector<double> h = std::move(y);
    for (double& v : h) v = std::tanh(v);
    y.assign(outs, 0.0);
    for (std::size_t k = 0; k < outs; ++k) {
      double acc = 0.0;
      for (double hv : h) acc += *w++ * hv;
      y[k] = acc + c * *w++;
    }
  }
  std::vector<double> action(static_cast<std::size_t>(action_dim_), 0.0);
  for (std::size_t k = 0; k < outs; ++k) {
    const double v = std::isfinite(y[k]) ? std::clamp(y[k], -1.0, 1.0) : 0.0;
    action[static_cast<std::size_t>(arch_.outputs[k])] = v * arch_.output_limits[k];
  }
  return action;
}

Json to_json(const PolicyArchitecture& a) {
  Json inputs = Json::array();
  for (const auto& in : a.inputs) inputs.push_back({{"name", in.name}, {"scale", in.scale}});
  return Json{{"kind", std::string(kind_name(a.kind))},
              {"task", std::string(to_string(a.task))},
              {"inputs", inputs},
              {"outputs", a.outputs},
              {"output_limits", a.output_limits},
              {"hidden", a.hidden},
              {"bias_scale", a.bias_scale}};
}

PolicyArchitecture architecture_from_json(const Json& j, const std::string& path) {
  require_known_keys(j, {"kind", "task", "inputs", "outputs", "output_limits", "hidden", "bias_scale"},
                     path);
  PolicyArchitecture a;
  if (auto it = j.find("kind"); it != j.end()) {
    if (!it->is_string()) throw SchemaError(join_path(path, "kind"), "expected a string");
    a.kind = kind_from_name(it->get<std::string>(), join_path(path, "kind"));
  }
  if (auto it = j.find("task"); it != j.end()) {
    if (!it->is_string()) throw SchemaError(join_path(path, "task"), "expected a string");
    a.task = task_kind_from_string(it->get<std::string>());
  }
  if (auto it = j.find("inputs"); it != j.end()) {
    if (!it->is_array()) throw SchemaError(join_path(path, "inputs"), "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string p = join_path(path, "inputs") + "[" + std::to_string(i) + "]";
      const Json& e = (*it)[i];
      require_known_keys(e, {"name", "scale"}, p);
      PolicyInput in;
      detail::field_from_json(e.at("name"), in.name, join_path(p, "name"));
      if (e.contains("scale")) detail::field_from_json(e["scale"], in.scale, join_path(p, "scale"));
      a.inputs.push_back(in);
    }
  }
  if (auto it = j.find("outputs"); it != j.end()) {
    detail::field_from_json(*it, a.outputs, join_path(path, "outputs"));
  }
  if (auto it = j.find("output_limits"); it != j.end()) {
    detail::field_from_json(*it, a.output_limits, join_path(path, "output_limits"));
  }
  if (auto it = j.find("hidden"); it != j.end()) {
    detail::field_from_json(*it, a.hidden, join_path(path, "hidden"));
  }
  if (auto it = j.find("bias_scale"); it != j.end()) {
    detail::field_from_json(*it, a.bias_scale, join_path(path, "bias_scale"));
  }
  return a;
}

Json to_json(const Policy& policy) {
  return Json{{"architecture", to_json(policy.architecture())}, {"parameters", policy.parameters()}};
}

Policy policy_from_json(const Json& j, const tasks::TaskSpec& spec) {
  require_known_keys(j, {"architecture", "parameters"}, "policy");
  if (!j.contains("architecture") || !j.contains("parameters")) {
    throw SchemaError("policy", "checkpoint needs architecture and parameters");
  }
  std::vector<double> params;
  detail::field_from_json(j["parameters"], params, "policy.parameters");
  return Policy(architecture_from_json(j["architecture"], "policy.architecture"), spec,
                std::move(params));
}

}  // namespace dexseq::optim
