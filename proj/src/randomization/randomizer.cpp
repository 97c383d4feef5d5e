#include "dexseq/randomization/randomizer.hpp"

#include <cmath>
#include <string>

#include "dexseq/errors.hpp"

namespace dexseq::randomization {
namespace {

constexpr std::array<std::string_view, kParameterCount> kParameterNames{
    "grasp_block_dx", "grasp_block_dy", "grasp_block_yaw",
    "push_block_dx",  "push_block_dy",  "push_goal_dx",
    "push_goal_dy",   "push_yaw",       "knob_dx",
    "knob_dy",        "knob_rotation",  "knob_initial_joint",
    "button_dx",      "button_dy",      "button_rotation",
    "cabinet_arc",    "cabinet_dx",     "cabinet_dy",
    "cabinet_rotation", "second_block_dx", "second_block_dy",
    "mass_scale",     "friction",       "restitution",
    "link_mass_scale"};

double half_width(const RandomizationRanges& r, Parameter p) {
  switch (p) {
    case Parameter::grasp_block_dx:
    case Parameter::grasp_block_dy: return r.grasp_block_offset;
    case Parameter::grasp_block_yaw: return r.grasp_block_yaw;
    case Parameter::push_block_dx:
    case Parameter::push_block_dy: return r.push_block_offset;
    case Parameter::push_goal_dx:
    case Parameter::push_goal_dy: return r.push_goal_offset;
    case Parameter::push_yaw: return r.push_yaw;
    case Parameter::knob_dx:
    case Parameter::knob_dy: return r.knob_offset;
    case Parameter::knob_rotation: return r.knob_rotation;
    case Parameter::knob_initial_joint: return r.knob_initial_joint;
    case Parameter::button_dx:
    case Parameter::button_dy: return r.button_offset;
    case Parameter::button_rotation: return r.button_rotation;
    case Parameter::cabinet_arc: return r.cabinet_arc;
    case Parameter::cabinet_dx:
    case Parameter::cabinet_dy: return r.cabinet_offset;
    case Parameter::cabinet_rotation: return r.cabinet_rotation;
    case Parameter::second_block_dx:
    case Parameter::second_block_dy: return r.second_block_offset;
    default: return 0.0;
  }
}

Interval physical_interval(const RandomizationRanges& r, Parameter p) {
  switch (p) {
    case Parameter::mass_scale:
    case Parameter::link_mass_scale: return {r.mass_scale_lo, r.mass_scale_hi};
    case Parameter::friction: return {r.friction_lo, r.friction_hi};
    default: return {r.restitution_lo, r.restitution_hi};
  }
}

double nominal_physical(const RandomizationRanges& r, Parameter p) {
  switch (p) {
    case Parameter::mass_scale:
    case Parameter::link_mass_scale: return 1.0;
    case Parameter::friction: return r.nominal_friction;
    default: return r.nominal_restitution;
  }
}

double* parameter_slot(RandomizationDraw& d, Parameter p) {
  switch (p) {
    case Parameter::grasp_block_dx: return &d.grasp_block_dx;
    case Parameter::grasp_block_dy: return &d.grasp_block_dy;
    case Parameter::grasp_block_yaw: return &d.grasp_block_yaw;
    case Parameter::push_block_dx: return &d.push_block_dx;
    case Parameter::push_block_dy: return &d.push_block_dy;
    case Parameter::push_goal_dx: return &d.push_goal_dx;
    case Parameter::push_goal_dy: return &d.push_goal_dy;
    case Parameter::push_yaw: return &d.push_yaw;
    case Parameter::knob_dx: return &d.knob_dx;
    case Parameter::knob_dy: return &d.knob_dy;
    case Parameter::knob_rotation: return &d.knob_rotation;
    case Parameter::knob_initial_joint: return &d.knob_initial_joint;
    case Parameter::button_dx: return &d.button_dx;
    case Parameter::button_dy: return &d.button_dy;
    case Parameter::button_rotation: return &d.button_rotation;
    case Parameter::cabinet_arc: return &d.cabinet_arc;
    case Parameter::cabinet_dx: return &d.cabinet_dx;
    case Parameter::cabinet_dy: return &d.cabinet_dy;
    case Parameter::cabinet_rotation: return &d.cabinet_rotation;
    case Parameter::second_block_dx: return &d.second_block_dx;
    case Parameter::second_block_dy: return &d.second_block_dy;
    case Parameter::mass_scale: return &d.mass_scale;
    case Parameter::friction: return &d.friction;
    case Parameter::restitution: return &d.restitution;
    case Parameter::link_mass_scale: return &d.link_mass_scale;
  }
  return nullptr;
}

}  // namespace

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::C0: return "C0";
    case Stage::C1: return "C1";
    case Stage::C2: return "C2";
  }
  return "?";
}

Stage stage_from_string(std::string_view name) {
  for (Stage s : kAllStages) {
    if (to_string(s) == name) return s;
  }
  throw ConfigError("unknown curriculum stage '" + std::string(name) + "'");
}

void RandomizationRanges::validate() const {
  RandomizationRanges copy = *this;
  copy.visit_fields([](const char* name, auto& v) {
    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, double>) {
      if (!std::isfinite(v)) throw ConfigError(std::string("randomization.") + name + " is not finite");
    }
  });
  for (int i = 0; i < kParameterCount; ++i) {
    const auto p = static_cast<Parameter>(i);
    if (!is_physical(p) && half_width(*this, p) < 0.0) {
      throw ConfigError("randomization: negative range for " + std::string(to_string(p)));
    }
  }
  if (!(mass_scale_lo <= mass_scale_hi) || mass_scale_lo <= 0.0) {
    throw ConfigError("randomization: mass scale interval is empty or not positive");
  }
  if (!(friction_lo <= friction_hi) || friction_lo < 0.0) {
    throw ConfigError("randomization: friction interval is empty");
  }
  if (!(restitution_lo <= restitution_hi)) {
    throw ConfigError("randomization: restitution interval is empty");
  }
  if (block_sizes.empty()) throw ConfigError("randomization: no block size variants");
  for (double s : block_sizes) {
    if (!(s > 0.0)) throw ConfigError("randomization: block sizes must be positive");
  }
  if (stage_factors.size() != 3) throw ConfigError("randomization: need three stage factors");
  for (double f : stage_factors) {
    if (!(f >= 0.0 && f <= 1.0)) throw ConfigError("randomization: stage factors must lie in [0, 1]");
  }
}

std::string_view to_string(Parameter p) { return kParameterNames[static_cast<std::size_t>(p)]; }

bool is_physical(Parameter p) {
  return p == Parameter::mass_scale || p == Parameter::friction || p == Parameter::restitution ||
         p == Parameter::link_mass_scale;
}

double parameter_value(const RandomizationDraw& draw, Parameter p) {
  RandomizationDraw copy = draw;
  return *parameter_slot(copy, p);
}

Interval stage_interval(const RandomizationRanges& ranges, Parameter p, Stage stage) {
  if (is_physical(p)) {
    if (stage == Stage::C2) return physical_interval(ranges, p);
    const double v = nominal_physical(ranges, p);
    return {v, v};
  }
  const double w = half_width(ranges, p) * ranges.factor(stage);
  return {-w, w};
}

RandomizationDraw nominal_draw(const RandomizationRanges& ranges, Stage stage) {
  RandomizationDraw d;
  d.stage = stage;
  d.block_size_index = static_cast<int>(ranges.block_sizes.size() / 2);
  d.friction = ranges.nominal_friction;
  d.restitution = ranges.nominal_restitution;
  return d;
}

RandomizationDraw sample_scene(const RandomizationRanges& ranges, Stage stage, Rng& rng) {
  RandomizationDraw d = nominal_draw(ranges, stage);
  for (int i = 0; i < kParameterCount; ++i) {
    const auto p = static_cast<Parameter>(i);
    const Interval iv = stage_interval(ranges, p, stage);
    *parameter_slot(d, p) = rng.uniform(iv.lo, iv.hi);
  }
  if (stage == Stage::C2) {
    d.block_size_index = static_cast<int>(rng.below(ranges.block_sizes.size()));
  }
  return d;
}

std::string_view to_string(Scope scope) {
  return scope == Scope::grasp_block ? "grasp-block" : "full";
}

Scope scope_from_string(std::string_view name) {
  if (name == "grasp-block") return Scope::grasp_block;
  if (name == "full") return Scope::full;
  throw ConfigError("unknown randomization scope '" + std::string(name) + "'");
}

RandomizationDraw sample_scene(const RandomizationRanges& ranges, Stage stage, Rng& rng, Scope scope) {
  if (scope == Scope::full) return sample_scene(ranges, stage, rng);
  RandomizationDraw d = nominal_draw(ranges, stage);
  for (Parameter p : {Parameter::grasp_block_dx, Parameter::grasp_block_dy, Parameter::grasp_block_yaw}) {
    const Interval iv = stage_interval(ranges, p, stage);
    *parameter_slot(d, p) = rng.uniform(iv.lo, iv.hi);
  }
  return d;
}

void check_draw(const RandomizationRanges& ranges, const RandomizationDraw& draw) {
  for (int i = 0; i < kParameterCount; ++i) {
    const auto p = static_cast<Parameter>(i);
    const Interval iv = stage_interval(ranges, p, draw.stage);
    const double v = parameter_value(draw, p);
    // Tolerate rounding on the interval ends.
    const double slack = 1e-12 * (1.0 + std::abs(iv.lo) + std::abs(iv.hi));
    if (!std::isfinite(v) || v < iv.lo - slack || v > iv.hi + slack) {
      throw InputError("randomization draw: " + std::string(to_string(p)) + " = " +
                       std::to_string(v) + " outside [" + std::to_string(iv.lo) + ", " +
                       std::to_string(iv.hi) + "] for stage " + std::string(to_string(draw.stage)));
    }
  }
  if (draw.block_size_index < 0 ||
      draw.block_size_index >= static_cast<int>(ranges.block_sizes.size())) {
    throw InputError("randomization draw: block size index out of range");
  }
  if (draw.stage != Stage::C2 &&
      draw.block_size_index != static_cast<int>(ranges.block_sizes.size() / 2)) {
    throw InputError("randomization draw: block size varies only in stage C2");
  }
}

Json to_json(const RandomizationDraw& draw) {
  Json j = Json::object();
  j["stage"] = std::string(to_string(draw.stage));
  j["block_size_index"] = draw.block_size_index;
  for (int i = 0; i < kParameterCount; ++i) {
    const auto p = static_cast<Parameter>(i);
    j[std::string(to_string(p))] = parameter_value(draw, p);
  }
  return j;
}

RandomizationDraw draw_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("draw", "expected an object");
  RandomizationDraw d;
  std::set<std::string> allowed{"stage", "block_size_index"};
  for (auto name : kParameterNames) allowed.insert(std::string(name));
  require_known_keys(j, allowed, "draw");
  if (auto it = j.find("stage"); it != j.end()) {
    if (!it->is_string()) throw SchemaError("draw.stage", "expected a string");
    d.stage = stage_from_string(it->get<std::string>());
  }
  if (auto it = j.find("block_size_index"); it != j.end()) {
    if (!it->is_number_integer()) throw SchemaError("draw.block_size_index", "expected an integer");
    d.block_size_index = it->get<int>();
  }
  for (int i = 0; i < kParameterCount; ++i) {
    const auto p = static_cast<Parameter>(i);
    const std::string key(to_string(p));
    if (auto it = j.find(key); it != j.end()) {
      detail::field_from_json(*it, *parameter_slot(d, p), "draw." + key);
    }
  }
  return d;
}

}  // namespace dexseq::randomization
