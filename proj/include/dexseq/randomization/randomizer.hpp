#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "dexseq/json_fields.hpp"
#include "dexseq/random.hpp"

namespace dexseq::randomization {

enum class Stage { C0 = 0, C1 = 1, C2 = 2 };

inline constexpr std::array<Stage, 3> kAllStages{Stage::C0, Stage::C1, Stage::C2};

std::string_view to_string(Stage stage);
// Throws ConfigError for names other than C0, C1, C2.
Stage stage_from_string(std::string_view name);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v) const { return v >= lo && v <= hi; }
  double center() const { return 0.5 * (lo + hi); }
};

// Offsets are half-widths in meters, rotations half-ranges in radians. All
// symmetric ranges shrink with the stage factor; physical properties are
// drawn only in the last stage.
struct RandomizationRanges {
  double grasp_block_offset = 0.05;
  double grasp_block_yaw = 3.14159265358979323846;
  double push_block_offset = 0.05;
  double push_goal_offset = 0.20;
  double push_yaw = 3.14159265358979323846;
  double knob_offset = 0.15;
  double knob_rotation = 0.26179938779914941;
  double knob_initial_joint = 3.14159265358979323846;
  double button_offset = 0.25;
  double button_rotation = 0.26179938779914941;
  double cabinet_arc = 0.78539816339744831;  // half of the 90 degree arc
  double cabinet_offset = 0.05;
  double cabinet_rotation = 0.26179938779914941;
  double second_block_offset = 0.15;
  double mass_scale_lo = 0.5, mass_scale_hi = 1.5;
  double friction_lo = 0.1, friction_hi = 0.5;
  double restitution_lo = 0.0, restitution_hi = 0.1;
  double nominal_friction = 0.3;
  double nominal_restitution = 0.0;
  // Full side lengths of the grasp block variants; the middle one is nominal.
  std::vector<double> block_sizes{0.025, 0.02625, 0.0275, 0.02875, 0.03};
  std::vector<double> stage_factors{0.0, 0.5, 1.0};

  template <class F>
  void visit_fields(F&& f) {
    f("grasp_block_offset", grasp_block_offset), f("grasp_block_yaw", grasp_block_yaw);
    f("push_block_offset", push_block_offset), f("push_goal_offset", push_goal_offset);
    f("push_yaw", push_yaw), f("knob_offset", knob_offset), f("knob_rotation", knob_rotation);
    f("knob_initial_joint", knob_initial_joint), f("button_offset", button_offset);
    f("button_rotation", button_rotation), f("cabinet_arc", cabinet_arc);
    f("cabinet_offset", cabinet_offset), f("cabinet_rotation", cabinet_rotation);
    f("second_block_offset", second_block_offset), f("mass_scale_lo", mass_scale_lo);
    f("mass_scale_hi", mass_scale_hi), f("friction_lo", friction_lo);
    f("friction_hi", friction_hi), f("restitution_lo", restitution_lo);
    f("restitution_hi", restitution_hi), f("nominal_friction", nominal_friction);
    f("nominal_restitution", nominal_restitution), f("block_sizes", block_sizes);
    f("stage_factors", stage_factors);
  }

  double factor(Stage stage) const { return stage_factors.at(static_cast<std::size_t>(stage)); }
  // Throws ConfigError on negative half-widths, empty property intervals,
  // missing size variants or stage factors outside [0, 1].
  void validate() const;
};

// Everything needed to place one episode's objects. Offsets are relative to
// the nominal layout.
struct RandomizationDraw {
  Stage stage = Stage::C2;
  double grasp_block_dx = 0.0, grasp_block_dy = 0.0, grasp_block_yaw = 0.0;
  int block_size_index = 2;
  double push_block_dx = 0.0, push_block_dy = 0.0;
  double push_goal_dx = 0.0, push_goal_dy = 0.0, push_yaw = 0.0;
  double knob_dx = 0.0, knob_dy = 0.0, knob_rotation = 0.0, knob_initial_joint = 0.0;
  double button_dx = 0.0, button_dy = 0.0, button_rotation = 0.0;
  double cabinet_arc = 0.0, cabinet_dx = 0.0, cabinet_dy = 0.0, cabinet_rotation = 0.0;
  double second_block_dx = 0.0, second_block_dy = 0.0;
  double mass_scale = 1.0;
  double friction = 0.3;
  double restitution = 0.0;
  // Contact stiffness multiplier; stands in for robot-link mass randomization.
  double link_mass_scale = 1.0;

  bool operator==(const RandomizationDraw&) const = default;
};

Json to_json(const RandomizationDraw& draw);
RandomizationDraw draw_from_json(const Json& j);

// Named scalar parameters of a draw, for containment checks.
enum class Parameter {
  grasp_block_dx, grasp_block_dy, grasp_block_yaw,
  push_block_dx, push_block_dy, push_goal_dx, push_goal_dy, push_yaw,
  knob_dx, knob_dy, knob_rotation, knob_initial_joint,
  button_dx, button_dy, button_rotation,
  cabinet_arc, cabinet_dx, cabinet_dy, cabinet_rotation,
  second_block_dx, second_block_dy,
  mass_scale, friction, restitution, link_mass_scale,
};

inline constexpr int kParameterCount = 25;

std::string_view to_string(Parameter p);
bool is_physical(Parameter p);
double parameter_value(const RandomizationDraw& draw, Parameter p);
// Interval a parameter may take at `stage`; degenerate for physical
// properties before the last stage.
Interval stage_interval(const RandomizationRanges& ranges, Parameter p, Stage stage);

// Draws parameters in a fixed order from `rng`.
RandomizationDraw sample_scene(const RandomizationRanges& ranges, Stage stage, Rng& rng);

// Which parameters a scene draw touches: the grasp block pose alone, or all.
enum class Scope { grasp_block, full };

std::string_view to_string(Scope scope);
// Throws ConfigError for names other than grasp-block and full.
Scope scope_from_string(std::string_view name);

// Nominal draw at `stage` with only the grasp block offset and yaw sampled
// when scope is grasp_block; sample_scene otherwise.
RandomizationDraw sample_scene(const RandomizationRanges& ranges, Stage stage, Rng& rng, Scope scope);
// Draw with every parameter at its nominal value.
RandomizationDraw nominal_draw(const RandomizationRanges& ranges, Stage stage);

// Throws InputError naming the first parameter outside its stage interval
// or a block size index out of range.
void check_draw(const RandomizationRanges& ranges, const RandomizationDraw& draw);

}  // namespace dexseq::randomization
