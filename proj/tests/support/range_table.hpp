#pragma once

#include <numbers>

#include "dexseq/randomization/randomizer.hpp"

namespace support {

using dexseq::randomization::Interval;
using dexseq::randomization::Parameter;
using dexseq::randomization::Stage;

inline constexpr double kDeg = std::numbers::pi / 180.0;

// Full-stage half-widths written out independently of the library defaults.
inline double full_half_width(Parameter p) {
  switch (p) {
    case Parameter::grasp_block_dx: case Parameter::grasp_block_dy: return 0.05;
    case Parameter::grasp_block_yaw: return std::numbers::pi;
    case Parameter::push_block_dx: case Parameter::push_block_dy: return 0.05;
    case Parameter::push_goal_dx: case Parameter::push_goal_dy: return 0.20;
    case Parameter::push_yaw: return std::numbers::pi;
    case Parameter::knob_dx: case Parameter::knob_dy: return 0.15;
    case Parameter::knob_rotation: return 15 * kDeg;
    case Parameter::knob_initial_joint: return std::numbers::pi;
    case Parameter::button_dx: case Parameter::button_dy: return 0.25;
    case Parameter::button_rotation: return 15 * kDeg;
    case Parameter::cabinet_arc: return 45 * kDeg;
    case Parameter::cabinet_dx: case Parameter::cabinet_dy: return 0.05;
    case Parameter::cabinet_rotation: return 15 * kDeg;
    case Parameter::second_block_dx: case Parameter::second_block_dy: return 0.15;
    default: return 0.0;
  }
}

inline Interval physical_range(Parameter p) {
  switch (p) {
    case Parameter::mass_scale: case Parameter::link_mass_scale: return {0.5, 1.5};
    case Parameter::friction: return {0.1, 0.5};
    default: return {0.0, 0.1};
  }
}

inline double nominal(Parameter p) {
  switch (p) {
    case Parameter::mass_scale: case Parameter::link_mass_scale: return 1.0;
    case Parameter::friction: return 0.3;
    default: return 0.0;
  }
}

inline double stage_scale(Stage s) { return s == Stage::C0 ? 0.0 : s == Stage::C1 ? 0.5 : 1.0; }

}  // namespace support
