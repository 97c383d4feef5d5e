#include "doctest.h"

#include <cmath>
#include <numbers>

#include "dexseq/errors.hpp"
#include "dexseq/randomization/randomizer.hpp"
#include "range_table.hpp"

using namespace dexseq;
using namespace dexseq::randomization;
using namespace support;

TEST_SUITE("randomizer") {

TEST_CASE("stage C0 is the nominal scene") {
  const RandomizationRanges ranges;
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const auto d = sample_scene(ranges, Stage::C0, rng);
    for (int k = 0; k < kParameterCount; ++k) {
      const auto p = static_cast<Parameter>(k);
      CHECK(parameter_value(d, p) == nominal(p));
    }
    CHECK(d.block_size_index == 2);
  }
  CHECK(nominal_draw(ranges, Stage::C2).mass_scale == 1.0);
}

TEST_CASE("knob rotation at C1 stays within half the full range") {
  const RandomizationRanges ranges;
  Rng rng(2);
  double widest = 0.0;
  for (int i = 0; i < 20000; ++i) {
    widest = std::max(widest, std::abs(sample_scene(ranges, Stage::C1, rng).knob_rotation));
  }
  CHECK(widest <= 7.5 * kDeg);
  CHECK(widest > 7.0 * kDeg);
}

TEST_CASE("mass scale at C2") {
  const RandomizationRanges ranges;
  Rng rng(3);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double m = sample_scene(ranges, Stage::C2, rng).mass_scale;
    CHECK((m >= 0.5 && m <= 1.5));
    sum += m;
  }
  CHECK(std::abs(sum / n - 1.0) < 0.01);
}

TEST_CASE("stage intervals match the reference table") {
  const RandomizationRanges ranges;
  for (Stage s : kAllStages) {
    for (int k = 0; k < kParameterCount; ++k) {
      const auto p = static_cast<Parameter>(k);
      const Interval got = stage_interval(ranges, p, s);
      if (is_physical(p)) {
        const Interval want = s == Stage::C2 ? physical_range(p) : Interval{nominal(p), nominal(p)};
        CHECK(got.lo == doctest::Approx(want.lo));
        CHECK(got.hi == doctest::Approx(want.hi));
      } else {
        const double h = stage_scale(s) * full_half_width(p);
        CHECK(got.lo == doctest::Approx(-h));
        CHECK(got.hi == doctest::Approx(h));
      }
    }
  }
}

TEST_CASE("draws stay inside their stage and C1 inside C2") {
  const RandomizationRanges ranges;
  for (Stage s : kAllStages) {
    Rng rng(10 + static_cast<int>(s));
    for (int i = 0; i < 5000; ++i) {
      const auto d = sample_scene(ranges, s, rng);
      CHECK_NOTHROW(check_draw(ranges, d));
      if (s == Stage::C1) {
        for (int k = 0; k < kParameterCount; ++k) {
          const auto p = static_cast<Parameter>(k);
          CHECK(stage_interval(ranges, p, Stage::C2).contains(parameter_value(d, p)));
        }
      }
    }
  }
}

TEST_CASE("sampling is reproducible") {
  const RandomizationRanges ranges;
  Rng a(99), b(99);
  for (int i = 0; i < 50; ++i) CHECK(sample_scene(ranges, Stage::C2, a) == sample_scene(ranges, Stage::C2, b));
  Rng c(99);
  const auto d = sample_scene(ranges, Stage::C2, c);
  CHECK(draw_from_json(to_json(d)) == d);
}

TEST_CASE("grasp block scope leaves the rest nominal") {
  const RandomizationRanges ranges;
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const auto d = sample_scene(ranges, Stage::C2, rng, Scope::grasp_block);
    for (int k = 0; k < kParameterCount; ++k) {
      const auto p = static_cast<Parameter>(k);
      const double v = parameter_value(d, p);
      if (p == Parameter::grasp_block_dx || p == Parameter::grasp_block_dy) {
        CHECK(std::abs(v) <= 0.05);
      } else if (p != Parameter::grasp_block_yaw) {
        CHECK(v == nominal(p));
      }
    }
  }
  Rng a(6), b(6);
  CHECK(sample_scene(ranges, Stage::C1, a, Scope::full) == sample_scene(ranges, Stage::C1, b));
  CHECK(scope_from_string(to_string(Scope::grasp_block)) == Scope::grasp_block);
  CHECK_THROWS_AS(scope_from_string("partial"), ConfigError);
}

TEST_CASE("out of range draws are rejected") {
  const RandomizationRanges ranges;
  auto d = nominal_draw(ranges, Stage::C1);
  d.push_goal_dx = 0.15;
  CHECK_THROWS_AS(check_draw(ranges, d), InputError);
  d = nominal_draw(ranges, Stage::C1);
  d.mass_scale = 1.2;
  CHECK_THROWS_AS(check_draw(ranges, d), InputError);
  d = nominal_draw(ranges, Stage::C2);
  d.block_size_index = 5;
  CHECK_THROWS_AS(check_draw(ranges, d), InputError);
  CHECK_THROWS_AS(stage_from_string("C3"), ConfigError);
}

}
