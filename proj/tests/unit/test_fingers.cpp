#include "doctest.h"

#include <algorithm>
#include <set>

#include "dexseq/errors.hpp"
#include "dexseq/fingers/finger_config.hpp"

using namespace dexseq;
using namespace dexseq::fingers;

namespace {

// Reference count of 1- and 2-subsets of n fingers.
int subset_count(int n) { return n + n * (n - 1) / 2; }

}  // namespace

TEST_SUITE("fingers") {

TEST_CASE("enumeration counts") {
  CHECK(enumerate_configurations(4, std::nullopt).size() == static_cast<std::size_t>(subset_count(4)));
  CHECK(enumerate_configurations(4, default_feasibility_table()).size() == 9);
  CHECK(enumerate_configurations(1, std::nullopt).size() == 1);
  CHECK_THROWS_AS(enumerate_configurations(0, std::nullopt), ConfigError);
}

TEST_CASE("default table ids") {
  const auto configs = enumerate_configurations(4, default_feasibility_table());
  const auto& e2e = find_configuration(configs, 5);
  CHECK(e2e.active == std::vector<int>{0, 2});
  CHECK(e2e.inactive == std::vector<int>{1, 3});
  CHECK(e2e.initial_pose == HandPose::top_down);
  for (std::size_t i = 0; i < configs.size(); ++i) CHECK(configs[i].id == static_cast<int>(i) + 1);
  CHECK_THROWS_AS(find_configuration(configs, 42), LookupError);
}

TEST_CASE("role reversal") {
  const auto configs = enumerate_configurations(4, default_feasibility_table());
  const auto& c = find_configuration(configs, 5);
  const auto r = reverse_roles(c);
  CHECK(r.active == std::vector<int>{1, 3});
  CHECK(r.inactive == std::vector<int>{0, 2});
  CHECK(r.holding() == c.holding());
  CHECK(r.manipulating() == c.manipulating());
  CHECK_FALSE(r.palm_active());
  CHECK(c.palm_active());
  for (const auto& cfg : configs) {
    CHECK(reverse_roles(reverse_roles(cfg)) == cfg);
    std::set<int> all(cfg.active.begin(), cfg.active.end());
    all.insert(cfg.inactive.begin(), cfg.inactive.end());
    CHECK(all.size() == 4);
    CHECK(cfg.active.size() + cfg.inactive.size() == 4);
  }
}

TEST_CASE("one hot follows the holding fingers") {
  const auto configs = enumerate_configurations(4, default_feasibility_table());
  const auto& c = find_configuration(configs, 5);
  CHECK(c.active_one_hot() == std::vector<double>{1, 0, 1, 0});
}

TEST_CASE("validation") {
  FingerConfiguration c;
  c.active = {0, 1};
  c.inactive = {1, 2, 3};
  CHECK_THROWS_AS(c.validate(4), ConfigError);
  c.inactive = {2};
  CHECK_THROWS_AS(c.validate(4), ConfigError);
  c.inactive = {2, 3};
  CHECK_NOTHROW(c.validate(4));
}

TEST_CASE("json round trip") {
  for (const auto& c : enumerate_configurations(4, default_feasibility_table())) {
    CHECK(finger_configuration_from_json(to_json(c), "config") == c);
  }
  const auto table = default_feasibility_table();
  CHECK(feasibility_table_from_json(to_json(table), "feasibility") == table);
  Json j = to_json(enumerate_configurations(4, std::nullopt).front());
  j["extra"] = 1;
  CHECK_THROWS_AS(finger_configuration_from_json(j, "config"), SchemaError);
  CHECK(hand_pose_from_string(to_string(HandPose::horizontal)) == HandPose::horizontal);
}

}
