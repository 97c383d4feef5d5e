#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <limits>

#include "dexseq/errors.hpp"
#include "dexseq/trajectory/store.hpp"
#include "trained.hpp"

using namespace dexseq;
using namespace dexseq::trajectory;

namespace {

Dataset points(const std::vector<Vec3>& ps) {
  Dataset d;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    Trajectory t;
    t.id = static_cast<int>(i);
    t.initial_position = ps[i];
    d.trajectories.push_back(t);
  }
  return d;
}

const Dataset& small_dataset() {
  static const Dataset d = [] {
    const auto& pair = support::shared_pair();
    const PolicyPair policies{&pair.grasp.train.policy, &pair.second.train.policy};
    CollectOptions options;
    options.stage = randomization::Stage::C0;
    return collect_dataset(pair.config.grasp_spec(), pair.config.second_spec(), pair.fingers, policies, 4, 17,
                           options);
  }();
  return d;
}

sandbox::Scene recorded_scene(const Trajectory& t) {
  const auto& pair = support::shared_pair();
  return initial_scene(pair.config.second_spec(), t.draw, t.config);
}

}  // namespace

TEST_SUITE("trajectory") {

TEST_CASE("nearest initial position") {
  const Dataset d = points({{0, 0, 0}, {0.1, 0, 0}, {0.05, 0.05, 0}});
  CHECK(retrieve(d, Vec3(0.03, 0.01, 0.0)) == 0);
  CHECK(retrieve(d, Vec3(0.1, 0.0, 0.0)) == 1);
  CHECK(retrieve(d, Vec3(0.05, 0.0, 0.0)) == 0);
  CHECK_THROWS_AS(retrieve(Dataset{}, Vec3::Zero()), LookupError);
  CHECK_THROWS_AS(retrieve(d, Vec3(std::numeric_limits<double>::quiet_NaN(), 0, 0)), InputError);
}

TEST_CASE("outcome classes") {
  CHECK(classify(true, true) == Outcome::success_both);
  CHECK(classify(false, true) == Outcome::fail_subtask1_only);
  CHECK(classify(true, false) == Outcome::fail_subtask2_only);
  CHECK(classify(false, false) == Outcome::fail_both);
  CHECK(to_string(Outcome::fail_subtask2_only) == "fail-subtask2-only");
}

TEST_CASE("collected trajectories replay") {
  const Dataset& d = small_dataset();
  REQUIRE(d.trajectories.size() == 4);
  const auto spec = support::shared_pair().config.second_spec();
  for (std::size_t i = 0; i < d.trajectories.size(); ++i) {
    const Trajectory& t = d.trajectories[i];
    CHECK(t.id == static_cast<int>(i));
    CHECK(t.held);
    CHECK(t.objective);
    CHECK(execute_open_loop(t, spec, recorded_scene(t)) == Outcome::success_both);
    const RunFlags f = replay(spec, t.config, recorded_scene(t), t.actions, t.grasp_steps);
    CHECK(f.held == t.held);
    CHECK(f.objective == t.objective);
  }
  CHECK(collect_dataset(spec, spec, support::shared_pair().fingers, {}, 0, 1).trajectories.empty());
}

TEST_CASE("displaced block fails both subtasks") {
  const Trajectory& t = small_dataset().trajectories[0];
  const auto spec = support::shared_pair().config.second_spec();
  auto scene = recorded_scene(t);
  scene.state.object_poses[tasks::kGraspBlock].position += Vec3(0.0, 0.3, 0.0);
  scene.state.object_poses[tasks::kSecondObject].position += Vec3(0.0, -0.3, 0.0);
  CHECK(execute_open_loop(t, spec, scene) == Outcome::fail_both);
}

TEST_CASE("replay input checks") {
  Trajectory t = small_dataset().trajectories[0];
  const auto spec = support::shared_pair().config.second_spec();
  const auto scene = recorded_scene(t);
  t.actions.pop_back();
  CHECK_THROWS_AS(execute_open_loop(t, spec, scene), InputError);
  t = small_dataset().trajectories[0];
  CHECK_THROWS_AS(execute_open_loop(t, tasks::default_task_spec(TaskKind::press), scene), ConfigError);
}

TEST_CASE("dataset file round trip") {
  const auto path = std::filesystem::temp_directory_path() / "dexseq_roundtrip.jsonl";
  save_dataset(small_dataset(), path);
  const Dataset back = load_dataset(path);
  REQUIRE(back.trajectories.size() == small_dataset().trajectories.size());
  for (std::size_t i = 0; i < back.trajectories.size(); ++i) {
    CHECK(back.trajectories[i] == small_dataset().trajectories[i]);
  }
  save_dataset(Dataset{}, path);
  CHECK(load_dataset(path).trajectories.empty());
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_dataset(path), LookupError);
}

}
