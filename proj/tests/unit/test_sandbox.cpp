#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "dexseq/errors.hpp"
#include "dexseq/random.hpp"
#include "dexseq/sandbox/contact.hpp"
#include "dexseq/sandbox/kinematics.hpp"
#include "dexseq/sandbox/step.hpp"

using namespace dexseq;
using namespace dexseq::sandbox;

namespace {

bool near(const Vec3& a, const Vec3& b, double tol = 1e-12) { return (a - b).norm() <= tol; }

// One-finger hand hovering above a block on the table.
Scene one_finger_scene() {
  Scene s;
  s.geometry.hand = make_ring_hand(1, 0.0, {0.04, 0.03});
  s.geometry.objects.push_back(ObjectGeometry{Vec3::Constant(0.02)});
  Pose6 base;
  base.position = Vec3(0.3, 0.0, 0.3);
  s.state = make_initial_state(s.geometry, base, {Pose4{Vec3(0.6, 0.0, 0.02), 0.0}});
  return s;
}

std::vector<double> zero_action(const SceneGeometry& g) {
  return std::vector<double>(static_cast<std::size_t>(action_dim(g)), 0.0);
}

}  // namespace

TEST_SUITE("sandbox") {

TEST_CASE("forward kinematics of a two-link finger") {
  const HandModel hand = make_ring_hand(1, 0.0, {0.04, 0.03});
  Pose6 base;
  auto fk = forward_kinematics(hand, base, {0.0, 0.0});
  CHECK(near(fk.fingertips[0], Vec3(0.07, 0.0, 0.0)));
  CHECK(near(fk.palm, Vec3::Zero()));

  fk = forward_kinematics(hand, base, {std::numbers::pi / 2, 0.0});
  CHECK(near(fk.fingertips[0], Vec3(0.0, 0.07, 0.0)));

  base.position = Vec3(0.1, 0.0, 0.0);
  fk = forward_kinematics(hand, base, {0.0, 0.0});
  CHECK(near(fk.fingertips[0], Vec3(0.17, 0.0, 0.0)));
  CHECK(near(fk.palm, base.position));

  // Planar chain reference: tip = l1 (cos a, sin a) + l2 (cos(a+b), sin(a+b)).
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const double a = rng.uniform(-0.5, 1.6), b = rng.uniform(-0.5, 1.6);
    const Vec3 want(0.04 * std::cos(a) + 0.03 * std::cos(a + b), 0.04 * std::sin(a) + 0.03 * std::sin(a + b), 0.0);
    CHECK(near(forward_kinematics(hand, Pose6{}, {a, b}).fingertips[0], want, 1e-12));
  }
  CHECK_THROWS_AS(forward_kinematics(hand, base, {0.0}), ConfigError);
}

TEST_CASE("sphere against box contact") {
  Scene s = one_finger_scene();
  const BodyIndex idx(s.geometry);
  const Vec3 tip = forward_kinematics(s.geometry.hand, s.state).fingertips[0];
  auto place_face_at = [&](double gap) {
    // Box face at -x, `gap` in front of the fingertip center.
    s.state.object_poses[0].position = Vec3(tip.x() + gap + 0.02, tip.y(), tip.z());
  };

  place_face_at(0.005);
  auto report = contact_query(s.geometry, s.state);
  const ContactPair* p = report.find(idx.fingertip(0), idx.object(0));
  REQUIRE(p != nullptr);
  CHECK(p->distance == doctest::Approx(0.005).epsilon(1e-12));
  CHECK(p->penetration == doctest::Approx(0.005).epsilon(1e-9));
  CHECK(p->force == doctest::Approx(0.005 * s.geometry.stiffness).epsilon(1e-9));

  place_face_at(0.015);
  report = contact_query(s.geometry, s.state);
  p = report.find(idx.fingertip(0), idx.object(0));
  REQUIRE(p != nullptr);
  CHECK(p->penetration == 0.0);
  CHECK(p->force == 0.0);

  CHECK(contact_query(s.geometry, s.state) == contact_query(s.geometry, s.state));
  CHECK_THROWS_AS(body_distance(s.geometry, s.state, 0, 99), LookupError);
}

TEST_CASE("contact symmetry") {
  Scene s = one_finger_scene();
  s.state.object_poses[0].position = Vec3(0.36, 0.01, 0.3);
  const BodyIndex idx(s.geometry);
  const auto report = contact_query(s.geometry, s.state);
  CHECK_FALSE(report.pairs.empty());
  for (const auto& p : report.pairs) {
    CHECK(p.body_a < p.body_b);
    CHECK(body_distance(s.geometry, s.state, p.body_a, p.body_b) ==
          body_distance(s.geometry, s.state, p.body_b, p.body_a));
    CHECK(report.find(p.body_b, p.body_a) == report.find(p.body_a, p.body_b));
  }
}

TEST_CASE("attached block follows the base") {
  Scene s = one_finger_scene();
  StepParams params;
  params.max_translation_delta = 0.05;
  params.tracking_gain = 1.0;
  params.grasp_rules.push_back(GraspRule{0, {}, false});
  s.state.object_poses[0].position = Vec3(0.35, 0.0, 0.28);
  s.state.attachments.push_back(Attachment{0, s.state.hand_base_pose.inverse_transform(
                                                  s.state.object_poses[0].position),
                                           0.0});
  auto action = zero_action(s.geometry);
  action[0] = 0.05;
  const SceneState next = step_scene(s.geometry, s.state, action, params);
  CHECK(near(next.object_poses[0].position - s.state.object_poses[0].position, Vec3(0.05, 0.0, 0.0), 1e-12));
}

TEST_CASE("attachment stays rigid in the hand frame") {
  Scene s = one_finger_scene();
  StepParams params;
  params.grasp_rules.push_back(GraspRule{0, {}, false});
  s.state.object_poses[0].position = Vec3(0.35, 0.0, 0.28);
  const Vec3 offset = s.state.hand_base_pose.inverse_transform(s.state.object_poses[0].position);
  s.state.attachments.push_back(Attachment{0, offset, 0.0});
  Rng rng(11);
  SceneState st = s.state;
  for (int t = 0; t < 50; ++t) {
    std::vector<double> a(static_cast<std::size_t>(action_dim(s.geometry)));
    for (double& v : a) v = rng.uniform(-0.05, 0.05);
    st = step_scene(s.geometry, st, a, params);
    CHECK(near(st.hand_base_pose.inverse_transform(st.object_poses[0].position), offset, 1e-12));
  }
}

TEST_CASE("zero action is a fixed point") {
  Scene s = one_finger_scene();
  const SceneState next = step_scene(s.geometry, s.state, zero_action(s.geometry), StepParams{});
  SceneState expected = s.state;
  expected.step_index = 1;
  CHECK(next == expected);
}

TEST_CASE("quasi-static pushing") {
  Scene s = one_finger_scene();
  StepParams params;
  const double pen = 0.004;
  s.state.hand_base_pose.position.z() = 0.02;
  s.state.base_target.position.z() = 0.02;
  const Vec3 tip = forward_kinematics(s.geometry.hand, s.state).fingertips[0];
  // Fingertip pressing into the block's -y face.
  s.state.object_poses[0].position = Vec3(tip.x(), tip.y() + 0.01 - pen + 0.02, 0.02);
  const double excess = s.geometry.stiffness * pen - params.push_threshold;
  const double per_step = std::min(params.push_gain * excess, params.push_step_cap);
  REQUIRE(per_step > 0.0);

  SceneState st = s.state;
  const Vec3 start = st.object_poses[0].position;
  double previous = -1.0;
  for (int t = 0; t < 10; ++t) {
    const Vec3 before = st.object_poses[0].position;
    st = step_scene(s.geometry, st, zero_action(s.geometry), params);
    const double moved = (st.object_poses[0].position - before).norm();
    CHECK(moved == doctest::Approx(per_step).epsilon(1e-9));
    if (previous >= 0.0) CHECK(moved == doctest::Approx(previous).epsilon(1e-12));
    previous = moved;
    // Keep the penetration fixed: move the hand with the block.
    const Vec3 shift = st.object_poses[0].position - before;
    st.hand_base_pose.position += shift;
    st.base_target.position += shift;
  }
  const Vec3 total = st.object_poses[0].position - start;
  CHECK(total.y() == doctest::Approx(10.0 * per_step).epsilon(1e-9));
  CHECK(std::abs(total.x()) < 1e-12);

  ObjectGeometry heavy;
  heavy.mass_scale = 1.5;
  CHECK(quasi_static_displacement(100.0, heavy, params) == params.push_step_cap);
  CHECK(quasi_static_displacement(params.push_threshold, ObjectGeometry{}, params) == 0.0);
}

TEST_CASE("determinism and joint clamping") {
  Scene s = one_finger_scene();
  Rng rng(5);
  SceneState a = s.state, b = s.state;
  for (int t = 0; t < 100; ++t) {
    std::vector<double> act(static_cast<std::size_t>(action_dim(s.geometry)));
    for (double& v : act) v = rng.uniform(-1.0, 1.0);
    a = step_scene(s.geometry, a, act, StepParams{});
    b = step_scene(s.geometry, b, act, StepParams{});
    REQUIRE(a == b);
    for (double q : a.joint_angles) {
      CHECK(q >= s.geometry.hand.joint_limits.lower);
      CHECK(q <= s.geometry.hand.joint_limits.upper);
    }
  }
  CHECK(a.step_index == 100);
}

TEST_CASE("action validation") {
  Scene s = one_finger_scene();
  CHECK_THROWS_AS(step_scene(s.geometry, s.state, std::vector<double>(3, 0.0), StepParams{}), ConfigError);
  auto act = zero_action(s.geometry);
  act[2] = std::nan("");
  CHECK_THROWS_AS(step_scene(s.geometry, s.state, act, StepParams{}), InputError);
}

}
