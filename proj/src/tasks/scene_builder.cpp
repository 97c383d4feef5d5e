#include "dexseq/tasks/scene_builder.hpp"

#include <cmath>
#include <numbers>

#include "dexseq/errors.hpp"

namespace dexseq::tasks {
namespace {

using randomization::RandomizationDraw;
using sandbox::ArticulationGeometry;
using sandbox::ArticulationKind;
using sandbox::FixtureBox;
using sandbox::ObjectGeometry;
using sandbox::SceneGeometry;

Vec3 planar(const Vec3& nominal, double dx, double dy, double z) {
  return Vec3(nominal.x() + dx, nominal.y() + dy, z);
}

ObjectGeometry randomized_object(const Vec3& half_extents, const RandomizationDraw& draw) {
  ObjectGeometry o;
  o.half_extents = half_extents;
  o.mass_scale = draw.mass_scale;
  o.friction = draw.friction;
  o.restitution = draw.restitution;
  return o;
}

// Square guard with a square hole, as four walls in the guard frame.
void add_button_guard(const SceneLayout& l, const Pose4& center, SceneGeometry& g) {
  const double outer = l.guard_half_width;
  const double hole = l.hole_half_width;
  const double wall = 0.5 * (outer - hole);
  const double z = g.table_top() + l.guard_half_height;
  const Mat3 r = yaw_rotation(center.yaw);
  struct Wall {
    const char* name;
    Vec3 offset;
    Vec3 half;
  };
  const Wall walls[] = {
      {"guard_east", Vec3(hole + wall, 0.0, 0.0), Vec3(wall, outer, l.guard_half_height)},
      {"guard_west", Vec3(-(hole + wall), 0.0, 0.0), Vec3(wall, outer, l.guard_half_height)},
      {"guard_north", Vec3(0.0, hole + wall, 0.0), Vec3(hole, wall, l.guard_half_height)},
      {"guard_south", Vec3(0.0, -(hole + wall), 0.0), Vec3(hole, wall, l.guard_half_height)},
  };
  for (const Wall& w : walls) {
    Vec3 c = center.position + r * w.offset;
    c.z() = z;
    g.fixtures.push_back(FixtureBox{w.name, YawBox{Pose4{c, center.yaw}, w.half}});
  }
}

void add_task_fixtures(const TaskSpec& spec, const RandomizationDraw& draw, SceneGeometry& g) {
  const SceneLayout& l = spec.layout;
  const double top = g.table_top();
  switch (spec.kind) {
    case TaskKind::grasp:
      g.sites.push_back(Pose4{});
      break;
    case TaskKind::push: {
      ObjectGeometry block = randomized_object(l.push_block_half_extents, draw);
      g.objects.push_back(block);
      const Vec3 goal = planar(l.push_goal_center, draw.push_goal_dx, draw.push_goal_dy,
                               top + l.push_block_half_extents.z());
      g.sites.push_back(Pose4{goal, draw.push_yaw});
      break;
    }
    case TaskKind::press: {
      const Pose4 center{planar(l.button_center, draw.button_dx, draw.button_dy, top),
                         draw.button_rotation};
      add_button_guard(l, center, g);
      Vec3 goal = center.position;
      goal.z() = top + 2.0 * l.guard_half_height - l.press_depth;
      g.sites.push_back(Pose4{goal, center.yaw});
      break;
    }
    case TaskKind::twist: {
      ArticulationGeometry knob;
      knob.kind = ArticulationKind::knob;
      knob.base = Pose4{planar(l.knob_center, draw.knob_dx, draw.knob_dy, top + l.knob_handle_height),
                        draw.knob_rotation};
      knob.handle_radius = l.knob_handle_radius;
      knob.handle_half_extents = l.knob_handle_half_extents;
      knob.initial_position = draw.knob_initial_joint;
      knob.goal_direction = l.twist_direction;
      g.articulations.push_back(knob);
      const double stand = 0.5 * (l.knob_handle_height - l.knob_handle_half_extents.z());
      Vec3 c = knob.base.position;
      c.z() = top + stand;
      g.fixtures.push_back(
          FixtureBox{"knob_stand", YawBox{Pose4{c, 0.0}, Vec3(0.015, 0.015, stand)}});
      g.sites.push_back(knob.base);
      break;
    }
    case TaskKind::drawer: {
      const double arc = draw.cabinet_arc;
      const double yaw = arc + draw.cabinet_rotation;
      const Vec3 facing(std::cos(yaw), std::sin(yaw), 0.0);
      Vec3 center(l.cabinet_radius * std::cos(arc) + draw.cabinet_dx,
                  l.cabinet_radius * std::sin(arc) + draw.cabinet_dy,
                  top + l.cabinet_half_extents.z());
      g.fixtures.push_back(FixtureBox{"cabinet", YawBox{Pose4{center, yaw}, l.cabinet_half_extents}});
      ArticulationGeometry drawer;
      drawer.kind = ArticulationKind::drawer;
      Vec3 handle = center - (l.cabinet_half_extents.x() + l.drawer_handle_standoff) * facing;
      handle.z() = top + l.drawer_handle_height;
      drawer.base = Pose4{handle, yaw};
      drawer.axis = -facing;
      drawer.handle_half_extents = l.drawer_handle_half_extents;
      drawer.lower = 0.0;
      drawer.upper = l.drawer_travel;
      drawer.capture_radius = l.drawer_capture_radius;
      g.articulations.push_back(drawer);
      g.sites.push_back(drawer.base);
      break;
    }
    case TaskKind::two_pick: {
      g.objects.push_back(randomized_object(l.second_block_half_extents, draw));
      const Vec3 goal = planar(l.second_block_center, draw.second_block_dx, draw.second_block_dy,
                               top + l.second_block_half_extents.z() + l.lift_height);
      g.sites.push_back(Pose4{goal, 0.0});
      break;
    }
  }
}

// Rest poses of the task objects beyond the grasp block.
void place_task_objects(const TaskSpec& spec, const RandomizationDraw& draw, const SceneGeometry& g,
                        std::vector<Pose4>& poses) {
  const SceneLayout& l = spec.layout;
  if (spec.kind == TaskKind::push) {
    poses.push_back(Pose4{planar(l.push_block_center, draw.push_block_dx, draw.push_block_dy,
                                 g.rest_height(kSecondObject)),
                          draw.push_yaw});
  } else if (spec.kind == TaskKind::two_pick) {
    poses.push_back(Pose4{planar(l.second_block_center, draw.second_block_dx,
                                 draw.second_block_dy, g.rest_height(kSecondObject)),
                          0.0});
  }
}

}  // namespace

SceneGeometry build_geometry(const TaskSpec& spec, const RandomizationDraw& draw) {
  randomization::check_draw(spec.ranges, draw);
  SceneGeometry g;
  g.hand = sandbox::make_ring_hand(spec.finger_count);
  g.stiffness = spec.physics.stiffness * draw.link_mass_scale;
  const double side = spec.ranges.block_sizes[static_cast<std::size_t>(draw.block_size_index)];
  g.objects.push_back(randomized_object(Vec3::Constant(0.5 * side), draw));

  const Vec3 spawn = planar(spec.layout.grasp_block_center, draw.grasp_block_dx,
                            draw.grasp_block_dy, g.rest_height(kGraspBlock));
  g.sites.push_back(Pose4{spawn + Vec3(0.0, 0.0, spec.layout.lift_height), 0.0});
  add_task_fixtures(spec, draw, g);
  return g;
}

Pose6 initial_hand_pose(const TaskSpec& spec, fingers::HandPose pose) {
  const SceneLayout& l = spec.layout;
  const Vec3 base(l.grasp_block_center.x(), l.grasp_block_center.y(), 0.0);
  Pose6 p;
  if (pose == fingers::HandPose::top_down) {
    p.position = base + l.top_down_offset;
    p.pitch = std::numbers::pi / 2.0;
  } else {
    p.position = base + l.horizontal_offset;
  }
  return p;
}

sandbox::Scene build_scene(const TaskSpec& spec, const RandomizationDraw& draw,
                           const fingers::FingerConfiguration& config) {
  config.validate(spec.finger_count);
  sandbox::Scene scene;
  scene.geometry = build_geometry(spec, draw);
  std::vector<Pose4> poses;
  poses.push_back(Pose4{planar(spec.layout.grasp_block_center, draw.grasp_block_dx,
                               draw.grasp_block_dy, scene.geometry.rest_height(kGraspBlock)),
                        draw.grasp_block_yaw});
  place_task_objects(spec, draw, scene.geometry, poses);
  scene.state = sandbox::make_initial_state(scene.geometry, initial_hand_pose(spec, config.initial_pose),
                                            poses, spec.layout.initial_joint_angle);
  return scene;
}

sandbox::Scene build_second_scene(const TaskSpec& spec, const RandomizationDraw& draw,
                                  const sandbox::Scene& terminal) {
  if (terminal.geometry.objects.empty() || terminal.state.object_poses.empty()) {
    throw ConfigError("second scene: terminal scene has no grasp block");
  }
  if (terminal.geometry.hand.finger_count != spec.finger_count) {
    throw ConfigError("second scene: terminal scene hand does not match the task");
  }
  sandbox::Scene scene;
  scene.geometry = build_geometry(spec, draw);
  scene.geometry.objects[kGraspBlock] = terminal.geometry.objects[kGraspBlock];
  scene.geometry.sites[kLiftGoalSite] = terminal.geometry.sites.at(kLiftGoalSite);

  std::vector<Pose4> poses{terminal.state.object_poses[kGraspBlock]};
  place_task_objects(spec, draw, scene.geometry, poses);

  sandbox::SceneState s = sandbox::make_initial_state(scene.geometry, terminal.state.hand_base_pose,
                                                      poses, spec.layout.initial_joint_angle);
  s.base_target = terminal.state.base_target;
  s.joint_angles = terminal.state.joint_angles;
  s.joint_targets = terminal.state.joint_targets;
  for (const auto& a : terminal.state.attachments) {
    if (a.object == kGraspBlock) s.attachments.push_back(a);
  }
  scene.state = std::move(s);
  return scene;
}

}  // namespace dexseq::tasks
