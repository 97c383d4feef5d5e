#include "dexseq/sandbox/contact.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "dexseq/errors.hpp"

namespace dexseq::sandbox {
namespace {

Vec3 sphere_center(const HandKinematics& kin, int body) {
  if (body == BodyIndex::palm()) return kin.palm;
  return kin.fingertips[static_cast<std::size_t>(body - 1)];
}

double sphere_radius(const SceneGeometry& g, int body) {
  return body == BodyIndex::palm() ? g.hand.palm_radius : g.hand.fingertip_radius;
}

ContactPair make_pair(const SceneGeometry& g, int a, int b, double distance) {
  ContactPair p;
  p.body_a = std::min(a, b);
  p.body_b = std::max(a, b);
  p.distance = distance;
  p.penetration = std::max(0.0, contact_radius_sum(g, a, b) - distance);
  p.force = g.stiffness * p.penetration;
  return p;
}

double distance_impl(const SceneGeometry& g, const SceneState& s, const HandKinematics& kin,
                     const BodyIndex& idx, int a, int b) {
  if (idx.is_sphere(a) && idx.is_sphere(b)) {
    throw LookupError("contact: no distance model for sphere pair");
  }
  if (idx.is_sphere(b)) std::swap(a, b);
  if (idx.is_sphere(a)) {
    return body_box(g, s, b).signed_distance(sphere_center(kin, a));
  }
  // Box-box: only object vs table is modeled.
  if (idx.is_object(b) && a == idx.table()) std::swap(a, b);
  if (idx.is_object(a) && b == idx.table()) {
    return body_box(g, s, a).bottom() - g.table_top();
  }
  throw LookupError("contact: no distance model for bodies " + std::to_string(a) + " and " +
                    std::to_string(b));
}

}  // namespace

const ContactPair* ContactReport::find(int a, int b) const {
  const int lo = std::min(a, b);
  const int hi = std::max(a, b);
  for (const auto& p : pairs) {
    if (p.body_a == lo && p.body_b == hi) return &p;
  }
  return nullptr;
}

double ContactReport::force_between(int a, int b) const {
  const ContactPair* p = find(a, b);
  return p ? p->force : 0.0;
}

double contact_radius_sum(const SceneGeometry& g, int a, int b) {
  const BodyIndex idx(g);
  double r = 0.0;
  if (idx.is_sphere(a)) r += sphere_radius(g, a);
  if (idx.is_sphere(b)) r += sphere_radius(g, b);
  return r;
}

YawBox body_box(const SceneGeometry& g, const SceneState& s, int body) {
  const BodyIndex idx(g);
  if (!idx.valid(body) || idx.is_sphere(body)) {
    throw LookupError("contact: body " + std::to_string(body) + " is not a box");
  }
  if (idx.is_object(body)) return object_box(g, s, body - idx.object(0));
  if (body == idx.table()) return g.table;
  if (body < idx.handle(0)) return g.fixtures[static_cast<std::size_t>(body - idx.fixture(0))].box;
  const auto a = static_cast<std::size_t>(body - idx.handle(0));
  return g.articulations[a].handle_box(s.articulation_positions.at(a));
}

ContactReport contact_query(const SceneGeometry& g, const SceneState& s) {
  return contact_query(g, s, forward_kinematics(g.hand, s));
}

ContactReport contact_query(const SceneGeometry& g, const SceneState& s,
                            const HandKinematics& kin) {
  const BodyIndex idx(g);
  ContactReport report;
  const int n = idx.count();
  for (int sphere = 0; sphere <= idx.fingers; ++sphere) {
    const Vec3 c = sphere_center(kin, sphere);
    for (int box = idx.object(0); box < n; ++box) {
      const double d = body_box(g, s, box).signed_distance(c);
      if (d < g.query_cutoff) report.pairs.push_back(make_pair(g, sphere, box, d));
    }
  }
  for (int k = 0; k < idx.objects; ++k) {
    const int body = idx.object(k);
    const double d = object_box(g, s, k).bottom() - g.table_top();
    if (d < g.query_cutoff) report.pairs.push_back(make_pair(g, body, idx.table(), d));
  }
  std::sort(report.pairs.begin(), report.pairs.end(), [](const auto& x, const auto& y) {
    return x.body_a != y.body_a ? x.body_a < y.body_a : x.body_b < y.body_b;
  });
  return report;
}

double body_distance(const SceneGeometry& g, const SceneState& s, int a, int b) {
  const BodyIndex idx(g);
  if (!idx.valid(a)) throw LookupError("contact: unknown body " + std::to_string(a));
  if (!idx.valid(b)) throw LookupError("contact: unknown body " + std::to_string(b));
  return distance_impl(g, s, forward_kinematics(g.hand, s), idx, a, b);
}

}  // namespace dexseq::sandbox
