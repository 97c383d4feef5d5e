#pragma once

#include <vector>

#include "dexseq/sandbox/kinematics.hpp"
#include "dexseq/sandbox/scene.hpp"

namespace dexseq::sandbox {

// Body numbering used by contact reports:
//   0                      palm sphere
//   1 .. F                 fingertip spheres
//   F+1 .. F+K             movable objects
//   F+K+1                  table
//   then fixture boxes, then articulation handles.
struct BodyIndex {
  int fingers = 0;
  int objects = 0;
  int fixtures = 0;
  int articulations = 0;

  explicit BodyIndex(const SceneGeometry& g)
      : fingers(g.hand.finger_count),
        objects(static_cast<int>(g.objects.size())),
        fixtures(static_cast<int>(g.fixtures.size())),
        articulations(static_cast<int>(g.articulations.size())) {}

  static constexpr int palm() { return 0; }
  int fingertip(int f) const { return 1 + f; }
  int object(int k) const { return 1 + fingers + k; }
  int table() const { return 1 + fingers + objects; }
  int fixture(int f) const { return table() + 1 + f; }
  int handle(int a) const { return table() + 1 + fixtures + a; }
  int count() const { return table() + 1 + fixtures + articulations; }

  bool is_sphere(int b) const { return b >= 0 && b <= fingers; }
  bool is_object(int b) const { return b >= object(0) && b < table(); }
  bool valid(int b) const { return b >= 0 && b < count(); }
};

struct ContactPair {
  int body_a = 0;
  int body_b = 0;
  double distance = 0.0;     // sphere center (or box bottom) to box surface, signed
  double penetration = 0.0;  // max(0, radius_sum - distance)
  double force = 0.0;        // stiffness * penetration

  bool operator==(const ContactPair&) const = default;
};

struct ContactReport {
  std::vector<ContactPair> pairs;  // body_a < body_b

  // Order-insensitive lookup; nullptr when the pair was not reported.
  const ContactPair* find(int a, int b) const;
  double force_between(int a, int b) const;

  bool operator==(const ContactReport&) const = default;
};

// Every supported body pair whose distance is below geometry.query_cutoff.
// Supported pairs: sphere vs box (objects, table, fixtures, handles) and
// object vs table.
ContactReport contact_query(const SceneGeometry& geometry, const SceneState& state);

// Same, reusing precomputed kinematics.
ContactReport contact_query(const SceneGeometry& geometry, const SceneState& state,
                            const HandKinematics& kin);

// Distance between two bodies as reported by contact_query, without the
// cutoff. Symmetric in (a, b). Throws LookupError for unknown ids and for
// body pairs the sandbox has no distance model for.
double body_distance(const SceneGeometry& geometry, const SceneState& state, int a, int b);

// Radius that a pair contributes to the penetration test.
double contact_radius_sum(const SceneGeometry& geometry, int a, int b);

// Box of any non-sphere body.
YawBox body_box(const SceneGeometry& geometry, const SceneState& state, int body);

}  // namespace dexseq::sandbox
