#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace qring {

enum class OligomerTag { Ring, RingPlusCenter, DoubleRing, Custom };

/// Planar array of z-oriented two-level emitters. Positions are in units of
/// lambda0 with z = 0 for all built-in oligomers. ring_of assigns each emitter
/// to a ring: 0 = center (or inner ring), 1 = outer ring.
struct EmitterArray {
  OligomerTag tag = OligomerTag::Custom;
  int n_d = 0;          // emitters per ring (0 for Custom)
  double spacing = 0.0; // nearest-neighbor spacing a of the (inner) ring
  double ratio = 0.0;   // b/a for DoubleRing, else 0
  double twist = 0.0;   // angular offset of the outer ring (rad)
  std::vector<Eigen::Vector3d> positions;
  std::vector<int> ring_of;

  int size() const { return static_cast<int>(positions.size()); }
  double min_pair_distance() const;
};

/// Circle radius giving nearest-neighbor spacing a for n_d emitters.
double ring_radius(int n_d, double spacing);

/// n_d emitters on a circle, first emitter at angle 0.
EmitterArray build_ring(int n_d, double spacing);

/// Ring plus one emitter at the origin. The center is emitter 0, the ring
/// occupies indices 1..n_d.
EmitterArray build_ring_plus_center(int n_d, double spacing);

/// Two concentric co-aligned rings of n_d emitters each; inner spacing a,
/// outer spacing b = ratio*a with ratio > 1. Inner ring occupies indices
/// 0..n_d-1, outer n_d..2n_d-1. twist rotates the outer ring.
EmitterArray build_double_ring(int n_d, double spacing, double ratio, double twist = 0.0);

/// Arbitrary planar point set (no symmetry assumed, no momentum labels).
EmitterArray from_points(std::vector<Eigen::Vector3d> points);

/// JSON round trip for the named oligomers; positions are always recomputed.
/// Schema: {"tag": "...", "n_d": int, "a": float, "b_over_a": float|null, "twist": float}
std::string geometry_to_json(const EmitterArray& g);
EmitterArray geometry_from_json(const std::string& text);

}  // namespace qring
