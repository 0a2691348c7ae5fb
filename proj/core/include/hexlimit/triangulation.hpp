#pragma once

#include <optional>
#include <string>

#include "hexlimit/lattice.hpp"
#include "hexlimit/qadic.hpp"

// The nested vertex sets V_k = c_k + 2^k Q induced by a parameter q, the
// levels of vertices and of the two line families through them, triangle
// centroid orientation (which of the two rank-k sublattice cosets of P the
// centroid tower settles into), and the governing-centroid computation that
// decides how a stripe is displaced across an edge.

namespace hexlimit {

// A level statement: either exactly k, or only "at least k" because the
// computation ran into the working depth. Code must never treat AtLeast as a
// finite level.
struct Level {
  bool finite{true};
  int k{0};

  static Level Finite(int k) { return {true, k}; }
  static Level AtLeast(int k) { return {false, k}; }
  friend bool operator==(const Level&, const Level&) = default;
};

std::string to_string(const Level& level);

// Raised when an operation needs a finite level but the depth cap was hit.
class unresolved_error : public std::runtime_error {
 public:
  explicit unresolved_error(const std::string& what) : std::runtime_error(what) {}
};

// Parameter plus working depth K: all answers are exact for levels < K and
// clamp to AtLeast(K) beyond.
struct TriContext {
  QadicParam q;
  int K{0};

  QPoint c(int k) const { return residue(q, k); }
};

// Default working depth for a patch of radius R.
int default_depth(i64 radius);

// Largest k with x in V_k, clamped at the working depth.
Level vertex_level(const TriContext& ctx, QPoint x);

// Level of the line through x in lattice direction `dir` (lines of V_k
// vertices spaced 2^k apart); clamped at the working depth.
Level a_line_level(const TriContext& ctx, QPoint x, ADir dir);

// Level of the line through x in hexagonal-dual direction `dir`.
Level w_line_level(const TriContext& ctx, QPoint x, WDir dir);

struct Orientation {
  enum class Kind { Up, Down, None, Unknown };
  Kind kind{Kind::None};
  int level{0};

  friend bool operator==(const Orientation&, const Orientation&) = default;
};

std::string to_string(const Orientation& o);

// Deepest sublattice-coset membership of a non-lattice point of P: scans the
// nested towers S_up(k) = c_{k-1} + 2^{k-1} w1 + 2^{k-1} Q and S_down(k)
// (with w2) for k = 1, 2, ... and reports the branch of the last membership.
// Points of Q get None; membership persisting through the deepest testable
// level (K+1) gives Unknown at that level.
Orientation centroid_orientation(const TriContext& ctx, PPoint x);

// The level-L edge of the triangulation lying on the line through x (L = the
// line's level, which must be finite): endpoints are the bracketing V_L
// vertices. If x is itself a V_L vertex it is reported as v0 and flagged.
struct EdgeThrough {
  QPoint v0;
  QPoint v1;
  ADir dir{ADir::A1};
  int level{0};
  bool x_is_endpoint{false};
};

EdgeThrough edge_through(const TriContext& ctx, QPoint x, ADir dir);

// Which of the two triangles adjacent to an edge contains the governing
// centroid: the one whose centroid orientation level reaches at least
// edge level + 2 (the other always settles at exactly level + 1). The side is
// named by the governing centroid's orientation label. Returns nullopt when
// the depth cap prevents the decision.
enum class ShiftSide { TowardUpCentroid, TowardDownCentroid };

std::string to_string(ShiftSide side);

struct GoverningShift {
  PPoint centroid;
  ShiftSide side{ShiftSide::TowardUpCentroid};
  int orientation_level{0};
};

std::optional<GoverningShift> governing_shift(const TriContext& ctx, const EdgeThrough& edge);

}  // namespace hexlimit
