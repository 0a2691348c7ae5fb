#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hexlimit/marking.hpp"

// Independent checkers for the matching rules and structural invariants of
// marked patches, plus the parity-constraint coloring solver. Checkers are
// read-only and skip undetermined or boundary-incomplete configurations,
// counting the skips.

namespace hexlimit {

struct Violation {
  enum class Kind { R1, R2, ThreeColor, Prototile, Periodicity };
  Kind kind{Kind::R2};
  QPoint site{};
  std::string detail;
};

std::string to_string(Violation::Kind kind);

// Line-oriented report form: KIND\tm\tn\tdetail
std::string format_violation(const Violation& v);

struct CheckReport {
  std::vector<Violation> violations;
  i64 checked{0};
  i64 skipped{0};
  // Vertices where a monochromatic meeting of three diameter ends is legal
  // (the designated symmetric center) — informational, not violations.
  std::vector<PPoint> flagged;

  bool ok() const { return violations.empty(); }
};

// Opposite-end rule between consecutive centers x and x+3w on every dual
// line: the diameter end of x at vertex x+w and the end of x+3w at x+2w must
// differ in color.
CheckReport check_r2(const Patch& patch);

// At every vertex of P \ Q interior to the patch, the three diameter ends
// meeting there are not all the same color; the designated symmetric center
// of an ICwL patch is flagged instead of reported.
CheckReport check_three_color(const Patch& patch);

// Per-tile congruence with the two prototiles (parity == shift XOR split,
// all bits committed) plus stripe-continuity along shared edges: every tile
// interior to one edge of the stripe line must carry the same stripe
// direction and shift (R1 violations).
CheckReport check_prototile(const Patch& patch);

// Smoke test: every nonzero translation t with hexdist(t) <= rmax must change
// the parity pattern somewhere on the overlap. Overlaps smaller than
// min_overlap are skipped (reported in `skipped`).
CheckReport check_aperiodicity(const Patch& patch, i64 rmax, i64 min_overlap = 32);

// --- coloring solver -------------------------------------------------------

struct StripeShift {
  ADir stripe{ADir::A1};
  int shift{-1};
};

struct ColoringResult {
  std::map<QPoint, int> forced;
  std::vector<std::vector<QPoint>> free_components;
  std::optional<std::pair<QPoint, QPoint>> contradiction;
};

// Treats each tile's split order as a boolean variable. Along every dual line
// each consecutive-center pair yields a parity constraint; full diameters are
// constants determined by the stripe direction alone. Solved with a
// parity-annotated union-find; `presets` pins given variables (used for the
// free values of infinite lines).
ColoringResult solve_coloring(const std::map<QPoint, StripeShift>& stripes,
                              const std::map<QPoint, int>& presets = {});

// --- shared color conventions ---------------------------------------------

// The stripe direction whose split diameter lies on dual lines of direction
// `line` (the inverse of the perpendicular-dual map).
ADir stripe_on_wline(WDir line);

// Color (0 = red, 1 = blue) of the full diameter of a tile with the given
// stripe along dual direction `line`; requires line != perp_w(stripe).
int full_diameter_color(ADir stripe, WDir line);

// Sign tau relating the split frame to the dual direction of the split
// diameter: +1 if fw(stripe) = +w_vec(perp_w(stripe)), else -1. The split
// diameter's end toward e*w_vec has color split XOR (e*tau == -1).
int split_end_sign(ADir stripe);

// End color of a tile's diameter along dual direction `line` at the end
// pointing toward e * w_vec(line), e in {+1,-1}; empty when the tile's split
// is needed but uncommitted.
std::optional<int> diameter_end_color(const TileMark& tile, WDir line, int e);

}  // namespace hexlimit
