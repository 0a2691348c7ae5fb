#pragma once

#include <map>
#include <optional>
#include <string>

#include "hexlimit/lattice.hpp"
#include "hexlimit/qadic.hpp"
#include "hexlimit/triangulation.hpp"

// Tile markings: stripe direction, stripe displacement side, red/blue split
// order, and the white/gray parity — computed two independent ways (closed
// 2-adic bit formulas, and the geometric pipeline of governing centroids plus
// the coloring constraint solver), with per-tile error containment.

namespace hexlimit {

enum class MarkErr {
  None,               // determined
  OnUndeterminedLine, // stripe-axis through the limit point: shift is a free choice
  OnUncoloredLine,    // w-line through the limit point: color formula undefined
  PrecisionExceeded,  // working depth K cannot stabilize the answer
  Concurrency,        // the central point where all three stripe lines concur
  FreeBitsRequired,   // resolvable only by a free-bit choice that was not supplied
  UnderDetermined,    // coloring chain never reaches a constant inside the patch
};

const char* to_string(MarkErr e);

struct BitResult {
  MarkErr err{MarkErr::None};
  int bit{-1};
  bool ok() const { return err == MarkErr::None; }
};

struct StripeInfo {
  MarkErr err{MarkErr::None};
  ADir dir{ADir::A1};
  Level level{};                // level of the chosen stripe line
  bool exactly_infinite{false}; // exact-form parameter puts x on a true infinite line
  bool ok() const { return err == MarkErr::None; }
};

struct ParityResult {
  MarkErr err{MarkErr::None};
  int parity{-1};
  int shift_bit{-1};
  int color_bit{-1};
  bool ok() const { return err == MarkErr::None; }
};

// Convention (calibrated once against the level-1 horizontal-line anchors and
// frozen): for stripe direction dir, the positive side frame f(dir) is the
// +90-degree rotation of a1 / a2 and the -90-degree rotation of (a1+a2); the
// shift bit is 1 iff the stripe is displaced toward +f, which happens iff the
// governing centroid lies on the +f side. Split frames are fw(a1) = +w2,
// fw(a2) = -w1, fw(a12) = w1-w2 (the rot120 orbit), and split_order 0 means
// the red half-diameter points toward +fw. Parity is shift XOR split; 1 is
// white, 0 is gray.
struct TileMark {
  QPoint center{};
  bool stripe_valid{false};
  ADir stripe{ADir::A1};
  int shift{-1};
  int split{-1};
  int parity{-1};
  MarkErr reason{MarkErr::None};

  bool determined() const { return reason == MarkErr::None; }
  friend bool operator==(const TileMark&, const TileMark&) = default;
};

// Free choices for singular parameters. Grammar: "none", or a comma-joined
// list of `tile:<0-11>` (central-tile completion: index = 4*stripe + 2*shift
// + split with stripe in order a1,a2,a12), `aline:<a1|a2|a12>=<0|1>` (shift of
// an infinite lattice line), `wline:<w1|w2|w21>=<0|1>` (split value on an
// infinite dual line).
struct FreeBits {
  std::optional<int> tile_choice;
  std::map<ADir, int> aline;
  std::map<WDir, int> wline;

  static FreeBits parse(const std::string& spec);
  std::string format() const;
  bool empty() const { return !tile_choice && aline.empty() && wline.empty(); }
  friend bool operator==(const FreeBits&, const FreeBits&) = default;
};

struct Patch {
  std::map<QPoint, TileMark> tiles;
  QadicParam q;
  int K{0};
  i64 R{0};
  FreeBits freebits;

  const TileMark* find(QPoint x) const {
    auto it = tiles.find(x);
    return it == tiles.end() ? nullptr : &it->second;
  }
};

// Direction of the unique maximal-level stripe line through x. Errors:
// Concurrency when all three are unbounded (the central tile of an integral
// parameter), PrecisionExceeded when truncation hides the maximum.
StripeInfo stripe_dir(const TriContext& ctx, QPoint x);

// Closed-form bits of the displaced-stripe side and of the split order, read
// off the 2-adic expansion of the triple coordinates of x - q. The shift bit
// is bit nu(t_j) of t_{j+2} (j the stripe index) and the color bit is bit
// nu(t_{j+2} - t_{j+1}) of t_{j+2}.
BitResult shift_bit_formula(const TriContext& ctx, QPoint x);
BitResult color_bit_formula(const TriContext& ctx, QPoint x);

// shift XOR color with the combined error set.
ParityResult parity(const TriContext& ctx, QPoint x);

// Sign (+1/-1) of the side of the stripe line through x (direction dir) on
// which the point g lies, in the frame f(dir) above; 0 iff g is on the line.
int side_sign(ADir dir, QPoint x, PPoint g);

// Full patch of geometric tile marks on hex_ball(R): stripes from levels,
// shifts from governing centroids, splits from the coloring solver (runs the
// solver leaves free are settled by walking their dual line to the nearest
// transverse tile), singular lines resolved through the supplied free bits.
// Deterministic in (q, R, K, freebits).
Patch generate_patch(const QadicParam& q, i64 R, int K, const FreeBits& freebits);

// Geometric mark of a single tile: convenience wrapper that generates the
// patch of radius hexdist(x) around the origin and returns its tile at x.
TileMark tile_mark_geometric(const TriContext& ctx, QPoint x, const FreeBits& freebits);

// Seeded residue-form parameter at depth K, rejection-sampled so that every
// stripe/color level within hex_ball(R) is at most K-2 (the stability bound),
// making every tile of the ball determinable.
QadicParam sample_generic_q(u64 seed, int K, i64 R);

}  // namespace hexlimit
