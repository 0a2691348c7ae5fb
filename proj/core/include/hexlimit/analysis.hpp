#pragma once

#include <string>
#include <vector>

#include "hexlimit/marking.hpp"
#include "hexlimit/rational.hpp"
#include "hexlimit/triangulation.hpp"

// Quantitative structure of generated patches: residue-class periodicity of
// tile marks, the exact index series of the determined fraction, centroid
// orientation densities, exact parity mass per resolved residue class, and
// the completion count ("fiber") over a single parameter.

namespace hexlimit {

// Periodicity of the mark at x: the line levels through x bound the class
// x + 2^m Q on which the whole mark is provably constant (m = max of the two
// levels plus one). `period_exponent` is the smallest exponent at which all
// determined members of the class inside the patch actually agree.
struct CosetReport {
  QPoint x;
  int predicted_m{-1};       // -1 when a level hit the depth cap
  int period_exponent{-1};   // smallest empirically constant exponent
  bool verified{false};      // constancy held at predicted_m with enough samples
  int sample_count{0};       // determined class members at predicted_m
  std::string note;
};

CosetReport coset_period(const TriContext& ctx, QPoint x, const Patch& patch);

// Exact mass of tiles resolved at each level: c(V_k) is the density of tiles
// whose mark is settled exactly at level k, S_k the cumulative share, and
// R_k = 1 - S_k the remainder. All entries are exact rationals.
struct IndexSeries {
  std::vector<Rational> terms;         // c(V_k), k = 1..kmax
  std::vector<Rational> partial_sums;  // S_k
  std::vector<Rational> remainders;    // R_k = 1 - S_k
};

IndexSeries total_index_series(int kmax);

// Counts of centroid orientations over every lattice-dual point within the
// ball (three per tile: the vertex itself and the two adjacent centroids).
struct OrientationDensity {
  i64 up{0};
  i64 down{0};
  i64 unresolved{0};  // lattice points and depth-capped centroids
  i64 total{0};

  double up_fraction() const { return total ? static_cast<double>(up) / static_cast<double>(total) : 0.0; }
  double down_fraction() const { return total ? static_cast<double>(down) / static_cast<double>(total) : 0.0; }
};

OrientationDensity orientation_density(const TriContext& ctx, i64 R);

// Exact parity mass per determined residue class found inside a ball: each
// determined tile x has its parity constant on x + 2^m Q (m as in
// coset_period), a class of density 4^-m. Classes never nest, so the white
// and gray masses plus the unaccounted remainder sum to exactly one.
struct WindowRow {
  int m{0};
  QPoint rep;        // class representative, coordinates in [0, 2^m)
  int parity{0};
  i64 members{0};    // class members seen inside the ball
  Rational measure;  // 4^-m
};

struct WindowReport {
  std::vector<WindowRow> rows;
  Rational white;
  Rational gray;
  Rational unresolved;  // 1 - white - gray
};

WindowReport window_accounting(const TriContext& ctx, i64 R);

// Number of distinct patches over one parameter on the radius-R ball,
// obtained by enumerating every admissible free-bit completion and collapsing
// duplicates. `symmetric` counts completions whose designated dual vertex is
// monochromatic (the color-check flags rather than rejects them).
struct FiberResult {
  int count{0};
  int symmetric{0};
};

FiberResult fiber_experiment(const QadicParam& q, i64 R);

}  // namespace hexlimit
