#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hexlimit/marking.hpp"

// Parameter recovery from bare parity data: the five-hexagon ring rule
// eliminates three of the four mod-2 cosets of the centers, the survivors are
// rescaled to a unit lattice, and the recursion yields the parameter residue
// by residue. Together with patch generation this demonstrates that the full
// markings and their parity shadow are mutually locally derivable.

namespace hexlimit {

struct ParityPatch {
  QPoint center{};  // domain is center + hex_ball(R)
  i64 R{0};
  std::map<QPoint, int> bits;  // absolute coordinates; only determined tiles

  friend bool operator==(const ParityPatch&, const ParityPatch&) = default;
};

// Strip a full patch to its parity shadow (undetermined tiles are omitted).
ParityPatch parity_of(const Patch& patch);

enum class ElimStatus { Unique, Ambiguous, NoSurvivor };
std::string to_string(ElimStatus s);

struct Elimination {
  ElimStatus status{ElimStatus::NoSurvivor};
  QPoint survivor{};              // coordinates in {0,1}^2: the coset mod 2Q
  std::vector<QPoint> survivors;  // all remaining candidates when Ambiguous
  std::array<i64, 4> witnesses{};  // eliminating rings per coset (index 2m+n mod 2)
  std::array<i64, 4> examined{};   // complete rings examined per coset
};

// A coset of Q/2Q is eliminated when some member whose full 6-ring lies in
// the patch has at least five ring tiles of one parity; the true vertex coset
// never does. Requires R >= 2. The lookup path classifies each 6-ring through
// a precomputed 64-pattern table instead of counting; both must agree.
Elimination eliminate_cosets(const ParityPatch& pp, bool use_lookup = false);

// Keep only centers congruent to `coset` mod 2Q and re-index them as a unit
// lattice via y = (x - rep) / 2, where rep is the lexicographically smallest
// surviving-coset point of the domain; parity carries over unchanged. The new
// radius is R/2 or (R-1)/2 depending on how the domain splits.
ParityPatch rescale(const ParityPatch& pp, QPoint coset);

struct RecoveredParam {
  std::vector<QPoint> residues;  // residues[k-1] = c_k, coordinates in [0, 2^k)
  int depth{0};
  std::string stop_reason;  // empty when the requested depth was reached
  std::vector<Elimination> audit;
};

// Iterated eliminate + rescale, accumulating the residue tower (coherent by
// construction); stops early with a reason on Ambiguous/NoSurvivor or when
// the patch becomes too small.
RecoveredParam recover(const ParityPatch& pp, int dmax, bool use_lookup = false);

// Depth the roundtrip demands from a radius-R parity patch; the base radius
// 12 is an empirical regression bound.
int recoverable_depth(i64 R);

struct MldReport {
  bool ok{false};
  int depth{0};
  std::string reason;
  std::vector<QPoint> mismatches;
};

// Full roundtrip: generate -> strip to parity (optionally flipping one bit
// for fault-injection) -> recover residues to the radius-determined depth ->
// regenerate markings from the recovered residues alone -> compare all
// regenerated Determined marks against the originals and the regenerated
// parity against the parity input, on the common interior (margin 16).
MldReport mld_roundtrip(const QadicParam& q, i64 R, int K, const FreeBits& freebits,
                        std::optional<QPoint> flip = std::nullopt);

}  // namespace hexlimit
