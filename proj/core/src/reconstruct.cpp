#include "hexlimit/reconstruct.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

namespace hexlimit {

namespace {

constexpr std::array<QPoint, 6> kRing = {
    QPoint{1, 0}, QPoint{0, 1},  QPoint{-1, 0},
    QPoint{0, -1}, QPoint{1, 1}, QPoint{-1, -1}};

int coset_index(QPoint x) {
  return 2 * static_cast<int>(((x.m % 2) + 2) % 2) +
         static_cast<int>(((x.n % 2) + 2) % 2);
}

QPoint coset_point(int idx) { return QPoint{idx >> 1, idx & 1}; }

bool ring_counts_eliminate(unsigned pattern) {
  int pc = std::popcount(pattern & 0x3fu);
  return pc >= 5 || pc <= 1;
}

// 64-entry verdict table for the ring patterns (the basic-patch lookup).
constexpr std::array<bool, 64> make_ring_table() {
  std::array<bool, 64> t{};
  for (unsigned p = 0; p < 64; ++p) {
    int pc = 0;
    for (unsigned b = 0; b < 6; ++b) pc += (p >> b) & 1u;
    t[p] = pc >= 5 || pc <= 1;
  }
  return t;
}
constexpr std::array<bool, 64> kRingTable = make_ring_table();

// Smallest domain point congruent to `coset` mod 2Q (the map is ordered).
std::optional<QPoint> find_rep(const ParityPatch& pp, QPoint coset) {
  int want = coset_index(coset);
  for (const auto& [x, b] : pp.bits) {
    (void)b;
    if (coset_index(x) == want) return x;
  }
  return std::nullopt;
}

}  // namespace

std::string to_string(ElimStatus s) {
  switch (s) {
    case ElimStatus::Unique: return "Unique";
    case ElimStatus::Ambiguous: return "Ambiguous";
    case ElimStatus::NoSurvivor: return "NoSurvivor";
  }
  return "?";
}

ParityPatch parity_of(const Patch& patch) {
  ParityPatch pp;
  pp.center = QPoint{0, 0};
  pp.R = patch.R;
  for (const auto& [x, t] : patch.tiles)
    if (t.determined()) pp.bits.emplace(x, t.parity);
  return pp;
}

Elimination eliminate_cosets(const ParityPatch& pp, bool use_lookup) {
  if (pp.R < 2) throw std::invalid_argument("patch too small for ring elimination");
  Elimination out;
  for (const auto& [y, b] : pp.bits) {
    unsigned pattern = 0;
    bool full = true;
    for (int i = 0; i < 6; ++i) {
      auto it = pp.bits.find(QPoint{y.m + kRing[i].m, y.n + kRing[i].n});
      if (it == pp.bits.end()) {
        full = false;
        break;
      }
      pattern |= static_cast<unsigned>(it->second) << i;
    }
    if (!full) continue;
    (void)b;
    int ci = coset_index(y);
    ++out.examined[ci];
    bool eliminates = use_lookup ? kRingTable[pattern] : ring_counts_eliminate(pattern);
    if (eliminates) ++out.witnesses[ci];
  }
  for (int ci = 0; ci < 4; ++ci)
    if (out.examined[ci] > 0 && out.witnesses[ci] == 0)
      out.survivors.push_back(coset_point(ci));
  if (out.survivors.empty()) {
    out.status = ElimStatus::NoSurvivor;
  } else if (out.survivors.size() == 1) {
    out.status = ElimStatus::Unique;
    out.survivor = out.survivors.front();
  } else {
    out.status = ElimStatus::Ambiguous;
  }
  return out;
}

ParityPatch rescale(const ParityPatch& pp, QPoint coset) {
  auto rep = find_rep(pp, coset);
  if (!rep) throw std::invalid_argument("coset has no members in the patch");
  QPoint r = *rep;
  QPoint d{pp.center.m - r.m, pp.center.n - r.n};
  QPoint half{floor_div_pow2(d.m, 1), floor_div_pow2(d.n, 1)};
  bool exact = (d.m == 2 * half.m) && (d.n == 2 * half.n);
  ParityPatch out;
  out.center = half;
  out.R = exact ? pp.R / 2 : (pp.R - 1) / 2;
  for (const auto& [x, bit] : pp.bits) {
    if (coset_index(x) != coset_index(r)) continue;
    QPoint y{(x.m - r.m) / 2, (x.n - r.n) / 2};
    if (hexdist(QPoint{y.m - out.center.m, y.n - out.center.n}) > out.R) continue;
    out.bits.emplace(y, bit);
  }
  return out;
}

RecoveredParam recover(const ParityPatch& pp, int dmax, bool use_lookup) {
  RecoveredParam out;
  if (dmax < 0 || dmax > 62) throw std::invalid_argument("recovery depth out of range");
  ParityPatch cur = pp;
  std::vector<QPoint> reps;
  for (int k = 1; k <= dmax; ++k) {
    if (cur.R < 2) {
      out.stop_reason = "patch exhausted at level " + std::to_string(k);
      break;
    }
    Elimination e = eliminate_cosets(cur, use_lookup);
    out.audit.push_back(e);
    if (e.status != ElimStatus::Unique) {
      out.stop_reason = to_string(e.status) + " at level " + std::to_string(k);
      break;
    }
    auto rep = find_rep(cur, e.survivor);
    if (!rep) {
      out.stop_reason = "surviving coset empty at level " + std::to_string(k);
      break;
    }
    reps.push_back(*rep);
    i128 mod = i128{1} << k;
    i128 cm = 0, cn = 0;
    for (int i = 0; i < k; ++i) {
      cm += static_cast<i128>(reps[i].m) << i;
      cn += static_cast<i128>(reps[i].n) << i;
    }
    cm = ((cm % mod) + mod) % mod;
    cn = ((cn % mod) + mod) % mod;
    out.residues.push_back(QPoint{static_cast<i64>(cm), static_cast<i64>(cn)});
    out.depth = k;
    cur = rescale(cur, e.survivor);
  }
  return out;
}

int recoverable_depth(i64 R) {
  int d = 0;
  while (R >= 24) {
    R /= 2;
    ++d;
  }
  return d;  // floor(log2(R / 12))
}

MldReport mld_roundtrip(const QadicParam& q, i64 R, int K, const FreeBits& freebits,
                        std::optional<QPoint> flip) {
  MldReport rep;
  Patch original = generate_patch(q, R, K, freebits);
  ParityPatch pp = parity_of(original);
  if (flip) {
    auto it = pp.bits.find(*flip);
    if (it == pp.bits.end()) {
      rep.reason = "flip target not in parity patch";
      return rep;
    }
    it->second ^= 1;
  }
  int d = recoverable_depth(R);
  if (d < 2) {
    rep.reason = "radius too small for regeneration depth";
    return rep;
  }
  RecoveredParam rec = recover(pp, d);
  if (rec.depth < d) {
    rep.reason = "recovery stopped: " + rec.stop_reason;
    return rep;
  }
  rep.depth = d;
  QPoint cd = rec.residues.back();
  QadicParam q2{Dyadic::residue(static_cast<u64>(cd.m), d),
                Dyadic::residue(static_cast<u64>(cd.n), d)};
  i64 R2 = std::max<i64>(R - 16, 4);
  Patch regen = generate_patch(q2, R2, d, FreeBits{});
  for (const auto& [x, t2] : regen.tiles) {
    if (!t2.determined()) continue;
    const TileMark* t1 = original.find(x);
    bool marks_equal = t1 && t1->determined() && t1->stripe == t2.stripe &&
                       t1->shift == t2.shift && t1->split == t2.split &&
                       t1->parity == t2.parity;
    auto itp = pp.bits.find(x);
    bool parity_matches_input = itp == pp.bits.end() || itp->second == t2.parity;
    if (!marks_equal || !parity_matches_input) rep.mismatches.push_back(x);
  }
  rep.ok = rep.mismatches.empty();
  if (!rep.ok && rep.reason.empty()) rep.reason = "regenerated marks differ";
  return rep;
}

}  // namespace hexlimit
