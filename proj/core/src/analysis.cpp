#include "hexlimit/analysis.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "hexlimit/verify.hpp"

namespace hexlimit {

namespace {

i64 mod_pow2(i64 a, int m) {
  i64 mod = i64{1} << m;
  return ((a % mod) + mod) % mod;
}

bool same_mark(const TileMark& a, const TileMark& b) {
  return a.stripe == b.stripe && a.shift == b.shift && a.split == b.split &&
         a.parity == b.parity;
}

// Exponent of the class x + 2^m Q on which the mark at x is constant: one
// more than the deeper of the stripe line and its transverse dual line.
std::optional<int> predicted_exponent(const TriContext& ctx, QPoint x, ADir stripe) {
  Level l = a_line_level(ctx, x, stripe);
  Level k = w_line_level(ctx, x, perp_w(stripe));
  if (!l.finite || !k.finite) return std::nullopt;
  return std::max(l.k, k.k) + 1;
}

std::string serialize_determined(const Patch& patch) {
  std::ostringstream os;
  for (const auto& [x, t] : patch.tiles) {
    if (!t.determined()) continue;
    os << x.m << ',' << x.n << ',' << static_cast<int>(t.stripe) << ',' << t.shift
       << ',' << t.split << ';';
  }
  return os.str();
}

}  // namespace

CosetReport coset_period(const TriContext& ctx, QPoint x, const Patch& patch) {
  CosetReport rep;
  rep.x = x;
  const TileMark* tx = patch.find(x);
  if (!tx || !tx->determined()) {
    rep.note = "tile mark not determined";
    return rep;
  }
  auto pm = predicted_exponent(ctx, x, tx->stripe);
  if (!pm) {
    rep.note = "line level at depth cap; no prediction";
    return rep;
  }
  rep.predicted_m = *pm;

  auto constant_at = [&](int m, int* samples) {
    int n = 0;
    bool ok = true;
    for (const auto& [y, ty] : patch.tiles) {
      if (!ty.determined()) continue;
      if (mod_pow2(y.m - x.m, m) != 0 || mod_pow2(y.n - x.n, m) != 0) continue;
      ++n;
      if (!same_mark(ty, *tx)) ok = false;
    }
    if (samples) *samples = n;
    return ok;
  };

  bool ok = constant_at(rep.predicted_m, &rep.sample_count);
  if (rep.sample_count < 8) {
    rep.note = "insufficient samples";
    return rep;
  }
  rep.verified = ok;
  if (!ok) {
    rep.note = "mark varies on predicted class";
    return rep;
  }
  for (int m = 0; m <= rep.predicted_m; ++m) {
    if (constant_at(m, nullptr)) {
      rep.period_exponent = m;
      break;
    }
  }
  return rep;
}

IndexSeries total_index_series(int kmax) {
  if (kmax < 1 || kmax > 30) throw std::invalid_argument("series length out of range");
  IndexSeries s;
  Rational sum = Rational::make(0, 1);
  for (int k = 1; k <= kmax; ++k) {
    i64 num = ((i64{1} << (k - 1)) - 1) * 12 + 6;
    i64 den = i64{1} << (2 * (k + 1));
    Rational term = Rational::make(num, den);
    sum = sum + term;
    s.terms.push_back(term);
    s.partial_sums.push_back(sum);
    s.remainders.push_back(Rational::make(1, 1) - sum);
  }
  return s;
}

OrientationDensity orientation_density(const TriContext& ctx, i64 R) {
  OrientationDensity d;
  for (QPoint x : hex_ball(R)) {
    PPoint p0 = to_p(x);
    const PPoint pts[3] = {p0, PPoint{p0.p + 1, p0.q}, PPoint{p0.p, p0.q + 1}};
    for (const PPoint& p : pts) {
      ++d.total;
      Orientation o = centroid_orientation(ctx, p);
      if (o.kind == Orientation::Kind::Up) {
        ++d.up;
      } else if (o.kind == Orientation::Kind::Down) {
        ++d.down;
      } else {
        ++d.unresolved;
      }
    }
  }
  return d;
}

WindowReport window_accounting(const TriContext& ctx, i64 R) {
  Patch patch = generate_patch(ctx.q, R, ctx.K, FreeBits{});

  struct Agg {
    int parity;
    i64 members;
  };
  std::map<std::tuple<int, i64, i64>, Agg> classes;
  for (const auto& [x, t] : patch.tiles) {
    if (!t.determined()) continue;
    auto pm = predicted_exponent(ctx, x, t.stripe);
    if (!pm) continue;  // depth-capped: mass stays in the remainder
    int m = *pm;
    if (m > 30) continue;
    auto key = std::make_tuple(m, mod_pow2(x.m, m), mod_pow2(x.n, m));
    auto [it, fresh] = classes.try_emplace(key, Agg{t.parity, 0});
    if (!fresh && it->second.parity != t.parity)
      throw std::logic_error("parity varies inside a resolved residue class");
    ++it->second.members;
  }

  // Classes at different exponents must not nest; a nested pair would count
  // overlapping mass twice.
  std::set<std::tuple<int, i64, i64>> keys;
  for (const auto& [key, agg] : classes) {
    (void)agg;
    keys.insert(key);
  }
  for (const auto& [key, agg] : classes) {
    (void)agg;
    auto [m, rm, rn] = key;
    for (int mm = 0; mm < m; ++mm)
      if (keys.count(std::make_tuple(mm, mod_pow2(rm, mm), mod_pow2(rn, mm))))
        throw std::logic_error("nested parity classes");
  }

  WindowReport rep;
  rep.white = Rational::make(0, 1);
  rep.gray = Rational::make(0, 1);
  for (const auto& [key, agg] : classes) {
    auto [m, rm, rn] = key;
    WindowRow row;
    row.m = m;
    row.rep = QPoint{rm, rn};
    row.parity = agg.parity;
    row.members = agg.members;
    row.measure = Rational::make(1, i64{1} << (2 * m));
    rep.rows.push_back(row);
    if (row.parity == 1)
      rep.white = rep.white + row.measure;
    else
      rep.gray = rep.gray + row.measure;
  }
  rep.unresolved = Rational::make(1, 1) - rep.white - rep.gray;
  return rep;
}

FiberResult fiber_experiment(const QadicParam& q, i64 R) {
  SingularClass cls;
  try {
    cls = classify(q);
  } catch (const form_error&) {
    cls.kind = SingularClass::Kind::GenericToDepth;  // residue form: no freedom
  }
  int K = default_depth(R);

  std::vector<FreeBits> completions;
  switch (cls.kind) {
    case SingularClass::Kind::CHT:
      for (int c = 0; c < 12; ++c) {
        FreeBits fb;
        fb.tile_choice = c;
        completions.push_back(fb);
      }
      break;
    case SingularClass::Kind::ICwL:
      for (int mask = 0; mask < 8; ++mask) {
        FreeBits fb;
        fb.wline[WDir::W1] = mask & 1;
        fb.wline[WDir::W2] = (mask >> 1) & 1;
        fb.wline[WDir::W21] = (mask >> 2) & 1;
        completions.push_back(fb);
      }
      break;
    case SingularClass::Kind::IaL:
      for (int b = 0; b < 2; ++b) {
        FreeBits fb;
        fb.aline[cls.adir] = b;
        completions.push_back(fb);
      }
      break;
    case SingularClass::Kind::IwL:
      for (int b = 0; b < 2; ++b) {
        FreeBits fb;
        fb.wline[cls.wdir] = b;
        completions.push_back(fb);
      }
      break;
    case SingularClass::Kind::GenericToDepth:
      completions.push_back(FreeBits{});
      break;
  }

  FiberResult out;
  std::set<std::string> seen;
  for (const FreeBits& fb : completions) {
    Patch patch = generate_patch(q, R, K, fb);
    if (!seen.insert(serialize_determined(patch)).second) continue;
    ++out.count;
    if (!check_three_color(patch).flagged.empty()) ++out.symmetric;
  }
  return out;
}

}  // namespace hexlimit
