#include "hexlimit/marking.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "hexlimit/verify.hpp"

namespace hexlimit {

namespace {

// Valuation of a dyadic scalar as far as its form can tell: exact zero is a
// true infinity, residue-form zero only means "at least the depth".
struct DVal {
  bool exactly_zero{false};
  bool capped{false};
  int v{0};

  bool unbounded() const { return exactly_zero || capped; }
};

DVal dyadic_val(const Dyadic& t, int K) {
  if (t.is_exact()) {
    if (t.num() == 0) return {true, false, 0};
    int v = std::countr_zero(static_cast<u64>(t.num()));
    return {false, false, v};
  }
  int depth = std::min(t.depth(), K);
  u64 r = t.residue_mod(depth);
  if (r == 0) return {false, true, depth};
  return {false, false, std::countr_zero(r)};
}

// Bit of t at 2-adic position pos (works for negatives and odd-denominator
// rationals alike via the residue).
int bit_at(const Dyadic& t, int pos) {
  assert(pos >= 0 && pos < 64);
  return static_cast<int>((t.residue_mod(pos + 1) >> pos) & 1u);
}

// Triple coordinates of x - q; component i tracks the level of the
// kADirs[i]-line through x.
std::array<Dyadic, 3> triple_of(const TriContext& ctx, QPoint x) {
  Dyadic m = Dyadic::exact(x.m);
  Dyadic n = Dyadic::exact(x.n);
  Dyadic t1 = n - ctx.q.v;
  Dyadic t2 = ctx.q.u - m;
  Dyadic t3 = -(t1 + t2);
  return {t1, t2, t3};
}

struct TripleCtx {
  MarkErr err{MarkErr::None};
  int j{-1};
  std::array<Dyadic, 3> t{};
  std::array<DVal, 3> dv{};

  bool ok() const { return err == MarkErr::None; }
};

TripleCtx analyze_triple(const TriContext& ctx, QPoint x) {
  TripleCtx out;
  out.t = triple_of(ctx, x);
  int unbounded = 0;
  int zeros = 0;
  for (int i = 0; i < 3; ++i) {
    out.dv[i] = dyadic_val(out.t[i], ctx.K);
    unbounded += out.dv[i].unbounded() ? 1 : 0;
    zeros += out.dv[i].exactly_zero ? 1 : 0;
  }
  if (zeros >= 2) {
    // Two exact zeros force the third (the components sum to zero).
    out.err = MarkErr::Concurrency;
    return out;
  }
  if (unbounded >= 2) {
    out.err = MarkErr::PrecisionExceeded;
    return out;
  }
  if (unbounded == 1) {
    for (int i = 0; i < 3; ++i)
      if (out.dv[i].unbounded()) out.j = i;
    return out;
  }
  // All three finite: exactly one strict maximum (the other two tie).
  int j = 0;
  for (int i = 1; i < 3; ++i)
    if (out.dv[i].v > out.dv[j].v) j = i;
  for (int i = 0; i < 3; ++i) {
    if (i != j && out.dv[i].v == out.dv[j].v) {
      // A tie of true valuations for the maximum cannot happen; reaching this
      // means the inputs were inconsistent.
      throw std::logic_error("stripe valuation tie at (" + std::to_string(x.m) +
                             "," + std::to_string(x.n) + ")");
    }
  }
  out.j = j;
  return out;
}

// Shared guts of the two bit formulas: the bit of t[j+2] at the valuation of
// `sel`, with the error taxonomy for zero / depth-capped selectors.
BitResult bit_of_selector(const TripleCtx& tc, const Dyadic& sel, int K,
                          bool exact, MarkErr zero_err) {
  BitResult out;
  DVal sv = dyadic_val(sel, K);
  if (sv.exactly_zero) {
    out.err = zero_err;
    return out;
  }
  if (sv.capped || (!exact && sv.v >= K - 1)) {
    out.err = MarkErr::PrecisionExceeded;
    return out;
  }
  out.bit = bit_at(tc.t[(tc.j + 2) % 3], sv.v);
  return out;
}

// --- singular-parameter helpers ---------------------------------------------

// Consecutive centers on a dual line differ by one step of 3*w.
QPoint wline_step(WDir W) {
  switch (W) {
    case WDir::W1: return {2, 1};
    case WDir::W2: return {1, 2};
    case WDir::W21: return {-1, 1};
  }
  return {0, 0};
}

// x lies on the true infinite dual line of direction W through the parameter.
bool on_exact_wline(const QadicParam& q, QPoint x, WDir W) {
  switch (W) {
    case WDir::W1:
      return (q.u - 2 * q.v) == Dyadic::exact(detail::sub_i64(x.m, 2 * x.n));
    case WDir::W2:
      return (2 * q.u - q.v) == Dyadic::exact(detail::sub_i64(2 * x.m, x.n));
    case WDir::W21:
      return (q.u + q.v) == Dyadic::exact(detail::add_i64(x.m, x.n));
  }
  return false;
}

// Shift bit of the tiles on a secondary infinite lattice line (one not in the
// stripe direction of the chosen central tile) of an integral parameter, on
// the ray of sign e. The base pattern for a central stripe along a1 is
// carried to the other two stripes by the 120-degree rotation.
int secondary_ray_bit(ADir center_stripe, ADir ray_dir, int e) {
  static constexpr int kPlusBit[3][3] = {
      // ray:  a1  a2  a12          center stripe:
      {-1, 0, 0},   // a1
      {1, -1, 1},   // a2
      {0, 1, -1},   // a12
  };
  int b = kPlusBit[static_cast<int>(center_stripe)][static_cast<int>(ray_dir)];
  assert(b >= 0);
  return e > 0 ? b : 1 - b;
}

// Split order of the tiles on an infinite dual line through the center of an
// integral parameter, for a line that is not the one through the central
// tile's own split diameter: the two rays take opposite values, anchored by
// the central tile's full diameter color on that line.
int center_wline_ray_split(ADir center_stripe, WDir W, int e) {
  int c0 = full_diameter_color(center_stripe, W);
  int tau = split_end_sign(stripe_on_wline(W));
  return 1 ^ c0 ^ ((tau == e) ? 1 : 0);
}

// Sign of x - center along an infinite lattice line (direction dir).
int aline_ray_sign(ADir dir, QPoint x, QPoint center) {
  i64 d = 0;
  switch (dir) {
    case ADir::A1: d = x.m - center.m; break;
    case ADir::A2: d = x.n - center.n; break;
    case ADir::A12: d = x.m - center.m; break;
  }
  assert(d != 0);
  return d > 0 ? 1 : -1;
}

// Sign of x - center along an infinite dual line (direction W); center given
// in P coordinates (the designated point need not be a tile center).
int wline_ray_sign(WDir W, QPoint x, PPoint center_p) {
  PPoint xp = to_p(x);
  i64 d = 0;
  switch (W) {
    case WDir::W1: d = xp.p - center_p.p; break;   // step 3w1 = (2,1) in Q
    case WDir::W2: d = xp.q - center_p.q; break;
    case WDir::W21: d = xp.q - center_p.q; break;  // step (-1,1): q grows
  }
  assert(d != 0);
  return d > 0 ? 1 : -1;
}

}  // namespace

const char* to_string(MarkErr e) {
  switch (e) {
    case MarkErr::None: return "None";
    case MarkErr::OnUndeterminedLine: return "OnUndeterminedLine";
    case MarkErr::OnUncoloredLine: return "OnUncoloredLine";
    case MarkErr::PrecisionExceeded: return "PrecisionExceeded";
    case MarkErr::Concurrency: return "Concurrency";
    case MarkErr::FreeBitsRequired: return "FreeBitsRequired";
    case MarkErr::UnderDetermined: return "UnderDetermined";
  }
  return "?";
}

StripeInfo stripe_dir(const TriContext& ctx, QPoint x) {
  StripeInfo out;
  TripleCtx tc = analyze_triple(ctx, x);
  if (!tc.ok()) {
    out.err = tc.err;
    return out;
  }
  out.dir = kADirs[tc.j];
  const DVal& dj = tc.dv[tc.j];
  if (dj.exactly_zero) {
    out.exactly_infinite = true;
    out.level = Level::AtLeast(ctx.K);
  } else if (dj.capped || dj.v >= ctx.K) {
    out.level = Level::AtLeast(ctx.K);
  } else {
    out.level = Level::Finite(dj.v);
  }
  return out;
}

BitResult shift_bit_formula(const TriContext& ctx, QPoint x) {
  TripleCtx tc = analyze_triple(ctx, x);
  if (!tc.ok()) return {tc.err, -1};
  // The selector t_{j+1} + t_{j+2} equals -t_j exactly.
  return bit_of_selector(tc, -tc.t[tc.j], ctx.K, ctx.q.is_exact(),
                         MarkErr::OnUndeterminedLine);
}

BitResult color_bit_formula(const TriContext& ctx, QPoint x) {
  TripleCtx tc = analyze_triple(ctx, x);
  if (!tc.ok()) return {tc.err, -1};
  Dyadic sel = tc.t[(tc.j + 2) % 3] - tc.t[(tc.j + 1) % 3];
  return bit_of_selector(tc, sel, ctx.K, ctx.q.is_exact(),
                         MarkErr::OnUncoloredLine);
}

ParityResult parity(const TriContext& ctx, QPoint x) {
  ParityResult out;
  BitResult s = shift_bit_formula(ctx, x);
  BitResult c = color_bit_formula(ctx, x);
  out.shift_bit = s.bit;
  out.color_bit = c.bit;
  if (!s.ok()) {
    out.err = s.err;
  } else if (!c.ok()) {
    out.err = c.err;
  } else {
    out.parity = s.bit ^ c.bit;
  }
  return out;
}

int side_sign(ADir dir, QPoint x, PPoint g) {
  i128 s = 0;
  switch (dir) {
    case ADir::A1:
      s = i128(g.p) + 2 * i128(g.q) - 3 * i128(x.n);
      break;
    case ADir::A2:
      s = 3 * i128(x.m) - (2 * i128(g.p) + i128(g.q));
      break;
    case ADir::A12:
      s = (i128(g.p) - i128(g.q)) - 3 * (i128(x.m) - i128(x.n));
      break;
  }
  if (s > 0) return 1;
  if (s < 0) return -1;
  return 0;
}

// --- free bits ---------------------------------------------------------------

FreeBits FreeBits::parse(const std::string& spec) {
  FreeBits out;
  if (spec.empty() || spec == "none") return out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw parse_error("empty free-bit token");
    auto colon = tok.find(':');
    if (colon == std::string::npos)
      throw parse_error("free-bit token missing ':': " + tok);
    std::string kind = tok.substr(0, colon);
    std::string rest = tok.substr(colon + 1);
    if (kind == "tile") {
      if (out.tile_choice) throw parse_error("duplicate tile choice");
      size_t pos = 0;
      int v = -1;
      try {
        v = std::stoi(rest, &pos);
      } catch (const std::exception&) {
        throw parse_error("bad tile index: " + rest);
      }
      if (pos != rest.size() || v < 0 || v > 11)
        throw parse_error("tile index out of range: " + rest);
      out.tile_choice = v;
    } else if (kind == "aline" || kind == "wline") {
      auto eq = rest.find('=');
      if (eq == std::string::npos)
        throw parse_error("free-bit token missing '=': " + tok);
      std::string name = rest.substr(0, eq);
      std::string bit = rest.substr(eq + 1);
      if (bit != "0" && bit != "1")
        throw parse_error("free-bit value must be 0 or 1: " + tok);
      int b = bit == "1" ? 1 : 0;
      if (kind == "aline") {
        ADir d{};
        if (!parse_adir(name, d)) throw parse_error("bad lattice direction: " + name);
        if (out.aline.count(d)) throw parse_error("duplicate aline bit: " + name);
        out.aline[d] = b;
      } else {
        WDir w{};
        if (!parse_wdir(name, w)) throw parse_error("bad dual direction: " + name);
        if (out.wline.count(w)) throw parse_error("duplicate wline bit: " + name);
        out.wline[w] = b;
      }
    } else {
      throw parse_error("unknown free-bit kind: " + kind);
    }
  }
  return out;
}

std::string FreeBits::format() const {
  if (empty()) return "none";
  std::string out;
  auto push = [&out](const std::string& tok) {
    if (!out.empty()) out += ',';
    out += tok;
  };
  if (tile_choice) push("tile:" + std::to_string(*tile_choice));
  for (const auto& [d, b] : aline)
    push(std::string("aline:") + to_string(d) + "=" + std::to_string(b));
  for (const auto& [w, b] : wline)
    push(std::string("wline:") + to_string(w) + "=" + std::to_string(b));
  return out;
}

// --- patch generation --------------------------------------------------------

namespace {

struct SingularSetup {
  SingularClass cls;
  bool cht{false};
  bool icwl{false};
  bool ial{false};
  bool iwl{false};
  QPoint center{};        // CHT
  PPoint npoint{};        // ICwL
  bool have_tile{false};  // CHT completion supplied
  ADir td{ADir::A1};
  int ts{0};
  int to{0};
};

SingularSetup singular_setup(const QadicParam& q, const FreeBits& fb) {
  SingularSetup s;
  if (!q.is_exact()) return s;
  s.cls = classify(q);
  switch (s.cls.kind) {
    case SingularClass::Kind::CHT:
      s.cht = true;
      s.center = QPoint{q.u.num(), q.v.num()};
      if (fb.tile_choice) {
        int c = *fb.tile_choice;
        s.have_tile = true;
        s.td = kADirs[c >> 2];
        s.ts = (c >> 1) & 1;
        s.to = c & 1;
      }
      break;
    case SingularClass::Kind::ICwL:
      s.icwl = true;
      s.npoint = *nonorientable_point(q);
      break;
    case SingularClass::Kind::IaL:
      s.ial = true;
      break;
    case SingularClass::Kind::IwL:
      s.iwl = true;
      break;
    case SingularClass::Kind::GenericToDepth:
      break;
  }
  return s;
}

struct Entry {
  bool stripe_valid{false};
  ADir stripe{ADir::A1};
  int shift{-1};
  int split{-1};
  MarkErr reason{MarkErr::None};
  bool free_wline{false};  // on a singular dual line whose free bit is absent
  bool has_preset{false};
  int preset{-1};
};

}  // namespace

Patch generate_patch(const QadicParam& q, i64 R, int K, const FreeBits& freebits) {
  if (R < 1) throw std::invalid_argument("patch radius must be >= 1");
  if (K < 2 || K > 62) throw std::invalid_argument("working depth out of range");
  if (!q.is_exact() && q.depth() < K)
    throw depth_error("parameter depth below working depth");

  TriContext ctx{q, K};
  SingularSetup sing = singular_setup(q, freebits);
  const bool exact = q.is_exact();

  std::map<QPoint, Entry> entries;
  const i64 margin = 8;
  std::vector<QPoint> region = hex_ball(R + margin);

  {
    for (QPoint x : region) {
      Entry e;
      StripeInfo si = stripe_dir(ctx, x);
      if (!si.ok()) {
        if (si.err == MarkErr::Concurrency && sing.cht && sing.have_tile) {
          // The central tile of an integral parameter, completed by choice.
          e.stripe_valid = true;
          e.stripe = sing.td;
          e.shift = sing.ts;
          e.has_preset = true;
          e.preset = sing.to;
        } else if (si.err == MarkErr::Concurrency) {
          e.reason = MarkErr::FreeBitsRequired;
        } else {
          e.reason = si.err;
        }
        entries.emplace(x, e);
        continue;
      }

      e.stripe_valid = true;
      e.stripe = si.dir;

      // Shift: finite levels go through the governing centroid; true infinite
      // lines consume a free bit (or the chosen central tile's ray pattern).
      if (si.level.finite) {
        int L = si.level.k;
        if (L + 2 > K) {
          e.reason = MarkErr::PrecisionExceeded;
        } else {
          EdgeThrough edge = edge_through(ctx, x, si.dir);
          auto gov = governing_shift(ctx, edge);
          if (!gov) {
            e.reason = MarkErr::PrecisionExceeded;
          } else {
            int s = side_sign(si.dir, x, gov->centroid);
            assert(s != 0);
            e.shift = s > 0 ? 1 : 0;
          }
        }
      } else if (si.exactly_infinite) {
        if (sing.cht) {
          if (!sing.have_tile) {
            e.reason = MarkErr::FreeBitsRequired;
          } else if (si.dir == sing.td) {
            e.shift = sing.ts;  // one displaced line through the center
          } else {
            int ray = aline_ray_sign(si.dir, x, sing.center);
            e.shift = secondary_ray_bit(sing.td, si.dir, ray);
          }
        } else if (sing.ial) {
          auto it = freebits.aline.find(si.dir);
          if (it != freebits.aline.end())
            e.shift = it->second;
          else
            e.reason = MarkErr::FreeBitsRequired;
        } else {
          // No other class produces an infinite lattice line.
          e.reason = MarkErr::PrecisionExceeded;
        }
      } else {
        e.reason = MarkErr::PrecisionExceeded;
      }

      // Split presets on singular dual lines.
      if (exact && (sing.cht || sing.icwl || sing.iwl)) {
        for (WDir W : kWDirs) {
          if (!on_exact_wline(q, x, W)) continue;
          assert(perp_w(e.stripe) == W);
          if (sing.cht) {
            if (!sing.have_tile) {
              e.free_wline = true;
            } else if (W == perp_w(sing.td)) {
              e.has_preset = true;
              e.preset = sing.to;
            } else {
              int ray = wline_ray_sign(W, x, to_p(sing.center));
              e.has_preset = true;
              e.preset = center_wline_ray_split(sing.td, W, ray);
            }
          } else if (sing.icwl) {
            auto it = freebits.wline.find(W);
            if (it != freebits.wline.end()) {
              e.has_preset = true;
              e.preset = it->second;
            } else {
              e.free_wline = true;
            }
          } else {  // IwL
            assert(W == sing.cls.wdir);
            auto it = freebits.wline.find(W);
            if (it != freebits.wline.end()) {
              e.has_preset = true;
              e.preset = it->second;
            } else {
              e.free_wline = true;
            }
          }
          break;  // at most one singular dual line through a tile center
        }
      }
      entries.emplace(x, e);
    }

    // Solve the coloring constraints over everything with a known stripe.
    std::map<QPoint, StripeShift> stripes;
    std::map<QPoint, int> presets;
    for (const auto& [x, e] : entries) {
      if (!e.stripe_valid) continue;
      stripes.emplace(x, StripeShift{e.stripe, e.shift});
      if (e.has_preset) presets.emplace(x, e.preset);
    }
    ColoringResult col = solve_coloring(stripes, presets);
    if (col.contradiction) {
      throw std::logic_error("coloring contradiction between (" +
                             std::to_string(col.contradiction->first.m) + "," +
                             std::to_string(col.contradiction->first.n) + ") and (" +
                             std::to_string(col.contradiction->second.m) + "," +
                             std::to_string(col.contradiction->second.n) + ")");
    }

    for (const auto& [x, s] : col.forced) entries.at(x).split = s;

    // A non-singular free component is a run of consecutive tiles on one dual
    // line whose split diameters all lie along it, united equal. A level-l
    // line carries a tile with a transverse stripe within every 2^l steps
    // (the transverse form advances by 1 per step and its deep multiples
    // cannot have a strict perpendicular maximum), so walking the line to the
    // nearest such tile yields the constant that settles the whole run, no
    // matter how far outside the region it sits.
    for (const auto& comp : col.free_components) {
      bool touches_core = false;
      bool all_singular = true;
      for (QPoint x : comp) {
        if (hexdist(x) <= R) touches_core = true;
        if (!entries.at(x).free_wline) all_singular = false;
      }
      if (!touches_core || all_singular) continue;

      const WDir W = perp_w(entries.at(comp.front()).stripe);
      const QPoint step = wline_step(W);
      const int tau = split_end_sign(stripe_on_wline(W));
      Level lvl = w_line_level(ctx, comp.front(), W);
      if (!lvl.finite) continue;  // deeper than the working depth can see
      const i64 cap = (i64{1} << std::min(lvl.k, 22)) + 2;

      auto along = [W](QPoint x) { return W == WDir::W2 ? x.m : x.n; };
      QPoint lo = comp.front(), hi = comp.front();
      for (QPoint x : comp) {
        if (along(x) < along(lo)) lo = x;
        if (along(x) > along(hi)) hi = x;
      }

      int force = -1;
      for (int side : {+1, -1}) {
        QPoint cur = side > 0 ? hi : lo;
        for (i64 walk = 0; walk < cap && force < 0; ++walk) {
          cur = QPoint{cur.m + side * step.m, cur.n + side * step.n};
          ADir sd;
          if (auto it = entries.find(cur); it != entries.end()) {
            if (!it->second.stripe_valid) break;  // chain broken by unknown stripe
            sd = it->second.stripe;
          } else {
            StripeInfo si = stripe_dir(ctx, cur);
            if (!si.ok()) break;
            sd = si.dir;
          }
          if (perp_w(sd) == W) continue;  // still parallel: same free value
          int C = full_diameter_color(sd, W);
          force = 1 ^ C ^ ((side > 0 ? tau == -1 : tau == 1) ? 1 : 0);
        }
        if (force >= 0) break;
      }
      if (force < 0) continue;
      for (QPoint x : comp) entries.at(x).split = force;
    }
  }

  Patch patch;
  patch.q = q;
  patch.K = K;
  patch.R = R;
  patch.freebits = freebits;

  for (QPoint x : hex_ball(R)) {
    const Entry& e = entries.at(x);
    TileMark mark;
    mark.center = x;
    mark.stripe_valid = e.stripe_valid;
    if (e.stripe_valid) mark.stripe = e.stripe;
    mark.shift = e.shift;
    mark.split = e.split;
    mark.reason = e.reason;
    if (mark.reason == MarkErr::None && mark.split < 0)
      mark.reason = e.free_wline ? MarkErr::FreeBitsRequired : MarkErr::UnderDetermined;
    if (mark.reason == MarkErr::None && mark.shift < 0)
      throw std::logic_error("tile with no shift and no reason");
    // Undetermined tiles keep the fields that are individually known (the
    // checkers still use preset splits on singular lines, for instance); only
    // a fully resolved tile commits its parity.
    if (mark.reason == MarkErr::None) mark.parity = mark.shift ^ mark.split;
    patch.tiles.emplace(x, mark);
  }
  return patch;
}

TileMark tile_mark_geometric(const TriContext& ctx, QPoint x, const FreeBits& freebits) {
  i64 R = std::max<i64>(hexdist(x), 1);
  Patch patch = generate_patch(ctx.q, R, ctx.K, freebits);
  const TileMark* mark = patch.find(x);
  assert(mark != nullptr);
  return *mark;
}

QadicParam sample_generic_q(u64 seed, int K, i64 R) {
  if (K < 4 || K > 60) throw std::invalid_argument("sampling depth out of range");
  if (R < 1) throw std::invalid_argument("sampling radius must be >= 1");
  std::mt19937_64 rng(seed);
  const u64 mask = (K == 64) ? ~0ull : ((1ull << K) - 1);
  const u64 submask = (1ull << (K - 1)) - 1;  // levels must stay <= K-2
  std::vector<QPoint> ball = hex_ball(R);
  for (;;) {
    u64 um = rng() & mask;
    u64 vm = rng() & mask;
    QadicParam q{Dyadic::residue(um, K), Dyadic::residue(vm, K)};
    QPoint c = residue(q, K);
    bool ok = true;
    for (QPoint x : ball) {
      i64 d1 = x.m - c.m;
      i64 d2 = x.n - c.n;
      const i64 forms[6] = {d2, d1, d1 - d2, d1 - 2 * d2, d2 - 2 * d1, d1 + d2};
      for (i64 f : forms) {
        if ((static_cast<u64>(f) & submask) == 0) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) return q;
  }
}

}  // namespace hexlimit
