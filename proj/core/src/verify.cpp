#include "hexlimit/verify.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <vector>

#include "hexlimit/triangulation.hpp"

namespace hexlimit {

namespace {

constexpr i64 kBoundaryMargin = 2;

std::string q2s(QPoint x) {
  return "(" + std::to_string(x.m) + "," + std::to_string(x.n) + ")";
}

// Consecutive centers on a dual line differ by one step of 3*w.
QPoint wline_step(WDir W) {
  switch (W) {
    case WDir::W1: return {2, 1};
    case WDir::W2: return {1, 2};
    case WDir::W21: return {-1, 1};
  }
  return {0, 0};
}

// Union-find over booleans with a parity label on each link.
struct ParityDSU {
  std::vector<int> parent;
  std::vector<int> rnk;
  std::vector<unsigned char> rel;  // parity of node relative to its parent

  explicit ParityDSU(int n) : parent(n), rnk(n, 0), rel(n, 0) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  std::pair<int, int> find(int i) {
    // Iterative with full path compression.
    int root = i;
    int par = 0;
    while (parent[root] != root) {
      par ^= rel[root];
      root = parent[root];
    }
    int node = i;
    int p = par;
    while (parent[node] != root) {
      int next = parent[node];
      int next_p = p ^ rel[node];
      parent[node] = root;
      rel[node] = static_cast<unsigned char>(p);
      node = next;
      p = next_p;
    }
    return {root, par};
  }

  // Enforce value(a) XOR value(b) == want; false on contradiction.
  bool unite(int a, int b, int want) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == want;
    int link = want ^ pa ^ pb;
    if (rnk[ra] > rnk[rb]) {
      parent[rb] = ra;
      rel[rb] = static_cast<unsigned char>(link);
    } else {
      parent[ra] = rb;
      rel[ra] = static_cast<unsigned char>(link);
      if (rnk[ra] == rnk[rb]) ++rnk[rb];
    }
    return true;
  }
};

}  // namespace

std::string to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::R1: return "R1";
    case Violation::Kind::R2: return "R2";
    case Violation::Kind::ThreeColor: return "ThreeColor";
    case Violation::Kind::Prototile: return "Prototile";
    case Violation::Kind::Periodicity: return "Periodicity";
  }
  return "?";
}

std::string format_violation(const Violation& v) {
  return to_string(v.kind) + "\t" + std::to_string(v.site.m) + "\t" +
         std::to_string(v.site.n) + "\t" + v.detail;
}

ADir stripe_on_wline(WDir line) { return perp_a(line); }

int full_diameter_color(ADir stripe, WDir line) {
  assert(line != perp_w(stripe));
  switch (stripe) {
    case ADir::A1: return line == WDir::W1 ? 1 : 0;
    case ADir::A2: return line == WDir::W2 ? 0 : 1;
    case ADir::A12: return line == WDir::W1 ? 0 : 1;
  }
  return -1;
}

int split_end_sign(ADir stripe) { return stripe == ADir::A1 ? 1 : -1; }

std::optional<int> diameter_end_color(const TileMark& tile, WDir line, int e) {
  assert(e == 1 || e == -1);
  if (!tile.stripe_valid) return std::nullopt;
  if (perp_w(tile.stripe) == line) {
    if (tile.split < 0) return std::nullopt;
    int tau = split_end_sign(tile.stripe);
    return tile.split ^ ((e * tau) == -1 ? 1 : 0);
  }
  return full_diameter_color(tile.stripe, line);
}

CheckReport check_r2(const Patch& patch) {
  CheckReport rep;
  for (WDir W : kWDirs) {
    QPoint step = wline_step(W);
    for (const auto& [x, tx] : patch.tiles) {
      QPoint y{x.m + step.m, x.n + step.n};
      const TileMark* ty = patch.find(y);
      if (!ty) continue;
      if (hexdist(x) > patch.R - kBoundaryMargin ||
          hexdist(y) > patch.R - kBoundaryMargin) {
        ++rep.skipped;
        continue;
      }
      auto cx = diameter_end_color(tx, W, 1);
      auto cy = diameter_end_color(*ty, W, -1);
      if (!cx || !cy) {
        ++rep.skipped;
        continue;
      }
      ++rep.checked;
      if ((*cx ^ *cy) != 1) {
        rep.violations.push_back(
            {Violation::Kind::R2, x,
             "equal facing end colors with " + q2s(y) + " on " + to_string(W)});
      }
    }
  }
  return rep;
}

CheckReport check_three_color(const Patch& patch) {
  CheckReport rep;
  std::optional<PPoint> sym;
  if (patch.q.is_exact()) {
    SingularClass cls = classify(patch.q);
    if (cls.kind == SingularClass::Kind::ICwL) sym = nonorientable_point(patch.q);
  }

  const PPoint w1{1, 0}, w2{0, 1};
  for (const auto& [x, tx] : patch.tiles) {
    (void)tx;
    for (PPoint corner : {w1, w2}) {
      PPoint p = to_p(x) + corner;
      // The three hexagons with a corner at p, and the dual direction / end
      // sign of the diameter end each contributes there.
      struct End {
        PPoint corner;
        WDir line;
        int e;
      };
      std::array<End, 3> ends{};
      if (coset_of(p) == Coset::W1coset) {
        ends = {End{{1, 0}, WDir::W1, 1},
                End{{0, -1}, WDir::W2, -1},
                End{{-1, 1}, WDir::W21, 1}};
      } else {
        ends = {End{{-1, 0}, WDir::W1, -1},
                End{{0, 1}, WDir::W2, 1},
                End{{1, -1}, WDir::W21, -1}};
      }
      int colors[3];
      bool usable = true;
      bool interior = true;
      for (int i = 0; i < 3 && usable; ++i) {
        QPoint c = to_q(p - ends[i].corner);
        const TileMark* t = patch.find(c);
        if (!t) {
          usable = false;
          break;
        }
        if (hexdist(c) > patch.R - kBoundaryMargin) interior = false;
        auto col = diameter_end_color(*t, ends[i].line, ends[i].e);
        if (!col) {
          usable = false;
          break;
        }
        colors[i] = *col;
      }
      if (!usable || !interior) {
        ++rep.skipped;
        continue;
      }
      ++rep.checked;
      if (colors[0] == colors[1] && colors[1] == colors[2]) {
        if (sym && p == *sym) {
          rep.flagged.push_back(p);
        } else {
          rep.violations.push_back(
              {Violation::Kind::ThreeColor, x,
               "monochromatic vertex at p=(" + std::to_string(p.p) + "," +
                   std::to_string(p.q) + ") color " + std::to_string(colors[0])});
        }
      }
    }
  }
  return rep;
}

CheckReport check_prototile(const Patch& patch) {
  CheckReport rep;
  TriContext ctx{patch.q, patch.K};
  for (const auto& [x, t] : patch.tiles) {
    if (!t.determined()) {
      ++rep.skipped;
      continue;
    }
    ++rep.checked;
    bool bits_ok = t.stripe_valid && (t.shift == 0 || t.shift == 1) &&
                   (t.split == 0 || t.split == 1) && (t.parity == 0 || t.parity == 1);
    if (!bits_ok) {
      rep.violations.push_back(
          {Violation::Kind::Prototile, x, "determined tile with uncommitted bits"});
      continue;
    }
    if (t.parity != (t.shift ^ t.split)) {
      rep.violations.push_back(
          {Violation::Kind::Prototile, x,
           "parity " + std::to_string(t.parity) + " != shift^split " +
               std::to_string(t.shift ^ t.split)});
    }

    // Stripe continuity: every determined tile interior to the same edge of
    // the stripe line must agree in direction and displacement side.
    Level lv = a_line_level(ctx, x, t.stripe);
    if (!lv.finite) {
      ++rep.skipped;  // infinite or depth-capped line: single displaced line
      continue;
    }
    if (lv.k < 1 || lv.k > 20) continue;  // level-0 impossible; cap defensively
    EdgeThrough edge = edge_through(ctx, x, t.stripe);
    if (edge.x_is_endpoint) {
      rep.violations.push_back(
          {Violation::Kind::R1, x, "tile is a vertex of its own stripe line"});
      continue;
    }
    QPoint a = a_vec(t.stripe);
    i64 span = i64{1} << edge.level;
    for (i64 s = 1; s < span; ++s) {
      QPoint y{edge.v0.m + s * a.m, edge.v0.n + s * a.n};
      if (!(x < y)) continue;  // each unordered pair once
      const TileMark* u = patch.find(y);
      if (!u || !u->determined()) {
        ++rep.skipped;
        continue;
      }
      if (!u->stripe_valid || u->stripe != t.stripe || u->shift != t.shift) {
        rep.violations.push_back(
            {Violation::Kind::R1, x,
             "edge partner " + q2s(y) + " disagrees on stripe/shift"});
      }
    }
  }
  return rep;
}

CheckReport check_aperiodicity(const Patch& patch, i64 rmax, i64 min_overlap) {
  CheckReport rep;
  const i64 R = patch.R;
  const i64 N = 2 * R + 1;
  std::vector<signed char> grid(static_cast<size_t>(N) * N, -1);
  auto at = [&](QPoint x) -> signed char& {
    return grid[static_cast<size_t>(x.m + R) * N + (x.n + R)];
  };
  std::vector<QPoint> known;
  known.reserve(patch.tiles.size());
  for (const auto& [x, t] : patch.tiles) {
    if (t.determined()) {
      at(x) = static_cast<signed char>(t.parity);
      known.push_back(x);
    }
  }
  for (QPoint t : hex_ball(rmax)) {
    if (t.m == 0 && t.n == 0) continue;
    if (t.m < 0 || (t.m == 0 && t.n < 0)) continue;  // t and -t are equivalent
    i64 overlap = 0;
    bool mismatch = false;
    for (QPoint x : known) {
      QPoint y{x.m + t.m, x.n + t.n};
      if (y.m < -R || y.m > R || y.n < -R || y.n > R || hexdist(y) > R) continue;
      signed char py = at(y);
      if (py < 0) continue;
      if (py != at(x)) {
        mismatch = true;
        break;
      }
      ++overlap;
    }
    if (mismatch) {
      ++rep.checked;
    } else if (overlap >= min_overlap) {
      rep.violations.push_back(
          {Violation::Kind::Periodicity, t,
           "parity agrees on overlap of " + std::to_string(overlap)});
    } else {
      ++rep.skipped;
    }
  }
  return rep;
}

ColoringResult solve_coloring(const std::map<QPoint, StripeShift>& stripes,
                              const std::map<QPoint, int>& presets) {
  ColoringResult res;
  std::vector<QPoint> pts;
  pts.reserve(stripes.size());
  std::map<QPoint, int> idx;
  for (const auto& [x, ss] : stripes) {
    (void)ss;
    idx.emplace(x, static_cast<int>(pts.size()));
    pts.push_back(x);
  }
  const int G = static_cast<int>(pts.size());  // ground node: boolean 0
  ParityDSU dsu(G + 1);

  for (WDir W : kWDirs) {
    QPoint step = wline_step(W);
    int tau = split_end_sign(stripe_on_wline(W));
    for (const auto& [x, sx] : stripes) {
      auto it = stripes.find(QPoint{x.m + step.m, x.n + step.n});
      if (it == stripes.end()) continue;
      QPoint y = it->first;
      const StripeShift& sy = it->second;
      bool vx = perp_w(sx.stripe) == W;
      bool vy = perp_w(sy.stripe) == W;
      bool ok = true;
      if (vx && vy) {
        // Both split diameters lie on this line: the opposite-facing-ends rule
        // forces the split orders equal.
        ok = dsu.unite(idx.at(x), idx.at(y), 0);
      } else if (vx && !vy) {
        int C = full_diameter_color(sy.stripe, W);
        ok = dsu.unite(idx.at(x), G, 1 ^ C ^ (tau == -1 ? 1 : 0));
      } else if (!vx && vy) {
        int C = full_diameter_color(sx.stripe, W);
        ok = dsu.unite(idx.at(y), G, 1 ^ C ^ (tau == 1 ? 1 : 0));
      } else {
        if ((full_diameter_color(sx.stripe, W) ^
             full_diameter_color(sy.stripe, W)) != 1)
          ok = false;
      }
      if (!ok) {
        res.contradiction = std::make_pair(x, y);
        return res;
      }
    }
  }

  for (const auto& [x, bit] : presets) {
    auto it = idx.find(x);
    if (it == idx.end()) continue;
    if (!dsu.unite(it->second, G, bit)) {
      res.contradiction = std::make_pair(x, x);
      return res;
    }
  }

  auto [root_g, par_g] = dsu.find(G);
  std::map<int, std::vector<QPoint>> comps;
  for (int i = 0; i < G; ++i) {
    auto [r, p] = dsu.find(i);
    if (r == root_g) {
      res.forced.emplace(pts[i], p ^ par_g);
    } else {
      comps[r].push_back(pts[i]);
    }
  }
  for (auto& [r, members] : comps) {
    (void)r;
    res.free_components.push_back(std::move(members));
  }
  std::sort(res.free_components.begin(), res.free_components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return res;
}

}  // namespace hexlimit
