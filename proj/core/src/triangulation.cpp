#include "hexlimit/triangulation.hpp"

#include <bit>
#include <cassert>

namespace hexlimit {
namespace {

Level clamp_level(Val2 v, int K) {
  if (v.is_inf() || v.value() >= K) return Level::AtLeast(K);
  return Level::Finite(v.value());
}

// x in 2^k Q, i.e. x is a lattice point with both coordinates divisible by 2^k.
bool in_scaled_lattice(PPoint x, int k) {
  if (coset_of(x) != Coset::Q) return false;
  QPoint y = to_q(x);
  Val2 vm = val2(y.m);
  Val2 vn = val2(y.n);
  return (vm.is_inf() || vm.value() >= k) && (vn.is_inf() || vn.value() >= k);
}

QPoint rot_m60(QPoint v) { return QPoint{v.n, detail::sub_i64(v.n, v.m)}; }

PPoint centroid3(QPoint v0, QPoint v1, QPoint v2) {
  PPoint s = to_p(v0 + v1 + v2);
  assert(s.p % 3 == 0 && s.q % 3 == 0);
  return PPoint{s.p / 3, s.q / 3};
}

}  // namespace

std::string to_string(const Level& level) {
  if (level.finite) return std::to_string(level.k);
  return ">=" + std::to_string(level.k);
}

int default_depth(i64 radius) {
  if (radius < 1) radius = 1;
  int k = std::bit_width(static_cast<std::uint64_t>(radius)) + 4;
  if (k < 8) k = 8;
  if (k > 60) k = 60;
  return k;
}

Level vertex_level(const TriContext& ctx, QPoint x) {
  QPoint d = x - ctx.c(ctx.K);
  return clamp_level(std::min(val2(d.m), val2(d.n)), ctx.K);
}

Level a_line_level(const TriContext& ctx, QPoint x, ADir dir) {
  QPoint d = x - ctx.c(ctx.K);
  switch (dir) {
    case ADir::A1:
      return clamp_level(val2(d.n), ctx.K);
    case ADir::A2:
      return clamp_level(val2(d.m), ctx.K);
    case ADir::A12:
      return clamp_level(val2(detail::sub_i64(d.m, d.n)), ctx.K);
  }
  return Level::AtLeast(ctx.K);
}

Level w_line_level(const TriContext& ctx, QPoint x, WDir dir) {
  QPoint d = x - ctx.c(ctx.K);
  switch (dir) {
    case WDir::W1:
      return clamp_level(val2(detail::sub_i64(d.m, detail::mul_i64(2, d.n))), ctx.K);
    case WDir::W2:
      return clamp_level(val2(detail::sub_i64(d.n, detail::mul_i64(2, d.m))), ctx.K);
    case WDir::W21:
      return clamp_level(val2(detail::add_i64(d.m, d.n)), ctx.K);
  }
  return Level::AtLeast(ctx.K);
}

std::string to_string(const Orientation& o) {
  switch (o.kind) {
    case Orientation::Kind::Up:
      return "Up(" + std::to_string(o.level) + ")";
    case Orientation::Kind::Down:
      return "Down(" + std::to_string(o.level) + ")";
    case Orientation::Kind::None:
      return "None";
    case Orientation::Kind::Unknown:
      return "Unknown(" + std::to_string(o.level) + ")";
  }
  return "?";
}

Orientation centroid_orientation(const TriContext& ctx, PPoint x) {
  if (coset_of(x) == Coset::Q) return Orientation{Orientation::Kind::None, 0};
  Orientation last{Orientation::Kind::Unknown, 0};
  for (int level = 1; level <= ctx.K + 1; ++level) {
    const int k = level - 1;
    PPoint base = to_p(ctx.c(k));
    i64 scale = i64{1} << k;
    PPoint w1{scale, 0};
    PPoint w2{0, scale};
    bool up = in_scaled_lattice(x - base - w1, k);
    bool down = in_scaled_lattice(x - base - w2, k);
    assert(!(up && down));
    if (!up && !down) return last;
    last = Orientation{up ? Orientation::Kind::Up : Orientation::Kind::Down, level};
  }
  return Orientation{Orientation::Kind::Unknown, ctx.K + 1};
}

EdgeThrough edge_through(const TriContext& ctx, QPoint x, ADir dir) {
  Level lvl = a_line_level(ctx, x, dir);
  if (!lvl.finite) {
    throw unresolved_error("edge_through: line level unresolved at working depth " + std::to_string(ctx.K));
  }
  const int L = lvl.k;
  QPoint d = x - ctx.c(ctx.K);
  i64 component = (dir == ADir::A2) ? d.n : d.m;  // position along the line's direction
  i64 r = component & ((i64{1} << L) - 1);
  QPoint step = a_vec(dir);
  QPoint v0 = x - r * step;
  QPoint v1 = v0 + (i64{1} << L) * step;
  return EdgeThrough{v0, v1, dir, L, r == 0};
}

std::string to_string(ShiftSide side) {
  return side == ShiftSide::TowardUpCentroid ? "TowardUpCentroid" : "TowardDownCentroid";
}

std::optional<GoverningShift> governing_shift(const TriContext& ctx, const EdgeThrough& edge) {
  const i64 scale = i64{1} << edge.level;
  QPoint dirv = a_vec(edge.dir);
  QPoint apex_plus = edge.v0 + scale * rot60(dirv);
  QPoint apex_minus = edge.v0 + scale * rot_m60(dirv);
  PPoint g_plus = centroid3(edge.v0, edge.v1, apex_plus);
  PPoint g_minus = centroid3(edge.v0, edge.v1, apex_minus);

  Orientation o_plus = centroid_orientation(ctx, g_plus);
  Orientation o_minus = centroid_orientation(ctx, g_minus);
  assert(o_plus.kind != Orientation::Kind::None && o_minus.kind != Orientation::Kind::None);

  const int need = edge.level + 2;
  auto qualifies = [&](const Orientation& o) {
    return o.kind == Orientation::Kind::Unknown || o.level >= need;
  };
  bool hp = qualifies(o_plus);
  bool hm = qualifies(o_minus);
  if (hp == hm) return std::nullopt;  // not separable at this depth

  const Orientation& winner = hp ? o_plus : o_minus;
  if (winner.kind == Orientation::Kind::Unknown) return std::nullopt;
  GoverningShift g;
  g.centroid = hp ? g_plus : g_minus;
  g.side = winner.kind == Orientation::Kind::Up ? ShiftSide::TowardUpCentroid : ShiftSide::TowardDownCentroid;
  g.orientation_level = winner.level;
  return g;
}

}  // namespace hexlimit
