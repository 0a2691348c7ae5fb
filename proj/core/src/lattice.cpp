#include "hexlimit/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace hexlimit {

Val2 val2(i64 z) {
  if (z == 0) return Val2::inf();
  return Val2::finite(std::countr_zero(static_cast<std::uint64_t>(z)));
}

i64 dval(i64 z) {
  assert(z != 0 && "dval is undefined at 0; use val2 for the infinite case");
  return i64(1) << val2(z).value();
}

QPoint a_vec(ADir d) {
  switch (d) {
    case ADir::A1: return {1, 0};
    case ADir::A2: return {0, 1};
    case ADir::A12: return {1, 1};
  }
  return {};
}

PPoint w_vec(WDir d) {
  switch (d) {
    case WDir::W1: return {1, 0};
    case WDir::W2: return {0, 1};
    case WDir::W21: return {-1, 1};
  }
  return {};
}

WDir perp_w(ADir d) {
  switch (d) {
    case ADir::A1: return WDir::W2;
    case ADir::A2: return WDir::W1;
    case ADir::A12: return WDir::W21;
  }
  return WDir::W2;
}

ADir perp_a(WDir d) {
  switch (d) {
    case WDir::W1: return ADir::A2;
    case WDir::W2: return ADir::A1;
    case WDir::W21: return ADir::A12;
  }
  return ADir::A1;
}

const char* to_string(ADir d) {
  switch (d) {
    case ADir::A1: return "a1";
    case ADir::A2: return "a2";
    case ADir::A12: return "a12";
  }
  return "?";
}

const char* to_string(WDir d) {
  switch (d) {
    case WDir::W1: return "w1";
    case WDir::W2: return "w2";
    case WDir::W21: return "w21";
  }
  return "?";
}

bool parse_adir(const std::string& s, ADir& out) {
  for (ADir d : kADirs)
    if (s == to_string(d)) {
      out = d;
      return true;
    }
  return false;
}

bool parse_wdir(const std::string& s, WDir& out) {
  for (WDir d : kWDirs)
    if (s == to_string(d)) {
      out = d;
      return true;
    }
  return false;
}

TripleCoord to_triple(QPoint x) {
  TripleCoord t{x.n, detail::sub_i64(0, x.m), detail::sub_i64(x.m, x.n)};
  assert(t.x1 + t.x2 + t.x3 == 0);
  return t;
}

QPoint from_triple(TripleCoord t) {
  assert(t.x1 + t.x2 + t.x3 == 0);
  return {detail::sub_i64(0, t.x2), t.x1};
}

PPoint to_p(QPoint x) {
  // a1 = 2w1 - w2, a2 = -w1 + 2w2.
  return {detail::sub_i64(detail::mul_i64(2, x.m), x.n),
          detail::sub_i64(detail::mul_i64(2, x.n), x.m)};
}

Coset coset_of(PPoint x) {
  i64 r = (x.p - x.q) % 3;
  if (r < 0) r += 3;
  return static_cast<Coset>(r);
}

QPoint to_q(PPoint x) {
  assert(coset_of(x) == Coset::Q);
  // Inverse of to_p: m = (2p + q)/3, n = (p + 2q)/3.
  i64 m3 = detail::add_i64(detail::mul_i64(2, x.p), x.q);
  i64 n3 = detail::add_i64(x.p, detail::mul_i64(2, x.q));
  assert(m3 % 3 == 0 && n3 % 3 == 0);
  return {m3 / 3, n3 / 3};
}

QPoint rot120(QPoint x) {
  // a1 -> a2, a2 -> -(a1 + a2).
  return {detail::sub_i64(0, x.n), detail::sub_i64(x.m, x.n)};
}

PPoint rot120(PPoint x) {
  // w1 -> w2 - w1, w2 -> -w1.
  return {detail::sub_i64(0, detail::add_i64(x.p, x.q)), x.p};
}

QPoint rot60(QPoint x) {
  // a1 -> a1 + a2, a2 -> -a1.
  return {detail::sub_i64(x.m, x.n), x.m};
}

TripleCoord rot120(TripleCoord t) { return {t.x3, t.x1, t.x2}; }

i64 hexdist(QPoint x) {
  i64 d = std::max<i64>(std::llabs(x.m), std::llabs(x.n));
  return std::max<i64>(d, std::llabs(detail::sub_i64(x.m, x.n)));
}

std::vector<QPoint> hex_ball(i64 R) {
  assert(R >= 0);
  std::vector<QPoint> out;
  out.reserve(std::size_t(1) + 3ull * std::size_t(R) * (std::size_t(R) + 1));
  for (i64 m = -R; m <= R; ++m) {
    // max(|m|, |n|, |m-n|) <= R restricts n to [m-R, m+R] intersect [-R, R].
    i64 lo = std::max<i64>(-R, m - R);
    i64 hi = std::min<i64>(R, m + R);
    for (i64 n = lo; n <= hi; ++n) out.push_back({m, n});
  }
  return out;
}

std::array<double, 2> cartesian(PPoint x) {
  // w1 = (1/2, 1/(2*sqrt(3))), w2 = (0, 1/sqrt(3)).
  static const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  double px = static_cast<double>(x.p);
  double qx = static_cast<double>(x.q);
  return {0.5 * px, 0.5 * inv_sqrt3 * px + inv_sqrt3 * qx};
}

std::array<double, 2> cartesian(QPoint x) { return cartesian(to_p(x)); }

}  // namespace hexlimit
