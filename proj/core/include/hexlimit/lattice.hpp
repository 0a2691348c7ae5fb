#pragma once

#include <array>
#include <cassert>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Exact coordinates for the triangular lattice Q of hexagon centers, its
// index-3 superlattice P of centers plus vertices, the redundant three-axis
// coordinate system, and 2-adic valuations. Everything here is integer-exact;
// cartesian() exists only so the renderer can emit coordinates.
//
// Basis conventions, used consistently across the library:
//   a1 = (1, 0)                a2 = (-1/2, sqrt(3)/2)
//   w1 = (2*a1 + a2) / 3       w2 = (a1 + 2*a2) / 3
//   a1 = 2*w1 - w2             a2 = -w1 + 2*w2
// QPoint(m, n) denotes m*a1 + n*a2; PPoint(p, q) denotes p*w1 + q*w2.

namespace hexlimit {

using i64 = std::int64_t;
using i128 = __int128;

// Thrown when a computation would leave the validated int64 coordinate range.
class overflow_error : public std::runtime_error {
 public:
  explicit overflow_error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
inline i64 checked_i64(i128 v, const char* what) {
  if (v > i128(INT64_MAX) || v < i128(INT64_MIN)) throw overflow_error(what);
  return static_cast<i64>(v);
}
inline i64 add_i64(i64 a, i64 b) { return checked_i64(i128(a) + i128(b), "integer add overflow"); }
inline i64 sub_i64(i64 a, i64 b) { return checked_i64(i128(a) - i128(b), "integer sub overflow"); }
inline i64 mul_i64(i64 a, i64 b) { return checked_i64(i128(a) * i128(b), "integer mul overflow"); }
}  // namespace detail

// 2-adic valuation with an explicit infinity for 0, so that comparisons
// against D(0) never hide behind a large magic integer.
class Val2 {
 public:
  constexpr Val2() : k_(kInfSentinel) {}
  static constexpr Val2 finite(int k) {
    assert(k >= 0 && k < kInfSentinel);
    Val2 v;
    v.k_ = k;
    return v;
  }
  static constexpr Val2 inf() { return Val2(); }

  constexpr bool is_inf() const { return k_ == kInfSentinel; }
  constexpr int value() const {
    assert(!is_inf());
    return k_;
  }
  // Finite valuations compare by value; infinity is greater than everything
  // finite and equal to itself.
  friend constexpr auto operator<=>(Val2 a, Val2 b) { return a.k_ <=> b.k_; }
  friend constexpr bool operator==(Val2 a, Val2 b) { return a.k_ == b.k_; }

 private:
  static constexpr int kInfSentinel = 1 << 20;
  int k_;
};

// nu(z): largest k with 2^k dividing z; nu(0) = infinity.
Val2 val2(i64 z);

// D(z) = 2^nu(z). Defined only for z != 0 (use val2 when infinity can occur).
i64 dval(i64 z);

// floor(a / 2^k) for k >= 0, exact for negative a as well.
inline i64 floor_div_pow2(i64 a, int k) {
  assert(k >= 0);
  if (k >= 63) return a < 0 ? -1 : 0;
  return a >> k;
}

struct QPoint {
  i64 m{0};
  i64 n{0};

  friend QPoint operator+(QPoint a, QPoint b) {
    return {detail::add_i64(a.m, b.m), detail::add_i64(a.n, b.n)};
  }
  friend QPoint operator-(QPoint a, QPoint b) {
    return {detail::sub_i64(a.m, b.m), detail::sub_i64(a.n, b.n)};
  }
  friend QPoint operator-(QPoint a) { return {detail::sub_i64(0, a.m), detail::sub_i64(0, a.n)}; }
  friend QPoint operator*(i64 c, QPoint a) {
    return {detail::mul_i64(c, a.m), detail::mul_i64(c, a.n)};
  }
  friend bool operator==(QPoint a, QPoint b) = default;
  friend auto operator<=>(QPoint a, QPoint b) = default;
};

struct PPoint {
  i64 p{0};
  i64 q{0};

  friend PPoint operator+(PPoint a, PPoint b) {
    return {detail::add_i64(a.p, b.p), detail::add_i64(a.q, b.q)};
  }
  friend PPoint operator-(PPoint a, PPoint b) {
    return {detail::sub_i64(a.p, b.p), detail::sub_i64(a.q, b.q)};
  }
  friend PPoint operator-(PPoint a) { return {detail::sub_i64(0, a.p), detail::sub_i64(0, a.q)}; }
  friend PPoint operator*(i64 c, PPoint a) {
    return {detail::mul_i64(c, a.p), detail::mul_i64(c, a.q)};
  }
  friend bool operator==(PPoint a, PPoint b) = default;
  friend auto operator<=>(PPoint a, PPoint b) = default;
};

struct TripleCoord {
  i64 x1{0};
  i64 x2{0};
  i64 x3{0};

  friend bool operator==(TripleCoord a, TripleCoord b) = default;
};

enum class ADir { A1, A2, A12 };
enum class WDir { W1, W2, W21 };

constexpr std::array<ADir, 3> kADirs = {ADir::A1, ADir::A2, ADir::A12};
constexpr std::array<WDir, 3> kWDirs = {WDir::W1, WDir::W2, WDir::W21};

// Direction vectors. a-directions live in Q, w-directions in P.
QPoint a_vec(ADir d);  // A1 -> a1, A2 -> a2, A12 -> a1 + a2
PPoint w_vec(WDir d);  // W1 -> w1, W2 -> w2, W21 -> w2 - w1

// The w-direction perpendicular to an a-direction and vice versa
// (a1 | w2, a2 | w1, a1+a2 | w2-w1).
WDir perp_w(ADir d);
ADir perp_a(WDir d);

const char* to_string(ADir d);   // "a1" / "a2" / "a12"
const char* to_string(WDir d);   // "w1" / "w2" / "w21"
bool parse_adir(const std::string& s, ADir& out);
bool parse_wdir(const std::string& s, WDir& out);

// Triple coordinates (x1, x2, x3) = (n, -m, m-n); components sum to 0.
TripleCoord to_triple(QPoint x);
QPoint from_triple(TripleCoord t);

// Basis conversions. Every QPoint has an exact PPoint image; the reverse
// holds only on the Q coset.
PPoint to_p(QPoint x);

enum class Coset { Q = 0, W1coset = 1, W2coset = 2 };

// Coset of a PPoint under P/Q: (p - q) mod 3 with 0 -> Q, 1 -> w1+Q, 2 -> w2+Q.
Coset coset_of(PPoint x);

// Exact conversion back to Q coordinates; requires coset_of(x) == Coset::Q.
QPoint to_q(PPoint x);

// 2pi/3 counterclockwise rotation (a1 -> a2 -> -(a1+a2); w1 -> w2-w1 -> -w2).
QPoint rot120(QPoint x);
PPoint rot120(PPoint x);
// pi/3 counterclockwise rotation on Q (a1 -> a1+a2 -> a2 -> -a1 ...).
QPoint rot60(QPoint x);
TripleCoord rot120(TripleCoord t);  // (x1,x2,x3) -> (x3,x1,x2)

// Hexagonal graph distance from the origin (6-neighbor adjacency).
i64 hexdist(QPoint x);

// All lattice points within graph distance R of the origin, sorted by (m, n).
// Count is 1 + 3R(R+1).
std::vector<QPoint> hex_ball(i64 R);

// Euclidean embedding (render support only; never used in decision logic).
std::array<double, 2> cartesian(PPoint x);
std::array<double, 2> cartesian(QPoint x);

}  // namespace hexlimit
