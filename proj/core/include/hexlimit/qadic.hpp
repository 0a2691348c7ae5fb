#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "hexlimit/lattice.hpp"

// 2-adic scalars, the tiling parameter q (a pair of them, one per lattice
// basis direction), the division-by-3 constants, arithmetic in the completion
// of P with its 3-torsion, and the singularity classification of parameters.

namespace hexlimit {

using u64 = std::uint64_t;

// Requested residue depth exceeds what the value knows.
class depth_error : public std::runtime_error {
 public:
  explicit depth_error(const std::string& what) : std::runtime_error(what) {}
};

// Exact-form-only operation invoked on a residue-form value.
class form_error : public std::runtime_error {
 public:
  explicit form_error(const std::string& what) : std::runtime_error(what) {}
};

class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// A 2-adic integer, either Exact{num/den} with den odd (so the rational lies
// in the 2-adic integers and has a residue at every depth) or Residue{value
// mod 2^depth}. Depths are capped at 64; residue arithmetic is uint64 masked.
class Dyadic {
 public:
  static constexpr int kMaxDepth = 64;

  Dyadic() = default;  // exact zero, per the member initializers
  static Dyadic exact(i64 num, i64 den = 1);
  static Dyadic residue(u64 value, int depth);

  bool is_exact() const { return exact_; }
  // Exact values can serve any representable depth.
  int depth() const { return exact_ ? kMaxDepth : depth_; }

  i64 num() const;  // throws form_error on residue form
  i64 den() const;

  // Value mod 2^k in [0, 2^k); throws depth_error if k exceeds depth().
  u64 residue_mod(int k) const;

  bool is_integer() const;              // exact and den == 1
  bool minus_is_integer(i64 rn, i64 rd) const;  // (this - rn/rd) in Z

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a);
  friend Dyadic operator*(i64 c, const Dyadic& a);
  friend bool operator==(const Dyadic& a, const Dyadic& b);

 private:
  bool exact_{true};
  i64 num_{0};
  i64 den_{1};
  u64 value_{0};
  int depth_{0};
};

// The parameter q = u*a1 + v*a2 in the completion of Q.
struct QadicParam {
  Dyadic u;
  Dyadic v;

  bool is_exact() const { return u.is_exact() && v.is_exact(); }
  int depth() const { return std::min(u.depth(), v.depth()); }

  friend QadicParam operator+(const QadicParam& a, const QadicParam& b) {
    return {a.u + b.u, a.v + b.v};
  }
  friend QadicParam operator-(const QadicParam& a, const QadicParam& b) {
    return {a.u - b.u, a.v - b.v};
  }
  friend QadicParam operator*(i64 c, const QadicParam& a) { return {c * a.u, c * a.v}; }

  static QadicParam from_q(QPoint x) { return {Dyadic::exact(x.m), Dyadic::exact(x.n)}; }
};

// Canonical representative c_k of q mod 2^kQ with coordinates in [0, 2^k).
// Throws depth_error if a residue-form q is shallower than k.
QPoint residue(const QadicParam& q, int k);

// s1 = (-1/3)*a1 and s2 = (-1/3)*a2, with their geometric-series partial sums
// s1_partial(k) = a1*(1 + 4 + ... + 4^k) and likewise for s2.
struct SConstants {
  static QadicParam s1() { return {Dyadic::exact(-1, 3), Dyadic::exact(0)}; }
  static QadicParam s2() { return {Dyadic::exact(0), Dyadic::exact(-1, 3)}; }
  static QPoint s1_partial(int k);  // k >= -1; k = -1 gives the empty sum 0
  static QPoint s2_partial(int k);
};

// Element of the inverse limit of P/2^kQ under the Smith decomposition
// P/2^kQ = Z/2^k (+) Z/(3*2^k); the second factor is split by CRT into the
// discrete Z/3 part `t` and a 2-adic part `e2`. Multiplication by 3 kills `t`,
// which is exactly the 3-torsion of the completion.
struct PbarElem {
  Dyadic e1;
  int t{0};
  Dyadic e2;

  static PbarElem from_p(PPoint x);
  static PbarElem from_qbar(const QadicParam& q);

  friend PbarElem operator+(const PbarElem& a, const PbarElem& b);
  friend PbarElem operator-(const PbarElem& a, const PbarElem& b);
  friend PbarElem operator*(i64 c, const PbarElem& a);

  bool is_zero_mod(int depth) const;
  bool equal_mod(const PbarElem& other, int depth) const;
};

// Verifies the scaling identities for powers of 2 acting on w1 and w2 (both
// displayed forms and their index-swapped versions) in residue arithmetic at
// depth 2k+2. Exact equality required.
bool lemma_s_check(int k);

// Verifies 3*(w1 + s2 + 2*s1) = 0 = 3*(w2 + s1 + 2*s2) at every depth up to
// max_depth while both elements are themselves nonzero.
bool torsion_check(int max_depth = Dyadic::kMaxDepth);

struct SingularClass {
  enum class Kind { GenericToDepth, IaL, IwL, CHT, ICwL };
  enum class Branch { Up, Down };

  Kind kind{Kind::GenericToDepth};
  int generic_depth{-1};  // -1 means "to every depth" (exact generic)
  ADir adir{ADir::A1};    // for IaL
  WDir wdir{WDir::W1};    // for IwL
  Branch branch{Branch::Up};
  int fiber{1};  // 1 generic, 2 single infinite line, 6 ICwL, 12 CHT

  std::string to_string() const;
};

// Table-driven classification; requires Exact form (throws form_error
// otherwise: a finite-depth residue can only assert "generic to its depth").
// Checks in the fixed order CHT > ICwL > IaL > IwL; outside CHT/ICwL the six
// line conditions are mutually exclusive.
SingularClass classify(const QadicParam& q);

// For ICwL parameters the unique point with no final orientation; empty
// otherwise. The defining sum collapses to an exact P-point.
std::optional<PPoint> nonorientable_point(const QadicParam& q);

// q-spec grammar shared by the CLI and patch headers:
//   rat:<num>[/<den>],<num>[/<den>]  |  res:K=<k>;u=<int>;v=<int>
//   cht:<m>,<n>                      |  icwl:up|down[+<m>,<n>]
QadicParam parse_qspec(const std::string& spec);
std::string format_qspec(const QadicParam& q);

}  // namespace hexlimit
