#include <doctest.h>

#include <string>

#include "hexlimit/qadic.hpp"

using namespace hexlimit;

namespace {

// Oracle for residues of exact rationals: with an odd denominator the residue
// r at depth k is the unique r in [0, 2^k) with den * r == num (mod 2^k).
bool residue_solves_congruence(const Dyadic& d, int k) {
  u64 mod_mask = (k == 64) ? ~0ull : ((1ull << k) - 1);
  u64 r = d.residue_mod(k);
  u64 lhs = (static_cast<u64>(d.den()) * r) & mod_mask;
  u64 rhs = static_cast<u64>(d.num()) & mod_mask;
  return lhs == rhs;
}

}  // namespace

TEST_CASE("exact dyadic residues solve the defining congruence") {
  const i64 nums[] = {0, 1, -1, 5, -7, 100, -1000, 12345};
  const i64 dens[] = {1, 3, 5, 7, 9, 15, 21};
  for (i64 n : nums) {
    for (i64 d : dens) {
      Dyadic x = Dyadic::exact(n, d);
      for (int k = 1; k <= 12; ++k) {
        CAPTURE(n);
        CAPTURE(d);
        CAPTURE(k);
        CHECK(residue_solves_congruence(x, k));
      }
    }
  }
}

TEST_CASE("even denominators are rejected, depth limits enforced") {
  CHECK_THROWS_AS(Dyadic::exact(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(Dyadic::exact(1, 0), std::invalid_argument);
  Dyadic r = Dyadic::residue(5, 4);
  CHECK(r.residue_mod(4) == 5);
  CHECK(r.residue_mod(2) == 1);
  CHECK_THROWS_AS(r.residue_mod(5), depth_error);
  CHECK_THROWS_AS(r.num(), form_error);
}

TEST_CASE("dyadic arithmetic: exact forms reduce, residue forms track depth") {
  Dyadic a = Dyadic::exact(1, 3);
  Dyadic b = Dyadic::exact(1, 5);
  Dyadic s = a + b;
  CHECK(s.num() == 8);
  CHECK(s.den() == 15);
  Dyadic t = 3 * a;
  CHECK(t.num() == 1);
  CHECK(t.den() == 1);
  CHECK(t.is_integer());

  Dyadic r = Dyadic::residue(6, 4);
  Dyadic mixed = a + r;  // depth limited by the residue operand
  CHECK(mixed.depth() == 4);
  u64 expect = (Dyadic::exact(1, 3).residue_mod(4) + 6) & 0xf;
  CHECK(mixed.residue_mod(4) == expect);

  CHECK(Dyadic::exact(1, 3).minus_is_integer(1, 3));
  CHECK(Dyadic::exact(1, 3).minus_is_integer(4, 3));
  CHECK(Dyadic::exact(1, 3).minus_is_integer(-2, 3));
  CHECK_FALSE(Dyadic::exact(1, 3).minus_is_integer(1, 5));
}

TEST_CASE("residue tower of the one-third parameters") {
  QadicParam q = parse_qspec("rat:-1/3,0");
  const i64 expected[8] = {1, 1, 5, 5, 21, 21, 85, 85};
  for (int k = 1; k <= 8; ++k) {
    QPoint c = residue(q, k);
    CHECK(c.m == expected[k - 1]);
    CHECK(c.n == 0);
  }
  // Partial geometric sums: s1_partial(k) = (1 + 4 + ... + 4^k) * a1, and the
  // residue of -1/3 at depth 2k+2 is exactly that sum.
  for (int k = -1; k <= 6; ++k) {
    i64 sum = 0, pow = 1;
    for (int i = 0; i <= k; ++i) {
      sum += pow;
      pow *= 4;
    }
    CHECK(SConstants::s1_partial(k) == QPoint{sum, 0});
    CHECK(SConstants::s2_partial(k) == QPoint{0, sum});
    if (k >= 0) {
      CHECK(residue(SConstants::s1(), 2 * k + 2) == QPoint{sum, 0});
      CHECK(residue(SConstants::s2(), 2 * k + 2) == QPoint{0, sum});
    }
  }
}

TEST_CASE("residues are coherent down the tower") {
  QadicParam q{Dyadic::exact(7, 9), Dyadic::exact(-5, 21)};
  for (int k = 2; k <= 16; ++k) {
    QPoint hi = residue(q, k);
    QPoint lo = residue(q, k - 1);
    i64 mod = i64{1} << (k - 1);
    CHECK(((hi.m - lo.m) % mod + mod) % mod == 0);
    CHECK(((hi.n - lo.n) % mod + mod) % mod == 0);
  }
}

TEST_CASE("scaling identities and torsion of the completion") {
  for (int k = 1; k <= 30; ++k) {
    CAPTURE(k);
    CHECK(lemma_s_check(k));
  }
  CHECK(torsion_check(64));
}

TEST_CASE("inverse-limit elements: linearity and the discrete component") {
  PbarElem zero = PbarElem::from_p(PPoint{0, 0});
  CHECK(zero.is_zero_mod(20));
  PbarElem w1 = PbarElem::from_p(PPoint{1, 0});
  CHECK_FALSE(w1.is_zero_mod(20));
  PbarElem sum = w1 + PbarElem::from_p(PPoint{2, 5});
  CHECK(sum.equal_mod(PbarElem::from_p(PPoint{3, 5}), 20));
  PbarElem tripled = 3 * w1;
  CHECK(tripled.equal_mod(PbarElem::from_p(PPoint{3, 0}), 20));
}

TEST_CASE("singularity classification fixtures") {
  SingularClass cht = classify(parse_qspec("cht:0,0"));
  CHECK(cht.kind == SingularClass::Kind::CHT);
  CHECK(cht.fiber == 12);

  SingularClass lattice = classify(QadicParam::from_q(QPoint{3, -2}));
  CHECK(lattice.kind == SingularClass::Kind::CHT);
  CHECK(lattice.fiber == 12);

  SingularClass ial = classify(parse_qspec("rat:-1/3,0"));
  CHECK(ial.kind == SingularClass::Kind::IaL);
  CHECK(ial.adir == ADir::A1);
  CHECK(ial.fiber == 2);

  SingularClass up = classify(parse_qspec("rat:2/3,1/3"));
  CHECK(up.kind == SingularClass::Kind::ICwL);
  CHECK(up.branch == SingularClass::Branch::Up);
  CHECK(up.fiber == 6);

  SingularClass down = classify(parse_qspec("rat:1/3,2/3"));
  CHECK(down.kind == SingularClass::Kind::ICwL);
  CHECK(down.branch == SingularClass::Branch::Down);

  // An integer transverse coordinate u - 2v with everything else fractional
  // puts q on a single infinite dual line through tile centers.
  SingularClass iwl = classify(parse_qspec("rat:1/5,-2/5"));
  CHECK(iwl.kind == SingularClass::Kind::IwL);
  CHECK(iwl.wdir == WDir::W1);
  CHECK(iwl.fiber == 2);

  SingularClass gen = classify(parse_qspec("rat:1/5,3/7"));
  CHECK(gen.kind == SingularClass::Kind::GenericToDepth);
  CHECK(gen.generic_depth == -1);
  CHECK(gen.fiber == 1);

  CHECK_THROWS_AS(classify(parse_qspec("res:K=8;u=3;v=5")), form_error);
}

TEST_CASE("icwl specs land on the concurrent-line classes") {
  SingularClass up = classify(parse_qspec("icwl:up"));
  CHECK(up.kind == SingularClass::Kind::ICwL);
  CHECK(up.branch == SingularClass::Branch::Up);
  SingularClass down = classify(parse_qspec("icwl:down+2,3"));
  CHECK(down.kind == SingularClass::Kind::ICwL);
  CHECK(down.branch == SingularClass::Branch::Down);
}

TEST_CASE("nonorientable point exists exactly for concurrent-line parameters") {
  CHECK(nonorientable_point(parse_qspec("rat:2/3,1/3")).has_value());
  CHECK(nonorientable_point(parse_qspec("rat:1/3,2/3")).has_value());
  CHECK_FALSE(nonorientable_point(parse_qspec("rat:1/5,3/7")).has_value());
  CHECK_FALSE(nonorientable_point(parse_qspec("rat:-1/3,0")).has_value());
  auto p = nonorientable_point(parse_qspec("rat:2/3,1/3"));
  REQUIRE(p.has_value());
  CHECK(coset_of(*p) != Coset::Q);  // a vertex of the tiling, not a center
}

TEST_CASE("q-spec grammar roundtrips") {
  const char* specs[] = {"rat:-1/3,0",     "rat:2/3,1/3", "rat:7,-4",
                         "res:K=12;u=77;v=3", "cht:2,-1",    "icwl:up",
                         "icwl:down+1,0"};
  for (const char* s : specs) {
    CAPTURE(s);
    QadicParam q = parse_qspec(s);
    QadicParam q2 = parse_qspec(format_qspec(q));
    CHECK(q.u == q2.u);
    CHECK(q.v == q2.v);
  }
  CHECK_THROWS_AS(parse_qspec("nope:1,2"), parse_error);
  CHECK_THROWS_AS(parse_qspec("rat:1/2,0"), parse_error);  // even denominator
  CHECK_THROWS_AS(parse_qspec("rat:1"), parse_error);
  CHECK_THROWS_AS(parse_qspec("res:K=70;u=1;v=1"), parse_error);
  CHECK_THROWS_AS(parse_qspec("res:K=8;u=1"), parse_error);
  CHECK_THROWS_AS(parse_qspec("icwl:sideways"), parse_error);
}
