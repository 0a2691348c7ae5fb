#include <doctest.h>

#include <map>

#include "hexlimit/marking.hpp"
#include "hexlimit/verify.hpp"

using namespace hexlimit;

namespace {

Patch clean_patch(u64 seed, i64 R) {
  int K = 10;
  QadicParam q = sample_generic_q(seed, K, R);
  return generate_patch(q, R, K, FreeBits{});
}

}  // namespace

TEST_CASE("coloring solver: consecutive split diameters on a dual line unite equal") {
  // Two tiles one dual step apart, both with the stripe whose split diameter
  // lies on that line: no forcing, a single two-member free component.
  std::map<QPoint, StripeShift> stripes;
  stripes[{0, 0}] = {ADir::A2, 0};
  stripes[{2, 1}] = {ADir::A2, 0};
  ColoringResult r = solve_coloring(stripes);
  CHECK_FALSE(r.contradiction.has_value());
  CHECK(r.forced.empty());
  REQUIRE(r.free_components.size() == 1);
  CHECK(r.free_components[0].size() == 2);

  // Pinning either variable propagates through the component.
  ColoringResult p = solve_coloring(stripes, {{QPoint{0, 0}, 1}});
  CHECK_FALSE(p.contradiction.has_value());
  CHECK(p.free_components.empty());
  CHECK(p.forced.at(QPoint{0, 0}) == 1);
  CHECK(p.forced.at(QPoint{2, 1}) == 1);
}

TEST_CASE("coloring solver: a neighboring full diameter forces the split") {
  // Variable at the negative end, constant (blue full diameter) at the
  // positive end: split forced to 1. Frozen against the end-sign convention.
  std::map<QPoint, StripeShift> stripes;
  stripes[{0, 0}] = {ADir::A2, 0};
  stripes[{2, 1}] = {ADir::A1, 0};
  ColoringResult r = solve_coloring(stripes);
  CHECK_FALSE(r.contradiction.has_value());
  CHECK(r.forced.at(QPoint{0, 0}) == 1);
  CHECK(r.forced.count(QPoint{2, 1}) == 0);  // not a variable of this line

  // Same pair with the roles reversed forces the complementary value.
  std::map<QPoint, StripeShift> rev;
  rev[{0, 0}] = {ADir::A1, 0};
  rev[{2, 1}] = {ADir::A2, 0};
  ColoringResult r2 = solve_coloring(rev);
  CHECK_FALSE(r2.contradiction.has_value());
  CHECK(r2.forced.at(QPoint{2, 1}) == 0);
}

TEST_CASE("coloring solver: equal-colored full diameters contradict") {
  std::map<QPoint, StripeShift> stripes;
  stripes[{0, 0}] = {ADir::A1, 0};
  stripes[{2, 1}] = {ADir::A1, 0};
  ColoringResult r = solve_coloring(stripes);
  REQUIRE(r.contradiction.has_value());
  CHECK(r.contradiction->first == QPoint{0, 0});
  CHECK(r.contradiction->second == QPoint{2, 1});

  // Opposite colors coexist: red (first-axis stripe seen on the w1+w2 line
  // would be wrong direction; use the diagonal stripe instead).
  std::map<QPoint, StripeShift> ok;
  ok[{0, 0}] = {ADir::A1, 0};
  ok[{2, 1}] = {ADir::A12, 0};
  ColoringResult r2 = solve_coloring(ok);
  CHECK_FALSE(r2.contradiction.has_value());

  // Conflicting presets inside one component report the pinned site.
  std::map<QPoint, StripeShift> chain;
  chain[{0, 0}] = {ADir::A2, 0};
  chain[{2, 1}] = {ADir::A2, 0};
  ColoringResult r3 = solve_coloring(
      chain, {{QPoint{0, 0}, 0}, {QPoint{2, 1}, 1}});
  REQUIRE(r3.contradiction.has_value());
  CHECK(r3.contradiction->first == r3.contradiction->second);
}

TEST_CASE("coloring solver: forcing propagates along a chain") {
  std::map<QPoint, StripeShift> stripes;
  stripes[{0, 0}] = {ADir::A2, 0};
  stripes[{2, 1}] = {ADir::A2, 0};
  stripes[{4, 2}] = {ADir::A2, 0};
  stripes[{6, 3}] = {ADir::A1, 0};
  ColoringResult r = solve_coloring(stripes);
  CHECK_FALSE(r.contradiction.has_value());
  CHECK(r.forced.at(QPoint{0, 0}) == 1);
  CHECK(r.forced.at(QPoint{2, 1}) == 1);
  CHECK(r.forced.at(QPoint{4, 2}) == 1);
}

TEST_CASE("clean generated patches pass every checker") {
  for (u64 seed : {11u, 12u, 13u}) {
    Patch patch = clean_patch(seed, 16);
    CheckReport r2 = check_r2(patch);
    CheckReport tc = check_three_color(patch);
    CheckReport pt = check_prototile(patch);
    CAPTURE(seed);
    CHECK(r2.ok());
    CHECK(tc.ok());
    CHECK(pt.ok());
    CHECK(r2.checked > 0);
    CHECK(tc.checked > 0);
    CHECK(pt.checked > 0);
    CHECK(tc.flagged.empty());  // generic parameters have no symmetric center
  }
}

TEST_CASE("mutations are caught by the matching checkers") {
  Patch patch = clean_patch(21, 12);
  QPoint target{1, 2};
  REQUIRE(patch.tiles.at(target).determined());

  SUBCASE("parity bit flip breaks the prototile congruence") {
    Patch m = patch;
    m.tiles.at(target).parity ^= 1;
    CheckReport r = check_prototile(m);
    CHECK_FALSE(r.ok());
  }

  SUBCASE("split flip with parity kept congruent breaks the end-color rule") {
    Patch m = patch;
    m.tiles.at(target).split ^= 1;
    m.tiles.at(target).parity ^= 1;
    CHECK(check_prototile(m).ok());
    CHECK_FALSE(check_r2(m).ok());
  }

  SUBCASE("shift flip with parity kept congruent breaks stripe continuity") {
    Patch m = patch;
    m.tiles.at(target).shift ^= 1;
    m.tiles.at(target).parity ^= 1;
    CheckReport r = check_prototile(m);
    REQUIRE_FALSE(r.ok());
    bool saw_r1 = false;
    for (const Violation& v : r.violations)
      if (v.kind == Violation::Kind::R1) saw_r1 = true;
    CHECK(saw_r1);
  }
}

TEST_CASE("periodicity smoke test flags a hand-built periodic pattern") {
  Patch fake;
  fake.q = QadicParam::from_q(QPoint{0, 0});
  fake.K = 8;
  fake.R = 10;
  for (QPoint x : hex_ball(10)) {
    TileMark t;
    t.center = x;
    t.stripe_valid = true;
    t.stripe = ADir::A1;
    t.parity = static_cast<int>(((x.m + x.n) % 2 + 2) % 2);
    t.shift = 0;
    t.split = t.parity;
    fake.tiles.emplace(x, t);
  }
  CheckReport r = check_aperiodicity(fake, 3);
  REQUIRE_FALSE(r.ok());
  for (const Violation& v : r.violations) CHECK(v.kind == Violation::Kind::Periodicity);

  // A genuine patch shows no repeating translation.
  Patch real = clean_patch(31, 16);
  CheckReport clean = check_aperiodicity(real, 8);
  CHECK(clean.ok());
  CHECK(clean.checked > 0);
}

TEST_CASE("violation report line format") {
  Violation v;
  v.kind = Violation::Kind::R2;
  v.site = QPoint{3, -4};
  v.detail = "ends match";
  CHECK(format_violation(v) == "R2\t3\t-4\tends match");
  CHECK(to_string(Violation::Kind::ThreeColor) == std::string("ThreeColor"));
  CHECK(to_string(Violation::Kind::Periodicity) == std::string("Periodicity"));
}

TEST_CASE("split end colors follow the frozen orientation tables") {
  // Full diameters: each stripe direction pairs with the two transverse dual
  // directions; colors frozen once against the vertical-column fixture.
  CHECK(full_diameter_color(ADir::A1, WDir::W1) == 1);
  CHECK(full_diameter_color(ADir::A1, WDir::W21) == 0);
  CHECK(full_diameter_color(ADir::A2, WDir::W2) == 0);
  CHECK(full_diameter_color(ADir::A2, WDir::W21) == 1);
  CHECK(full_diameter_color(ADir::A12, WDir::W1) == 0);
  CHECK(full_diameter_color(ADir::A12, WDir::W2) == 1);

  CHECK(split_end_sign(ADir::A1) == 1);
  CHECK(split_end_sign(ADir::A2) == -1);
  CHECK(split_end_sign(ADir::A12) == -1);

  for (WDir w : kWDirs) CHECK(stripe_on_wline(w) == perp_a(w));

  // diameter_end_color composes split, end sign, and the constants.
  TileMark t;
  t.stripe = ADir::A2;
  t.split = 0;
  t.shift = 0;
  t.parity = 0;
  t.stripe_valid = true;
  auto both = diameter_end_color(t, WDir::W1, 1);   // split diameter end
  REQUIRE(both.has_value());
  CHECK(*both == (0 ^ ((1 * split_end_sign(ADir::A2)) == -1 ? 1 : 0)));
  auto full = diameter_end_color(t, WDir::W2, 1);   // full diameter: constant
  REQUIRE(full.has_value());
  CHECK(*full == full_diameter_color(ADir::A2, WDir::W2));
  TileMark u = t;
  u.split = -1;
  CHECK_FALSE(diameter_end_color(u, WDir::W1, -1).has_value());
  CHECK(diameter_end_color(u, WDir::W2, -1).has_value());
}
