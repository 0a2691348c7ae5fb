#include <doctest.h>

#include <stdexcept>

#include "hexlimit/analysis.hpp"
#include "hexlimit/qadic.hpp"

using namespace hexlimit;

TEST_CASE("index series: first terms, exact identities, closed-form remainder") {
  IndexSeries s = total_index_series(20);
  REQUIRE(s.terms.size() == 20);
  CHECK(s.terms[0] == Rational::make(3, 8));
  CHECK(s.terms[1] == Rational::make(9, 32));

  Rational run{0};
  for (int k = 1; k <= 20; ++k) {
    // Independent recomputation of the level-k mass from the vertex counts:
    // 12 settled tiles per doubled cell beyond the first level plus the 6
    // seeds, spread over the 4^(k+1) classes.
    Rational expect = Rational::make(((i128(1) << (k - 1)) - 1) * 12 + 6,
                                     i128(1) << (2 * (k + 1)));
    CHECK(s.terms[k - 1] == expect);
    CHECK(Rational::make(0, 1) < s.terms[k - 1]);
    if (k > 1) CHECK(s.terms[k - 1] < s.terms[k - 2]);

    run = run + s.terms[k - 1];
    CHECK(s.partial_sums[k - 1] == run);
    CHECK(s.partial_sums[k - 1] + s.remainders[k - 1] == Rational{1});
    // Closed form of what is still unresolved after level k.
    Rational rem = Rational::make(3 * (i128(1) << k) - 1, i128(2) << (2 * k));
    CHECK(s.remainders[k - 1] == rem);
  }
  CHECK(std::abs(s.partial_sums[19].approx() - 1.0) < 1e-5);

  CHECK_THROWS_AS(total_index_series(0), std::invalid_argument);
  CHECK_THROWS_AS(total_index_series(31), std::invalid_argument);
}

TEST_CASE("window accounting: exact mass balance") {
  QadicParam q = sample_generic_q(81, 10, 8);
  TriContext ctx{q, 10};
  WindowReport w = window_accounting(ctx, 8);
  REQUIRE_FALSE(w.rows.empty());

  Rational white{0}, gray{0};
  for (const WindowRow& row : w.rows) {
    CHECK(row.m >= 1);
    CHECK(row.measure == Rational::make(1, i128(1) << (2 * row.m)));
    CHECK(row.members > 0);
    CHECK(row.rep.m >= 0);
    CHECK(row.rep.m < (i64{1} << row.m));
    CHECK(row.rep.n >= 0);
    CHECK(row.rep.n < (i64{1} << row.m));
    if (row.parity == 1)
      white = white + row.measure;
    else
      gray = gray + row.measure;
  }
  CHECK(w.white == white);
  CHECK(w.gray == gray);
  CHECK(w.white + w.gray + w.unresolved == Rational{1});
  CHECK(Rational::make(0, 1) < w.white);
  CHECK(Rational::make(0, 1) < w.gray);
  CHECK(Rational::make(0, 1) <= w.unresolved);
}

TEST_CASE("mark periodicity: prediction bounds the empirical period") {
  QadicParam q = sample_generic_q(82, 10, 32);
  TriContext ctx{q, 10};
  Patch patch = generate_patch(q, 32, 10, FreeBits{});

  // Probe shallow classes only: a class of exponent m has ~(2R/2^m)^2 members
  // in the ball, so deeper ones cannot reach the sample quorum at this radius.
  std::vector<QPoint> probes;
  for (const auto& [x, t] : patch.tiles) {
    if (!t.determined()) continue;
    StripeInfo st = stripe_dir(ctx, x);
    if (!st.ok()) continue;
    Level la = a_line_level(ctx, x, st.dir);
    Level lw = w_line_level(ctx, x, perp_w(st.dir));
    if (!la.finite || !lw.finite || std::max(la.k, lw.k) + 1 > 4) continue;
    probes.push_back(x);
    if (probes.size() == 6) break;
  }
  REQUIRE(probes.size() == 6);

  for (QPoint x : probes) {
    CosetReport rep = coset_period(ctx, x, patch);
    CAPTURE(x.m);
    CAPTURE(x.n);
    REQUIRE(rep.predicted_m >= 1);

    // The prediction is the larger of the two governing line levels plus one.
    StripeInfo st = stripe_dir(ctx, x);
    REQUIRE(st.ok());
    Level la = a_line_level(ctx, x, st.dir);
    Level lw = w_line_level(ctx, x, perp_w(st.dir));
    REQUIRE(la.finite);
    REQUIRE(lw.finite);
    CHECK(rep.predicted_m == std::max(la.k, lw.k) + 1);

    REQUIRE(rep.verified);
    CHECK(rep.sample_count >= 8);
    CHECK(rep.period_exponent >= 0);
    CHECK(rep.period_exponent <= rep.predicted_m);

    // Direct re-scan: every determined class member carries the same mark.
    i64 mod = i64{1} << rep.predicted_m;
    const TileMark& ref = patch.tiles.at(x);
    for (const auto& [y, t] : patch.tiles) {
      if (!t.determined()) continue;
      if (((y.m - x.m) % mod + mod) % mod != 0) continue;
      if (((y.n - x.n) % mod + mod) % mod != 0) continue;
      CHECK(t.stripe == ref.stripe);
      CHECK(t.shift == ref.shift);
      CHECK(t.split == ref.split);
      CHECK(t.parity == ref.parity);
    }
  }

  // A tile on an infinite line of an exact parameter has no finite prediction.
  QadicParam cht = parse_qspec("cht:0,0");
  TriContext cctx{cht, 8};
  Patch cpatch = generate_patch(cht, 8, 8, FreeBits::parse("tile:0"));
  CosetReport unres = coset_period(cctx, QPoint{1, 0}, cpatch);
  CHECK(unres.predicted_m == -1);
  CHECK_FALSE(unres.note.empty());
}

TEST_CASE("orientation density: balanced thirds over dual points") {
  QadicParam q = sample_generic_q(83, 12, 64);
  TriContext ctx{q, 12};
  OrientationDensity d = orientation_density(ctx, 64);
  i64 ball = static_cast<i64>(hex_ball(64).size());
  CHECK(d.total == 3 * ball);
  CHECK(d.up + d.down + d.unresolved == d.total);
  // One of the three dual points per tile is the lattice point itself.
  CHECK(d.unresolved >= ball);
  CHECK(d.unresolved <= ball + 64);  // depth caps are rare at K=12
  CHECK(std::abs(d.up_fraction() - 1.0 / 3.0) < 0.05);
  CHECK(std::abs(d.down_fraction() - 1.0 / 3.0) < 0.05);
}

TEST_CASE("completion counts over singular parameters") {
  FiberResult cht = fiber_experiment(parse_qspec("cht:0,0"), 4);
  CHECK(cht.count == 12);

  FiberResult icwl = fiber_experiment(parse_qspec("icwl:up"), 4);
  CHECK(icwl.count == 8);
  CHECK(icwl.symmetric == 2);

  FiberResult ial = fiber_experiment(parse_qspec("rat:-1/3,0"), 4);
  CHECK(ial.count == 2);
  CHECK(ial.symmetric == 0);

  FiberResult generic = fiber_experiment(sample_generic_q(84, 10, 4), 4);
  CHECK(generic.count == 1);
  CHECK(generic.symmetric == 0);
}
