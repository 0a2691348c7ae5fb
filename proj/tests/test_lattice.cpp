#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "hexlimit/lattice.hpp"

using namespace hexlimit;

namespace {

// Independent oracle: breadth-first search over the six tile adjacencies.
// Depth in this graph is the hexagonal distance.
std::map<QPoint, i64> bfs_depths(i64 rmax) {
  const QPoint steps[6] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {-1, -1}};
  std::map<QPoint, i64> depth;
  std::queue<QPoint> fifo;
  depth[{0, 0}] = 0;
  fifo.push({0, 0});
  while (!fifo.empty()) {
    QPoint x = fifo.front();
    fifo.pop();
    i64 d = depth[x];
    if (d == rmax) continue;
    for (const QPoint& s : steps) {
      QPoint y{x.m + s.m, x.n + s.n};
      if (depth.emplace(y, d + 1).second) fifo.push(y);
    }
  }
  return depth;
}

}  // namespace

TEST_CASE("hex distance equals adjacency-graph depth") {
  auto depth = bfs_depths(7);
  for (const auto& [x, d] : depth) CHECK(hexdist(x) == d);
}

TEST_CASE("hex ball matches breadth-first search and: has the closed-form size") {
  auto depth = bfs_depths(6);
  for (i64 R = 0; R <= 6; ++R) {
    std::set<QPoint> oracle;
    for (const auto& [x, d] : depth)
      if (d <= R) oracle.insert(x);
    std::vector<QPoint> ball = hex_ball(R);
    CHECK(static_cast<i64>(ball.size()) == 1 + 3 * R * (R + 1));
    CHECK(std::is_sorted(ball.begin(), ball.end()));
    CHECK(std::set<QPoint>(ball.begin(), ball.end()) == oracle);
  }
}

TEST_CASE("dual lattice maps invert each other and cosets are as constructed") {
  for (i64 m = -5; m <= 5; ++m) {
    for (i64 n = -5; n <= 5; ++n) {
      QPoint x{m, n};
      PPoint p = to_p(x);
      CHECK(coset_of(p) == Coset::Q);
      CHECK(to_q(p) == x);
      CHECK(coset_of(PPoint{p.p + 1, p.q}) == Coset::W1coset);
      CHECK(coset_of(PPoint{p.p, p.q + 1}) == Coset::W2coset);
    }
  }
}

TEST_CASE("triple coordinates sum to zero and invert") {
  for (i64 m = -4; m <= 4; ++m) {
    for (i64 n = -4; n <= 4; ++n) {
      QPoint x{m, n};
      TripleCoord t = to_triple(x);
      CHECK(t.x1 + t.x2 + t.x3 == 0);
      CHECK(t.x1 == n);
      CHECK(t.x2 == -m);
      CHECK(from_triple(t) == x);
    }
  }
}

TEST_CASE("order-three rotation: involution order, distance, triple cycling") {
  for (i64 m = -4; m <= 4; ++m) {
    for (i64 n = -4; n <= 4; ++n) {
      QPoint x{m, n};
      QPoint r = rot120(x);
      CHECK(hexdist(r) == hexdist(x));
      CHECK(rot120(rot120(r)) == x);
      TripleCoord t = to_triple(x);
      TripleCoord rt = to_triple(r);
      CHECK(rt == rot120(t));
      CHECK(rt.x1 == t.x3);
      CHECK(rt.x2 == t.x1);
      CHECK(rt.x3 == t.x2);
    }
  }
}

TEST_CASE("rotation permutes the lattice directions cyclically") {
  CHECK(rot120(a_vec(ADir::A1)) == a_vec(ADir::A2));
  QPoint a12 = a_vec(ADir::A12);
  QPoint r = rot120(a_vec(ADir::A2));
  CHECK(r == QPoint{-a12.m, -a12.n});
  CHECK(rot120(a12) == QPoint{-1, 0});
}

TEST_CASE("Euclidean embedding: unit steps, dual basis, hexagon radii") {
  const double s3 = std::sqrt(3.0);
  auto a1 = cartesian(QPoint{1, 0});
  CHECK(a1[0] == doctest::Approx(1.0));
  CHECK(a1[1] == doctest::Approx(0.0));
  auto a2 = cartesian(QPoint{0, 1});
  CHECK(a2[0] == doctest::Approx(-0.5));
  CHECK(a2[1] == doctest::Approx(s3 / 2));
  auto w1 = cartesian(PPoint{1, 0});
  CHECK(w1[0] == doctest::Approx(0.5));
  CHECK(w1[1] == doctest::Approx(1.0 / (2 * s3)));
  auto w2 = cartesian(PPoint{0, 1});
  CHECK(w2[0] == doctest::Approx(0.0));
  CHECK(w2[1] == doctest::Approx(1.0 / s3));
  // Corner distance (circumradius) 1/sqrt(3); edge distance (apothem) 1/2.
  CHECK(std::hypot(w1[0], w1[1]) == doctest::Approx(1.0 / s3));
  // Consistency of the two embeddings: 3 * w1 = cart(to_p of (2,1))?  The
  // dual point of a lattice point must land on the same Euclidean spot.
  for (i64 m = -3; m <= 3; ++m) {
    for (i64 n = -3; n <= 3; ++n) {
      auto via_q = cartesian(QPoint{m, n});
      auto via_p = cartesian(to_p(QPoint{m, n}));
      CHECK(via_q[0] == doctest::Approx(via_p[0]));
      CHECK(via_q[1] == doctest::Approx(via_p[1]));
    }
  }
}

TEST_CASE("direction tables: parses, names, and transverse pairings") {
  for (ADir d : kADirs) {
    ADir back{};
    CHECK(parse_adir(to_string(d), back));
    CHECK(back == d);
    CHECK(perp_a(perp_w(d)) == d);
  }
  for (WDir w : kWDirs) {
    WDir back{};
    CHECK(parse_wdir(to_string(w), back));
    CHECK(back == w);
    CHECK(perp_w(perp_a(w)) == w);
  }
  ADir tmp{};
  CHECK_FALSE(parse_adir("a3", tmp));
  WDir wtmp{};
  CHECK_FALSE(parse_wdir("w3", wtmp));
}

TEST_CASE("checked arithmetic traps overflow") {
  CHECK_THROWS_AS(detail::add_i64(std::numeric_limits<i64>::max(), 1), overflow_error);
  CHECK_THROWS_AS(detail::mul_i64(i64{1} << 40, i64{1} << 40), overflow_error);
  CHECK(detail::add_i64(2, 3) == 5);
  CHECK(detail::mul_i64(-4, 5) == -20);
}

TEST_CASE("floor division by powers of two matches arithmetic floor") {
  for (i64 a = -33; a <= 33; ++a) {
    for (int s = 0; s <= 4; ++s) {
      i64 expect = static_cast<i64>(std::floor(static_cast<double>(a) / std::pow(2.0, s)));
      CHECK(floor_div_pow2(a, s) == expect);
    }
  }
}

TEST_CASE("two-adic valuation of integers") {
  CHECK(val2(1) == Val2::finite(0));
  CHECK(val2(2) == Val2::finite(1));
  CHECK(val2(-4) == Val2::finite(2));
  CHECK(val2(96) == Val2::finite(5));
  CHECK(val2(0).is_inf());
  CHECK(Val2::finite(1000) < Val2::inf());
  for (i64 v = 1; v <= 1000; ++v) {
    int k = val2(v).value();
    CHECK(v % (i64{1} << k) == 0);
    CHECK((v >> k) % 2 != 0);
    CHECK(dval(v) == (i64{1} << k));
  }
}
