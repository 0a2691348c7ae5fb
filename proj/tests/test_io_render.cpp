#include <doctest.h>

#include <cmath>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

#include "hexlimit/patch_io.hpp"
#include "hexlimit/render.hpp"

using namespace hexlimit;

namespace {

Patch generic_patch(u64 seed, i64 R) {
  QadicParam q = sample_generic_q(seed, 10, R);
  return generate_patch(q, R, 10, FreeBits{});
}

void check_same_patch(const Patch& a, const Patch& b) {
  CHECK(a.tiles == b.tiles);
  CHECK(format_qspec(a.q) == format_qspec(b.q));
  CHECK(a.K == b.K);
  CHECK(a.R == b.R);
  CHECK(a.freebits == b.freebits);
}

struct Seg {
  double x1, y1, x2, y2;
};

std::vector<Seg> lines_of_color(const std::string& svg, const std::string& color) {
  std::vector<Seg> out;
  std::regex re("<line x1=\"([-0-9.]+)\" y1=\"([-0-9.]+)\" x2=\"([-0-9.]+)\" "
                "y2=\"([-0-9.]+)\" stroke=\"" + color + "\"");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re);
       it != std::sregex_iterator(); ++it) {
    out.push_back(Seg{std::stod((*it)[1]), std::stod((*it)[2]),
                      std::stod((*it)[3]), std::stod((*it)[4])});
  }
  return out;
}

size_t count_substr(const std::string& hay, const std::string& needle) {
  size_t n = 0;
  for (size_t p = hay.find(needle); p != std::string::npos;
       p = hay.find(needle, p + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("patch text roundtrip preserves all fields") {
  Patch p = generic_patch(61, 10);
  std::string text = format_patch(p);
  CHECK(text.rfind(kPatchMagic, 0) == 0);
  Patch back = parse_patch(text);
  check_same_patch(p, back);
  CHECK(format_patch(back) == text);  // canonical form is a fixed point
}

TEST_CASE("undetermined rows and free bits survive the roundtrip") {
  QadicParam q = parse_qspec("rat:-1/3,0");
  Patch bare = generate_patch(q, 6, default_depth(6), FreeBits{});
  std::string text = format_patch(bare);
  CHECK(text.find("Undetermined:FreeBitsRequired") != std::string::npos);
  check_same_patch(bare, parse_patch(text));

  Patch fixed = generate_patch(q, 6, default_depth(6), FreeBits::parse("aline:a1=1"));
  std::string text2 = format_patch(fixed);
  CHECK(text2.find("freebits=aline:a1=1") != std::string::npos);
  check_same_patch(fixed, parse_patch(text2));
}

TEST_CASE("malformed patch files are rejected") {
  const std::string header =
      std::string(kPatchMagic) + "\n#q=rat:1/5,3/7 K=8 R=0 freebits=none\n";
  // Baseline sanity: a well-formed single-record file parses.
  Patch one = parse_patch(header + "0\t0\t1\ta1\t0\t1\tDetermined\n");
  CHECK(one.tiles.size() == 1);

  CHECK_THROWS_AS(parse_patch("#hexlimit-patch v2\n"), parse_error);
  CHECK_THROWS_AS(parse_patch(""), parse_error);
  CHECK_THROWS_AS(parse_patch(std::string(kPatchMagic) + "\n0\t0\t1\n"),
                  parse_error);  // missing parameter header
  CHECK_THROWS_AS(parse_patch(header + "0\t0\t1\n"), parse_error);  // field count
  CHECK_THROWS_AS(parse_patch(header + "0\t0\t2\ta1\t0\t1\tDetermined\n"),
                  parse_error);  // bits must be 0/1
  CHECK_THROWS_AS(parse_patch(header + "0\t0\t-\ta1\t0\t1\tDetermined\n"),
                  parse_error);  // determined rows must commit every bit
  CHECK_THROWS_AS(parse_patch(header + "0\t0\t1\ta1\t0\t1\tMaybe\n"),
                  parse_error);  // unknown status
  CHECK_THROWS_AS(
      parse_patch(header + "0\t0\t1\ta1\t0\t1\tDetermined\n0\t0\t1\ta1\t0\t1\tDetermined\n"),
      parse_error);  // duplicate coordinates
}

TEST_CASE("parity variant roundtrip and reduction of full files") {
  Patch p = generic_patch(62, 8);
  std::string parity_text = format_parity_patch(p);
  ParityPatch pp = parse_parity_patch(parity_text);
  CHECK(pp == parity_of(p));

  // A full-format file reduces to the same shadow.
  ParityPatch reduced = parse_parity_patch(format_patch(p));
  CHECK(reduced == parity_of(p));
}

TEST_CASE("rendering is byte-deterministic across modes") {
  Patch p = generic_patch(63, 6);
  for (RenderMode mode :
       {RenderMode::FullMarks, RenderMode::ParityOnly, RenderMode::TriangulationOverlay}) {
    RenderStyle style;
    style.mode = mode;
    std::string a = render_svg(p, style);
    std::string b = render_svg(p, style);
    CHECK(a == b);
    CHECK(a.find("<svg xmlns=") != std::string::npos);
    CHECK(a.find("</svg>") != std::string::npos);
    CHECK(a.find("viewBox=") != std::string::npos);
    CHECK(a.find("-0.000000") == std::string::npos);
    // Reproducibility comment names the inputs.
    CHECK(a.find("hexlimit q=" + format_qspec(p.q)) != std::string::npos);
    CHECK(a.find(std::string("mode=") + to_string(mode)) != std::string::npos);
    CHECK(count_substr(a, "<polygon") == p.tiles.size());
  }
  RenderStyle full;
  RenderStyle overlay;
  overlay.mode = RenderMode::TriangulationOverlay;
  CHECK(render_svg(p, full) != render_svg(p, overlay));
}

TEST_CASE("render mode names parse both ways") {
  RenderMode m;
  REQUIRE(parse_render_mode("full", m));
  CHECK(m == RenderMode::FullMarks);
  REQUIRE(parse_render_mode("parity", m));
  CHECK(m == RenderMode::ParityOnly);
  REQUIRE(parse_render_mode("overlay", m));
  CHECK(m == RenderMode::TriangulationOverlay);
  CHECK_FALSE(parse_render_mode("wireframe", m));
  CHECK(std::string(to_string(RenderMode::ParityOnly)) == "parity");
}

TEST_CASE("stripe displacement bounds keep chords inside their hexagons") {
  Patch p = generic_patch(64, 4);
  RenderStyle style;
  style.epsilon = Rational::make(1, 8);
  std::string svg = render_svg(p, style);
  std::vector<Seg> chords = lines_of_color(svg, "#000000");
  REQUIRE(chords.size() == p.tiles.size());

  const double eps = 0.125;
  for (const Seg& s : chords) {
    double mx = (s.x1 + s.x2) / 2, my = (s.y1 + s.y2) / 2;
    // Nearest tile center owns the chord (the midpoint sits eps away from it).
    double best = 1e9;
    std::array<double, 2> c{0, 0};
    for (const auto& [x, t] : p.tiles) {
      (void)t;
      auto cc = cartesian(x);
      double d = std::hypot(mx - cc[0], my - (-cc[1]));
      if (d < best) {
        best = d;
        c = {cc[0], -cc[1]};
      }
    }
    CHECK(best == doctest::Approx(eps).epsilon(2e-5));  // six printed decimals
    // Both endpoints stay inside the hexagon: apothem bound on all six edge
    // normals (the chord meets two opposite edges exactly at their midlines).
    for (auto [px, py] : {std::pair{s.x1, s.y1}, std::pair{s.x2, s.y2}}) {
      double rx = px - c[0], ry = py - c[1];
      for (int k = 0; k < 6; ++k) {
        double ang = k * M_PI / 3;
        double proj = rx * std::cos(ang) + ry * std::sin(ang);
        CHECK(proj <= 0.5 + 2e-6);  // slack for six printed decimals
      }
      CHECK(std::hypot(rx, ry) == doctest::Approx(std::sqrt(0.25 + eps * eps)));
    }
  }
}

TEST_CASE("diameter marks are center-anchored and vertex-terminated") {
  Patch p = generic_patch(65, 3);
  RenderStyle style;
  std::string svg = render_svg(p, style);
  const double r = 1.0 / std::sqrt(3.0);  // center-to-vertex distance
  auto center_dist = [&](double px, double py) {
    double best = 1e9;
    for (const auto& [x, t] : p.tiles) {
      (void)t;
      auto cc = cartesian(x);
      best = std::min(best, std::hypot(px - cc[0], py - (-cc[1])));
    }
    return best;
  };
  size_t halves = 0, fulls = 0;
  for (const std::string& color : {std::string("#cc3333"), std::string("#3355cc")}) {
    for (const Seg& s : lines_of_color(svg, color)) {
      double len = std::hypot(s.x2 - s.x1, s.y2 - s.y1);
      if (len < 1.5 * r) {
        // Split half: runs from the tile center to one vertex.
        CHECK(len == doctest::Approx(r).epsilon(1e-5));
        CHECK(center_dist(s.x1, s.y1) < 2e-6);
        ++halves;
      } else {
        // Full diameter: one segment through the center, vertex to vertex.
        CHECK(len == doctest::Approx(2 * r).epsilon(1e-5));
        double mx = (s.x1 + s.x2) / 2, my = (s.y1 + s.y2) / 2;
        CHECK(center_dist(mx, my) < 2e-6);
        ++fulls;
      }
    }
  }
  // Every determined tile shows one split diameter (two halves) and two fulls.
  CHECK(halves == 2 * p.tiles.size());
  CHECK(fulls == 2 * p.tiles.size());
}

TEST_CASE("displacement parameter is validated") {
  Patch p = generic_patch(66, 2);
  RenderStyle style;
  style.epsilon = Rational::make(0, 1);
  CHECK_THROWS_AS(render_svg(p, style), std::invalid_argument);
  style.epsilon = Rational::make(1, 3);
  CHECK_THROWS_AS(render_svg(p, style), std::invalid_argument);
  style.epsilon = Rational::make(-1, 8);
  CHECK_THROWS_AS(render_svg(p, style), std::invalid_argument);
  style.epsilon = Rational::make(1, 4);
  CHECK(render_svg(p, style).find("epsilon=1/4") != std::string::npos);
}

TEST_CASE("undetermined tiles render with the hatch fill") {
  QadicParam q = parse_qspec("rat:-1/3,0");
  Patch bare = generate_patch(q, 4, default_depth(4), FreeBits{});
  RenderStyle style;
  style.mode = RenderMode::ParityOnly;
  std::string svg = render_svg(bare, style);
  CHECK(svg.find("url(#") != std::string::npos);
}
