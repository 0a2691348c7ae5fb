#include "hexlimit/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "hexlimit/triangulation.hpp"
#include "hexlimit/verify.hpp"

namespace hexlimit {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kCircum = 1.0 / kSqrt3;

constexpr const char* kWhite = "#ffffff";
constexpr const char* kGray = "#b4b4b4";
constexpr const char* kHexStroke = "#606060";
constexpr const char* kRed = "#cc3333";
constexpr const char* kBlue = "#3355cc";
constexpr const char* kStripe = "#000000";
constexpr const char* kOverlayBase = "#c0c0c0";
constexpr const char* kOverlayShift = "#777777";

struct Vec2 {
  double x, y;
};

Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }

Vec2 cart_p(PPoint p) {
  auto c = cartesian(p);
  return {c[0], c[1]};
}

Vec2 cart_q(QPoint x) {
  auto c = cartesian(x);
  return {c[0], c[1]};
}

Vec2 a_unit(ADir d) {
  switch (d) {
    case ADir::A1: return {1.0, 0.0};
    case ADir::A2: return {-0.5, kSqrt3 / 2};
    case ADir::A12: return {0.5, kSqrt3 / 2};
  }
  return {0, 0};
}

// Unit normal used for stripe displacement; the shift bit is defined as
// "governing centroid lies on the + side of this normal".
Vec2 f_unit(ADir d) {
  switch (d) {
    case ADir::A1: return {0.0, 1.0};
    case ADir::A2: return {-kSqrt3 / 2, -0.5};
    case ADir::A12: return {kSqrt3 / 2, -0.5};
  }
  return {0, 0};
}

// Hexagon corner offsets in lattice-dual integer coordinates, counterclockwise.
constexpr std::array<PPoint, 6> kCorners = {PPoint{1, 0},  PPoint{0, 1},
                                            PPoint{-1, 1}, PPoint{-1, 0},
                                            PPoint{0, -1}, PPoint{1, -1}};

PPoint w_offset(WDir w) {
  switch (w) {
    case WDir::W1: return {1, 0};
    case WDir::W2: return {0, 1};
    case WDir::W21: return {-1, 1};
  }
  return {0, 0};
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

// SVG's y axis points down; flip once at emission time.
std::string xy(Vec2 v) { return fmt(v.x) + "," + fmt(-v.y); }

void emit_line(std::ostream& os, Vec2 a, Vec2 b, const char* color, double width,
               const char* extra = "") {
  os << "<line x1=\"" << fmt(a.x) << "\" y1=\"" << fmt(-a.y) << "\" x2=\""
     << fmt(b.x) << "\" y2=\"" << fmt(-b.y) << "\" stroke=\"" << color
     << "\" stroke-width=\"" << fmt(width) << "\" stroke-linecap=\"round\""
     << extra << "/>\n";
}

const char* fill_of(const TileMark& t) {
  if (!t.determined()) return "url(#hatch)";
  return t.parity == 1 ? kWhite : kGray;
}

}  // namespace

bool parse_render_mode(const std::string& s, RenderMode& out) {
  if (s == "full") {
    out = RenderMode::FullMarks;
  } else if (s == "parity") {
    out = RenderMode::ParityOnly;
  } else if (s == "overlay") {
    out = RenderMode::TriangulationOverlay;
  } else {
    return false;
  }
  return true;
}

const char* to_string(RenderMode mode) {
  switch (mode) {
    case RenderMode::FullMarks: return "full";
    case RenderMode::ParityOnly: return "parity";
    case RenderMode::TriangulationOverlay: return "overlay";
  }
  return "?";
}

std::string render_svg(const Patch& patch, const RenderStyle& style) {
  Rational quarter = Rational::make(1, 4);
  if (!(Rational::make(0, 1) < style.epsilon) || quarter < style.epsilon)
    throw std::invalid_argument("stripe offset must lie in (0, 1/4]");
  double eps = style.epsilon.approx();

  double minx = 0, maxx = 0, miny = 0, maxy = 0;
  bool first = true;
  for (const auto& [x, t] : patch.tiles) {
    (void)t;
    Vec2 c = cart_q(x);
    double sy = -c.y;
    if (first) {
      minx = maxx = c.x;
      miny = maxy = sy;
      first = false;
    }
    minx = std::min(minx, c.x);
    maxx = std::max(maxx, c.x);
    miny = std::min(miny, sy);
    maxy = std::max(maxy, sy);
  }
  double pad = kCircum + 0.5;
  minx -= pad;
  miny -= pad;
  maxx += pad;
  maxy += pad;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<!-- hexlimit q=" << format_qspec(patch.q) << " K=" << patch.K
     << " R=" << patch.R << " freebits=" << patch.freebits.format()
     << " mode=" << to_string(style.mode)
     << " epsilon=" << style.epsilon.to_string() << " -->\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\""
     << fmt(minx) << " " << fmt(miny) << " " << fmt(maxx - minx) << " "
     << fmt(maxy - miny) << "\">\n";
  os << "<defs>\n"
     << "<pattern id=\"hatch\" width=\"0.2\" height=\"0.2\" "
        "patternUnits=\"userSpaceOnUse\" patternTransform=\"rotate(45)\">\n"
     << "<rect width=\"0.2\" height=\"0.2\" fill=\"#ececec\"/>\n"
     << "<line x1=\"0.1\" y1=\"0\" x2=\"0.1\" y2=\"0.2\" stroke=\"#9a9a9a\" "
        "stroke-width=\"0.06\"/>\n"
     << "</pattern>\n</defs>\n";

  // Tile bodies first, in map (sorted) order.
  for (const auto& [x, t] : patch.tiles) {
    PPoint p0 = to_p(x);
    os << "<polygon points=\"";
    for (int i = 0; i < 6; ++i) {
      if (i) os << " ";
      os << xy(cart_p(PPoint{p0.p + kCorners[i].p, p0.q + kCorners[i].q}));
    }
    os << "\" fill=\"" << fill_of(t) << "\" stroke=\"" << kHexStroke
       << "\" stroke-width=\"" << fmt(style.hex_stroke) << "\"/>\n";
  }

  if (style.mode == RenderMode::FullMarks) {
    for (const auto& [x, t] : patch.tiles) {
      if (!t.determined()) continue;
      PPoint p0 = to_p(x);
      Vec2 c = cart_q(x);
      // Stripe segment, displaced toward the side named by the shift bit.
      double delta = (t.shift == 1 ? eps : -eps);
      Vec2 along = a_unit(t.stripe);
      Vec2 off = delta * f_unit(t.stripe);
      emit_line(os, c + off - 0.5 * along, c + off + 0.5 * along, kStripe,
                style.mark_stroke);
      // Diameters: the two at 30 degrees from the stripe are solid colors;
      // the transverse one is split at the center per the split bit.
      WDir split_dir = perp_w(t.stripe);
      for (WDir w : kWDirs) {
        PPoint o = w_offset(w);
        Vec2 plus_end = cart_p(PPoint{p0.p + o.p, p0.q + o.q});
        Vec2 minus_end = cart_p(PPoint{p0.p - o.p, p0.q - o.q});
        if (w == split_dir) {
          auto cp = diameter_end_color(t, w, +1);
          auto cm = diameter_end_color(t, w, -1);
          if (cp && cm) {
            emit_line(os, c, plus_end, *cp == 0 ? kRed : kBlue, style.mark_stroke);
            emit_line(os, c, minus_end, *cm == 0 ? kRed : kBlue, style.mark_stroke);
          }
        } else {
          int col = full_diameter_color(t.stripe, w);
          emit_line(os, minus_end, plus_end, col == 0 ? kRed : kBlue,
                    style.mark_stroke);
        }
      }
    }
  } else if (style.mode == RenderMode::TriangulationOverlay) {
    TriContext ctx{patch.q, patch.K};
    i64 R = patch.R;
    int lmax = 0;
    while ((i64{1} << (lmax + 1)) <= 2 * R && lmax + 1 <= patch.K - 2) ++lmax;
    for (int L = 0; L <= lmax; ++L) {
      i64 step = i64{1} << L;
      QPoint base = ctx.c(L);
      double width = style.overlay_base_stroke * (1.0 + style.overlay_level_scale * L);
      i64 lo_m = floor_div_pow2(-R - base.m, L);
      i64 hi_m = floor_div_pow2(R - base.m, L) + 1;
      i64 lo_n = floor_div_pow2(-R - base.n, L);
      i64 hi_n = floor_div_pow2(R - base.n, L) + 1;
      for (i64 ym = lo_m; ym <= hi_m; ++ym) {
        for (i64 yn = lo_n; yn <= hi_n; ++yn) {
          QPoint v{base.m + step * ym, base.n + step * yn};
          if (hexdist(v) > R) continue;
          for (ADir d : kADirs) {
            QPoint av = a_vec(d);
            QPoint v2{v.m + step * av.m, v.n + step * av.n};
            if (hexdist(v2) > R) continue;
            Vec2 p1 = cart_q(v);
            Vec2 p2 = cart_q(v2);
            if (L == 0) {
              emit_line(os, p1, p2, kOverlayBase, width);
              continue;
            }
            EdgeThrough e{v, v2, d, L, false};
            auto gov = governing_shift(ctx, e);
            if (!gov) {
              emit_line(os, p1, p2, kOverlayShift, width,
                        " stroke-dasharray=\"0.1 0.1\"");
              continue;
            }
            int s = side_sign(d, v, gov->centroid);
            Vec2 off = (s > 0 ? eps : -eps) * f_unit(d);
            emit_line(os, p1 + off, p2 + off, kOverlayShift, width);
          }
        }
      }
    }
  }

  os << "</svg>\n";
  return os.str();
}

}  // namespace hexlimit
