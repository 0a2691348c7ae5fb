#pragma once

#include <string>

#include "hexlimit/marking.hpp"
#include "hexlimit/rational.hpp"

// Deterministic SVG drawings of patches: the full two-prototile markings
// (stripe segment plus colored diameters), bare parity coloring, or the
// nested-triangulation overlay with its shifted edges.

namespace hexlimit {

enum class RenderMode { FullMarks, ParityOnly, TriangulationOverlay };

bool parse_render_mode(const std::string& s, RenderMode& out);
const char* to_string(RenderMode mode);

struct RenderStyle {
  RenderMode mode{RenderMode::FullMarks};
  // Stripe displacement; must lie in (0, 1/4] so every stripe segment stays
  // strictly inside its hexagon.
  Rational epsilon{Rational::make(1, 8)};
  double hex_stroke{0.02};
  double mark_stroke{0.045};
  double overlay_base_stroke{0.03};
  double overlay_level_scale{0.35};  // stroke grows by this factor per level
};

// Emits an SVG 1.1 document. Byte-deterministic: fixed 6-decimal coordinate
// formatting (with -0 normalized) and a fixed element order (tiles in map
// order, marks in a fixed per-tile order, overlay levels ascending).
std::string render_svg(const Patch& patch, const RenderStyle& style);

}  // namespace hexlimit
