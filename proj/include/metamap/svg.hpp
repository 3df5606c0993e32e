#pragma once

#include "metamap/map.hpp"

#include <string>

namespace metamap {

struct SvgStyle {
  double width = 800;   // canvas size in pixels; the map is fit inside
  double margin = 20;
  bool heat_map = true;  // fill by signed error, otherwise a flat fill
  bool legend = true;
  bool labels = false;  // region ids at polygon centroids
  double error_range = 0.3;  // |signed error| mapped to the palette ends
  double stroke_width = 1.0;
};

/// Diverging color for a signed error in [-range, range]: blue for undersized,
/// white at zero, red for oversized. Returns "#rrggbb".
std::string diverging_color(double signed_error, double range);

/// One closed path per region. Holes are drawn hollow with a hatch pattern.
/// Output is deterministic for a fixed map and style.
std::string render_svg(const MetaphoricalMap& m, const SvgStyle& style = {});

}  // namespace metamap
