#include "metamap/svg.hpp"

#include "metamap/io.hpp"
#include "metamap/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace metamap {

std::string diverging_color(double signed_error, double range) {
  const double t = range > 0 ? std::clamp(signed_error / range, -1.0, 1.0) : 0.0;
  // White at zero, blending toward blue (negative) or red (positive).
  const double k = std::abs(t);
  const double r = t < 0 ? 1 - 0.85 * k : 1 - 0.15 * k;
  const double g = 1 - 0.75 * k;
  const double b = t < 0 ? 1 - 0.15 * k : 1 - 0.85 * k;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(r * 255)),
                static_cast<int>(std::lround(g * 255)), static_cast<int>(std::lround(b * 255)));
  return buf;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string render_svg(const MetaphoricalMap& m, const SvgStyle& style) {
  Point2d lo = Point2d::Constant(std::numeric_limits<double>::infinity());
  Point2d hi = -lo;
  for (const auto& r : m.regions) {
    for (int p : r.boundary) {
      lo = lo.cwiseMin(m.points[p]);
      hi = hi.cwiseMax(m.points[p]);
    }
  }
  if (m.regions.empty()) lo = hi = Point2d::Zero();
  const Point2d span = (hi - lo).cwiseMax(1e-12);
  const double inner = style.width - 2 * style.margin;
  const double scale = inner / std::max(span.x(), span.y());
  const double height = span.y() * scale + 2 * style.margin;
  const double legend_h = style.legend && style.heat_map ? 50 : 0;
  auto px = [&](const Point2d& p) {
    return Point2d(style.margin + (p.x() - lo.x()) * scale,
                   style.margin + (hi.y() - p.y()) * scale);
  };

  std::vector<double> signed_err(m.regions.size(), 0.0);
  if (style.heat_map) {
    const auto areas = normalized_areas(m);
    for (std::size_t i = 0; i < m.regions.size(); ++i) {
      const Region& r = m.regions[i];
      if (r.is_hole()) continue;
      const double e = cartographic_error(areas[i], r.target_weight);
      signed_err[i] = areas[i] >= r.target_weight ? e : -e;
    }
  }

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(style.width) +
         "\" height=\"" + fmt(height + legend_h) + "\" viewBox=\"0 0 " + fmt(style.width) + " " +
         fmt(height + legend_h) + "\">\n";
  out +=
      "  <defs>\n"
      "    <pattern id=\"hatch\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\" "
      "patternTransform=\"rotate(45)\">\n"
      "      <line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#999999\" stroke-width=\"1\"/>\n"
      "    </pattern>\n"
      "  </defs>\n";
  out += "  <g stroke=\"#222222\" stroke-width=\"" + fmt(style.stroke_width) +
         "\" stroke-linejoin=\"round\">\n";
  for (std::size_t i = 0; i < m.regions.size(); ++i) {
    const Region& r = m.regions[i];
    std::string d;
    for (std::size_t k = 0; k < r.boundary.size(); ++k) {
      const Point2d q = px(m.points[r.boundary[k]]);
      d += (k ? " L" : "M") + fmt(q.x()) + "," + fmt(q.y());
    }
    d += " Z";
    std::string fill;
    if (r.is_hole()) {
      fill = "url(#hatch)";
    } else if (style.heat_map) {
      fill = diverging_color(signed_err[i], style.error_range);
    } else {
      fill = "#dde6f0";
    }
    out += "    <path class=\"" + std::string(r.is_hole() ? "hole" : "region") +
           "\" data-id=\"" + std::to_string(r.id) + "\" fill=\"" + fill + "\" d=\"" + d + "\"/>\n";
  }
  out += "  </g>\n";

  if (style.labels) {
    out += "  <g font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">\n";
    for (const auto& r : m.regions) {
      Point2d c = Point2d::Zero();
      for (int p : r.boundary) c += m.points[p];
      c = px(c / static_cast<double>(r.boundary.size()));
      out += "    <text x=\"" + fmt(c.x()) + "\" y=\"" + fmt(c.y()) + "\">" +
             std::to_string(r.id) + "</text>\n";
    }
    out += "  </g>\n";
  }

  if (legend_h > 0) {
    const int steps = 11;
    const double bar_w = std::min(inner, 330.0);
    const double cell = bar_w / steps;
    const double y = height + 5;
    out += "  <g class=\"legend\" font-family=\"sans-serif\" font-size=\"10\">\n";
    for (int s = 0; s < steps; ++s) {
      const double e = style.error_range * (2.0 * s / (steps - 1) - 1);
      out += "    <rect x=\"" + fmt(style.margin + s * cell) + "\" y=\"" + fmt(y) +
             "\" width=\"" + fmt(cell) + "\" height=\"14\" fill=\"" +
             diverging_color(e, style.error_range) + "\" stroke=\"#222222\" stroke-width=\"0.5\"/>\n";
    }
    const std::string range = format_double(style.error_range * 100);
    out += "    <text x=\"" + fmt(style.margin) + "\" y=\"" + fmt(y + 28) + "\">-" + range +
           "%</text>\n";
    out += "    <text x=\"" + fmt(style.margin + bar_w / 2) + "\" y=\"" + fmt(y + 28) +
           "\" text-anchor=\"middle\">0</text>\n";
    out += "    <text x=\"" + fmt(style.margin + bar_w) + "\" y=\"" + fmt(y + 28) +
           "\" text-anchor=\"end\">+" + range + "%</text>\n";
    out += "    <text x=\"" + fmt(style.margin + bar_w + 10) + "\" y=\"" + fmt(y + 11) +
           "\">signed cartographic error</text>\n";
    out += "  </g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace metamap
