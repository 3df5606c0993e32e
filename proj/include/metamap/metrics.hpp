#pragma once

#include "metamap/geom.hpp"
#include "metamap/graph.hpp"
#include "metamap/map.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace metamap {

/// Number of reflex vertices. Vertices whose turn is within 1e-9 of straight
/// count as convex.
template <typename Scalar>
int concave_vertex_count(std::span<const Point2<Scalar>> poly) {
  const std::size_t n = poly.size();
  if (n < 4) return 0;
  const Scalar orient = signed_area(poly) >= 0 ? Scalar(1) : Scalar(-1);
  int count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2<Scalar> in = poly[i] - poly[(i + n - 1) % n];
    const Point2<Scalar> out = poly[(i + 1) % n] - poly[i];
    const Scalar denom = in.norm() * out.norm();
    if (denom == 0) continue;
    const Scalar turn = cross(in, out) / denom;
    if (std::abs(turn) <= Scalar(1e-9)) continue;
    if (turn * orient < 0) ++count;
  }
  return count;
}

/// Vibration frequency: 1 + 16 (L' - 1/2)^4 - 8 (L' - 1/2)^2 with
/// L' = concave / (n - 3); zero for triangles.
template <typename Scalar>
Scalar freq(std::span<const Point2<Scalar>> poly) {
  const std::size_t n = poly.size();
  if (n <= 3) return 0;
  const Scalar lp = Scalar(concave_vertex_count(poly)) / Scalar(n - 3);
  const Scalar d = lp - Scalar(0.5);
  const Scalar d2 = d * d;
  return std::clamp<Scalar>(1 + 16 * d2 * d2 - 8 * d2, 0, 1);
}

/// Vibration amplitude: relative perimeter excess over the convex hull.
template <typename Scalar>
Scalar ampl(std::span<const Point2<Scalar>> poly) {
  const Scalar circ = polygon_perimeter(poly);
  if (circ <= 0) return 0;
  const auto hull = convex_hull(poly);
  const Scalar hull_circ = polygon_perimeter<Scalar>(hull);
  return std::clamp<Scalar>((circ - hull_circ) / circ, 0, 1);
}

/// Convexity deficit against the regular n-gon inscribed in the smallest
/// enclosing circle.
template <typename Scalar>
Scalar conv(std::span<const Point2<Scalar>> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return 0;
  const Circle<Scalar> c = min_enclosing_circle(poly);
  const Scalar circle_area = std::numbers::pi_v<Scalar> * c.radius * c.radius;
  const Scalar nn = Scalar(n);
  const Scalar ngon = circle_area * std::sin(2 * std::numbers::pi_v<Scalar> / nn) * nn /
                      (2 * std::numbers::pi_v<Scalar>);
  if (ngon <= 0) return 1;
  return std::clamp<Scalar>(1 - polygon_area(poly) / ngon, 0, 1);
}

template <typename Scalar>
Scalar polygon_complexity(std::span<const Point2<Scalar>> poly) {
  return Scalar(0.8) * ampl(poly) * freq(poly) + Scalar(0.2) * conv(poly);
}

inline double cartographic_error(double normalized_area, double weight) {
  const double m = std::max(normalized_area, weight);
  return m > 0 ? std::abs(normalized_area - weight) / m : 0.0;
}

/// Areas rescaled so their sum equals the total weight; holes are excluded
/// from both sums and get 0. Throws MapError when the total area is zero.
std::vector<double> normalized_areas(const MetaphoricalMap& m);
double normalized_area(const MetaphoricalMap& m, int region_index);
double cartographic_error(const MetaphoricalMap& m, int region_index);

struct RegionQuality {
  int region_id = 0;
  double normalized_area = 0;
  double error = 0;
  double signed_error = 0;  // positive when the region is oversized
  double complexity = 0;
};

struct QualityReport {
  std::vector<RegionQuality> per_region;  // non-hole regions only
  double avg_error = 0;
  double max_error = 0;
  double avg_complexity = 0;
  double max_complexity = 0;
};

QualityReport evaluate(const MetaphoricalMap& m);

struct AdjacencyCheck {
  std::vector<std::pair<int, int>> missing;  // graph edges without a shared segment (ids)
  std::vector<std::pair<int, int>> extra;    // shared segments between non-adjacent vertices
  std::vector<int> weight_mismatch;          // vertex ids whose region weight differs
  std::vector<int> unmatched;                // vertex ids without a region
  bool ok() const {
    return missing.empty() && extra.empty() && weight_mismatch.empty() && unmatched.empty();
  }
};

/// Compares the map's contacts with the graph: every edge must be a shared
/// boundary segment between the two source regions and vice versa. Holes
/// are ignored.
AdjacencyCheck check_adjacency(const MetaphoricalMap& m, const WeightedPlaneGraph& g);

}  // namespace metamap
