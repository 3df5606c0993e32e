#pragma once

#include "metamap/graph.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace metamap {

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenParams {
  int n = 20;
  double nest = 0.0;          // fraction of points nested inside initial triangles
  double weight_ratio = 5.0;  // max/min weight; weights uniform in [1, weight_ratio]
  double rem = 0.0;           // fraction of internal edges to remove
  std::uint64_t seed = 1;

  void validate() const;
};

using Triangle = std::array<int, 3>;

/// Counterclockwise triangles of the Delaunay triangulation (Bowyer-Watson).
/// Throws GenerationError when all points are collinear.
std::vector<Triangle> delaunay_triangles(std::span<const Point2d> points);

/// Delaunay triangulation as an unweighted (unit-weight) plane graph whose
/// vertex ids equal point indices.
WeightedPlaneGraph delaunay_triangulate(std::span<const Point2d> points);

/// Strictly inside the circumcircle of the counterclockwise triangle (a, b, c).
bool in_circumcircle(const Point2d& a, const Point2d& b, const Point2d& c, const Point2d& p);

WeightedPlaneGraph generate_benchmark_graph(const GenParams& params);

/// Uniform double in [0, 1) from the top 53 bits; portable across standard
/// libraries, unlike std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound) by rejection.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

}  // namespace metamap
