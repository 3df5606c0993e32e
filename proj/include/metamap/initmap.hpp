#pragma once

#include "metamap/graph.hpp"
#include "metamap/map.hpp"

#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace metamap {

class InitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SteinerResult {
  WeightedPlaneGraph graph;
  std::vector<int> aux_ids;  // one per non-triangular inner face of the input
};

/// Weight of a hole whose auxiliary vertex sees `adjacent_weights`:
/// (sum of square roots)^2 / (4 * degree).
double hole_weight(std::span<const double> adjacent_weights, int degree);
inline double hole_weight(std::span<const double> adjacent_weights) {
  return hole_weight(adjacent_weights, static_cast<int>(adjacent_weights.size()));
}

/// Fan-triangulates every non-triangular inner face around a new auxiliary
/// vertex. Aux vertices carry their hole weight and a placeholder position;
/// the result is combinatorial until re-embedded.
SteinerResult steiner_triangulate(const WeightedPlaneGraph& g);

struct TutteOptions {
  double radius = 1.0;
  double tolerance = 1e-7;  // relative to the layout diameter
  int max_sweeps = 50000;
};

/// Barycentric embedding: outer face on a circle, every inner vertex at the
/// mean of its neighbors (Gauss-Seidel). Throws EmbeddingError when the
/// sweeps do not converge or the result is not a planar drawing.
WeightedPlaneGraph tutte_embed(const WeightedPlaneGraph& g, const TutteOptions& opt = {});

/// Largest |position - neighbor mean| over inner vertices.
double tutte_residual(const WeightedPlaneGraph& g);

/// Dual transform: one region per vertex, bounded by edge midpoints and
/// inner-face barycenters; outer vertices keep their own position as a corner.
/// `hole_ids` lists vertices whose regions become holes.
MetaphoricalMap dual_transform(const WeightedPlaneGraph& g, std::span<const int> hole_ids = {});

/// Graph minus the given vertices, keeping the remaining drawing.
WeightedPlaneGraph remove_vertices(const WeightedPlaneGraph& g, std::span<const int> ids);

struct InitOptions {
  bool tutte_for_triangulated = false;
};

MetaphoricalMap init_with_point_contacts(const WeightedPlaneGraph& g, const InitOptions& opt = {});
MetaphoricalMap init_with_holes(const WeightedPlaneGraph& g, const InitOptions& opt = {});

enum class InitVariant { point_contacts, holes };

/// "point_contacts" or "holes"; throws InitError otherwise.
InitVariant parse_init_variant(std::string_view name);
std::string_view to_string(InitVariant v);
MetaphoricalMap initial_map(const WeightedPlaneGraph& g, InitVariant v, const InitOptions& opt = {});

/// The drawing handed to the dual transform by the point-contact variant:
/// Tutte layout of the Steiner-triangulated graph with aux vertices removed.
WeightedPlaneGraph point_contact_drawing(const WeightedPlaneGraph& g);

}  // namespace metamap
