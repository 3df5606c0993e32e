#pragma once

#include "metamap/geom.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace metamap {

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The stored rotation contradicts the drawing, or faces fail the Euler check.
class EmbeddingError : public GraphError {
 public:
  using GraphError::GraphError;
};

struct GraphVertex {
  int id = 0;
  double weight = 1.0;
  Point2d position = Point2d::Zero();
};

/// Undirected edge between vertex indices (not ids).
using EdgeIndex = std::pair<int, int>;

/// Vertex-weighted plane graph with a fixed combinatorial embedding.
///
/// Vertices are addressed by dense indices internally; `id` is the opaque
/// identifier used by files. The rotation at each vertex lists neighbor
/// indices in counterclockwise order.
class WeightedPlaneGraph {
 public:
  WeightedPlaneGraph() = default;

  /// Straight-line drawing: validates weights, finiteness, simple edges,
  /// connectivity and planarity, and derives the rotation from angles.
  static WeightedPlaneGraph from_drawing(std::vector<GraphVertex> vertices,
                                         const std::vector<std::pair<int, int>>& edges_by_id,
                                         std::vector<int> outer_face_ids = {});

  /// Purely combinatorial embedding (positions may be placeholders). The
  /// rotation is given per vertex index, counterclockwise.
  static WeightedPlaneGraph from_embedding(std::vector<GraphVertex> vertices,
                                           std::vector<EdgeIndex> edges,
                                           std::vector<std::vector<int>> rotation,
                                           std::vector<int> outer_face);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::vector<GraphVertex>& vertices() const { return vertices_; }
  const GraphVertex& vertex(int index) const { return vertices_.at(index); }
  const std::vector<EdgeIndex>& edges() const { return edges_; }
  const std::vector<int>& rotation(int index) const { return rotation_.at(index); }
  const std::vector<std::vector<int>>& rotations() const { return rotation_; }

  /// Outer face as a cyclic list of vertex indices, in face-tracing order
  /// (clockwise for a drawing).
  const std::vector<int>& outer_face() const { return outer_face_; }

  int index_of(int id) const;
  int degree(int index) const { return static_cast<int>(rotation_.at(index).size()); }
  bool has_edge(int u, int v) const;
  int max_id() const;

  std::vector<Point2d> positions() const;
  /// Same topology, new coordinates; validates planarity of the new drawing.
  WeightedPlaneGraph with_positions(const std::vector<Point2d>& positions) const;

 private:
  std::vector<GraphVertex> vertices_;
  std::vector<EdgeIndex> edges_;
  std::vector<std::vector<int>> rotation_;
  std::vector<int> outer_face_;
  std::unordered_map<int, int> index_by_id_;

  void build_index();
};

struct FaceSet {
  std::vector<std::vector<int>> faces;  // vertex indices, left-hand tracing
  int outer_index = -1;

  std::vector<std::vector<int>> inner_faces() const;
};

FaceSet extract_faces(const WeightedPlaneGraph& g);

bool is_internally_triangulated(const WeightedPlaneGraph& g);
bool is_connected(const WeightedPlaneGraph& g);
bool is_biconnected(const WeightedPlaneGraph& g);

/// Every inner face contains its vertex barycenter strictly inside, and each
/// open segment from the barycenter to a face vertex stays inside the face.
bool barycenter_visibility_holds(const WeightedPlaneGraph& g);

/// Index of the first inner face that violates barycenter visibility.
std::optional<int> first_visibility_violation(const WeightedPlaneGraph& g,
                                              const FaceSet& faces);

/// Vertex indices of the straight-line drawing's edge crossings, if any.
std::optional<std::pair<EdgeIndex, EdgeIndex>> find_edge_crossing(
    const std::vector<Point2d>& positions, const std::vector<EdgeIndex>& edges);

}  // namespace metamap
