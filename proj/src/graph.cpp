#include "metamap/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

namespace metamap {

namespace {

bool cyclic_equal(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size() || a.empty()) return false;
  const auto it = std::find(b.begin(), b.end(), a.front());
  if (it == b.end()) return false;
  const std::size_t off = static_cast<std::size_t>(it - b.begin());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[(off + i) % b.size()]) return false;
  }
  return true;
}

std::vector<std::vector<int>> angular_rotation(const std::vector<GraphVertex>& vs,
                                               const std::vector<EdgeIndex>& edges) {
  std::vector<std::vector<int>> rot(vs.size());
  for (const auto& [u, v] : edges) {
    rot[u].push_back(v);
    rot[v].push_back(u);
  }
  for (std::size_t i = 0; i < rot.size(); ++i) {
    const Point2d c = vs[i].position;
    std::sort(rot[i].begin(), rot[i].end(), [&](int a, int b) {
      const Point2d da = vs[a].position - c;
      const Point2d db = vs[b].position - c;
      return std::atan2(da.y(), da.x()) < std::atan2(db.y(), db.x());
    });
  }
  return rot;
}

std::vector<std::vector<int>> trace_faces(const std::vector<std::vector<int>>& rot) {
  const int n = static_cast<int>(rot.size());
  std::vector<std::vector<char>> used(n);
  for (int v = 0; v < n; ++v) used[v].assign(rot[v].size(), 0);
  auto slot = [&](int v, int u) {
    const auto& r = rot[v];
    return static_cast<int>(std::find(r.begin(), r.end(), u) - r.begin());
  };

  std::vector<std::vector<int>> faces;
  for (int u = 0; u < n; ++u) {
    for (std::size_t k = 0; k < rot[u].size(); ++k) {
      if (used[u][k]) continue;
      std::vector<int> face;
      int a = u;
      int ka = static_cast<int>(k);
      while (!used[a][ka]) {
        used[a][ka] = 1;
        face.push_back(a);
        const int b = rot[a][ka];
        const int d = static_cast<int>(rot[b].size());
        const int back = slot(b, a);
        if (back == d) throw EmbeddingError("rotation system is not symmetric");
        ka = (back - 1 + d) % d;
        a = b;
      }
      faces.push_back(std::move(face));
    }
  }
  return faces;
}

}  // namespace

std::vector<std::vector<int>> FaceSet::inner_faces() const {
  std::vector<std::vector<int>> out;
  for (int i = 0; i < static_cast<int>(faces.size()); ++i) {
    if (i != outer_index) out.push_back(faces[i]);
  }
  return out;
}

void WeightedPlaneGraph::build_index() {
  index_by_id_.clear();
  for (int i = 0; i < vertex_count(); ++i) {
    if (!index_by_id_.emplace(vertices_[i].id, i).second) {
      throw GraphError("duplicate vertex id " + std::to_string(vertices_[i].id));
    }
  }
}

int WeightedPlaneGraph::index_of(int id) const {
  const auto it = index_by_id_.find(id);
  if (it == index_by_id_.end()) throw GraphError("unknown vertex id " + std::to_string(id));
  return it->second;
}

bool WeightedPlaneGraph::has_edge(int u, int v) const {
  const auto& r = rotation_.at(u);
  return std::find(r.begin(), r.end(), v) != r.end();
}

int WeightedPlaneGraph::max_id() const {
  int m = -1;
  for (const auto& v : vertices_) m = std::max(m, v.id);
  return m;
}

std::vector<Point2d> WeightedPlaneGraph::positions() const {
  std::vector<Point2d> out;
  out.reserve(vertices_.size());
  for (const auto& v : vertices_) out.push_back(v.position);
  return out;
}

std::optional<std::pair<EdgeIndex, EdgeIndex>> find_edge_crossing(
    const std::vector<Point2d>& p, const std::vector<EdgeIndex>& edges) {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const auto [a, b] = edges[i];
      const auto [c, d] = edges[j];
      if (segments_properly_intersect(p[a], p[b], p[c], p[d])) {
        return std::make_pair(edges[i], edges[j]);
      }
    }
  }
  return std::nullopt;
}

WeightedPlaneGraph WeightedPlaneGraph::from_drawing(
    std::vector<GraphVertex> vertices, const std::vector<std::pair<int, int>>& edges_by_id,
    std::vector<int> outer_face_ids) {
  WeightedPlaneGraph g;
  g.vertices_ = std::move(vertices);
  g.build_index();
  for (const auto& v : g.vertices_) {
    if (!(v.weight > 0) || !std::isfinite(v.weight)) {
      throw GraphError("vertex " + std::to_string(v.id) + ": weight must be positive");
    }
    if (!v.position.allFinite()) {
      throw GraphError("vertex " + std::to_string(v.id) + ": position must be finite");
    }
  }

  std::set<EdgeIndex> seen;
  for (const auto& [a, b] : edges_by_id) {
    const int u = g.index_of(a);
    const int v = g.index_of(b);
    if (u == v) throw GraphError("self loop at vertex " + std::to_string(a));
    const EdgeIndex key{std::min(u, v), std::max(u, v)};
    if (!seen.insert(key).second) {
      throw GraphError("duplicate edge " + std::to_string(a) + "-" + std::to_string(b));
    }
    g.edges_.push_back(key);
  }

  const auto pos = g.positions();
  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (std::size_t j = i + 1; j < pos.size(); ++j) {
      if (pos[i] == pos[j]) {
        throw GraphError("vertices " + std::to_string(g.vertices_[i].id) + " and " +
                         std::to_string(g.vertices_[j].id) + " coincide");
      }
    }
  }
  if (auto hit = find_edge_crossing(pos, g.edges_)) {
    const auto& [e, f] = *hit;
    const auto id = [&](int i) { return std::to_string(g.vertices_[i].id); };
    throw GraphError("edges " + id(e.first) + "-" + id(e.second) + " and " + id(f.first) +
                     "-" + id(f.second) + " cross");
  }

  g.rotation_ = angular_rotation(g.vertices_, g.edges_);
  if (!is_connected(g)) throw GraphError("graph is not connected");

  auto faces = trace_faces(g.rotation_);
  if (g.vertex_count() - g.edge_count() + static_cast<int>(faces.size()) != 2) {
    throw EmbeddingError("face count violates Euler's formula");
  }
  if (outer_face_ids.empty()) {
    double best = 0;
    int best_i = -1;
    for (std::size_t i = 0; i < faces.size(); ++i) {
      std::vector<Point2d> poly;
      for (int v : faces[i]) poly.push_back(pos[v]);
      const double a = signed_area<double>(poly);
      if (a < best) {
        best = a;
        best_i = static_cast<int>(i);
      }
    }
    if (best_i < 0 && faces.size() == 1) best_i = 0;  // trees have a single zero-area face
    if (best_i < 0) throw EmbeddingError("no clockwise face found for the outer face");
    g.outer_face_ = faces[best_i];
  } else {
    std::vector<int> outer;
    for (int id : outer_face_ids) outer.push_back(g.index_of(id));
    std::vector<int> rev(outer.rbegin(), outer.rend());
    // A cycle's two faces share the vertex list; take the clockwise one.
    int match = -1;
    for (std::size_t i = 0; i < faces.size(); ++i) {
      if (!cyclic_equal(faces[i], outer) && !cyclic_equal(faces[i], rev)) continue;
      std::vector<Point2d> poly;
      for (int v : faces[i]) poly.push_back(pos[v]);
      if (match < 0 || signed_area<double>(poly) < 0) match = static_cast<int>(i);
    }
    if (match < 0) throw EmbeddingError("outer_face is not a face of the drawing");
    g.outer_face_ = faces[match];
  }
  return g;
}

WeightedPlaneGraph WeightedPlaneGraph::from_embedding(std::vector<GraphVertex> vertices,
                                                      std::vector<EdgeIndex> edges,
                                                      std::vector<std::vector<int>> rotation,
                                                      std::vector<int> outer_face) {
  WeightedPlaneGraph g;
  g.vertices_ = std::move(vertices);
  g.build_index();
  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
  }
  g.edges_ = std::move(edges);
  g.rotation_ = std::move(rotation);
  g.outer_face_ = std::move(outer_face);
  if (static_cast<int>(g.rotation_.size()) != g.vertex_count()) {
    throw EmbeddingError("rotation size does not match vertex count");
  }
  return g;
}

WeightedPlaneGraph WeightedPlaneGraph::with_positions(const std::vector<Point2d>& positions) const {
  std::vector<GraphVertex> vs = vertices_;
  for (std::size_t i = 0; i < vs.size(); ++i) vs[i].position = positions.at(i);
  std::vector<std::pair<int, int>> ids;
  for (const auto& [u, v] : edges_) ids.emplace_back(vs[u].id, vs[v].id);
  std::vector<int> outer_ids;
  for (int v : outer_face_) outer_ids.push_back(vs[v].id);
  WeightedPlaneGraph out = from_drawing(std::move(vs), ids, outer_ids);
  for (int v = 0; v < vertex_count(); ++v) {
    if (!cyclic_equal(out.rotation_[v], rotation_[v])) {
      throw EmbeddingError("drawing does not realize the embedding at vertex " +
                           std::to_string(vertices_[v].id));
    }
  }
  return out;
}

FaceSet extract_faces(const WeightedPlaneGraph& g) {
  FaceSet fs;
  fs.faces = trace_faces(g.rotations());
  if (g.vertex_count() - g.edge_count() + static_cast<int>(fs.faces.size()) != 2) {
    throw EmbeddingError("face count violates Euler's formula");
  }
  for (std::size_t i = 0; i < fs.faces.size(); ++i) {
    if (cyclic_equal(fs.faces[i], g.outer_face())) {
      fs.outer_index = static_cast<int>(i);
      break;
    }
  }
  if (fs.outer_index < 0) throw EmbeddingError("outer face not found among traced faces");
  return fs;
}

bool is_internally_triangulated(const WeightedPlaneGraph& g) {
  const FaceSet fs = extract_faces(g);
  for (int i = 0; i < static_cast<int>(fs.faces.size()); ++i) {
    if (i != fs.outer_index && fs.faces[i].size() != 3) return false;
  }
  return true;
}

bool is_connected(const WeightedPlaneGraph& g) {
  const int n = g.vertex_count();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : g.rotation(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

bool is_biconnected(const WeightedPlaneGraph& g) {
  const int n = g.vertex_count();
  if (n < 3 || !is_connected(g)) return false;

  // Iterative Tarjan low-link from vertex 0.
  std::vector<int> disc(n, -1), low(n, 0), parent(n, -1);
  std::vector<std::size_t> next(n, 0);
  int timer = 0;
  int root_children = 0;
  std::vector<int> stack{0};
  disc[0] = low[0] = timer++;
  while (!stack.empty()) {
    const int v = stack.back();
    const auto& nb = g.rotation(v);
    if (next[v] < nb.size()) {
      const int w = nb[next[v]++];
      if (disc[w] < 0) {
        parent[w] = v;
        disc[w] = low[w] = timer++;
        if (v == 0) ++root_children;
        stack.push_back(w);
      } else if (w != parent[v]) {
        low[v] = std::min(low[v], disc[w]);
      }
    } else {
      stack.pop_back();
      const int p = parent[v];
      if (p >= 0) {
        low[p] = std::min(low[p], low[v]);
        if (p != 0 && low[v] >= disc[p]) return false;
      }
    }
  }
  return root_children < 2;
}

std::optional<int> first_visibility_violation(const WeightedPlaneGraph& g, const FaceSet& fs) {
  for (int fi = 0; fi < static_cast<int>(fs.faces.size()); ++fi) {
    if (fi == fs.outer_index) continue;
    const auto& face = fs.faces[fi];
    std::vector<Point2d> poly;
    for (int v : face) poly.push_back(g.vertex(v).position);
    Point2d bary = Point2d::Zero();
    for (const auto& p : poly) bary += p;
    bary /= static_cast<double>(poly.size());

    if (!point_strictly_in_polygon<double>(bary, poly)) return fi;
    const std::size_t m = poly.size();
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const std::size_t k = (j + 1) % m;
        if (segments_properly_intersect(bary, poly[i], poly[j], poly[k])) return fi;
      }
    }
  }
  return std::nullopt;
}

bool barycenter_visibility_holds(const WeightedPlaneGraph& g) {
  return !first_visibility_violation(g, extract_faces(g)).has_value();
}

}  // namespace metamap
