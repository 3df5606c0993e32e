#include "metamap/initmap.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <string>

namespace metamap {

double hole_weight(std::span<const double> adjacent_weights, int degree) {
  if (degree < 3) throw InitError("hole degree must be at least 3");
  double root_sum = 0;
  for (double w : adjacent_weights) {
    if (!(w > 0)) throw InitError("adjacent weights must be positive");
    root_sum += std::sqrt(w);
  }
  return root_sum * root_sum / (4.0 * degree);
}

SteinerResult steiner_triangulate(const WeightedPlaneGraph& g) {
  const FaceSet fs = extract_faces(g);
  std::vector<GraphVertex> vs = g.vertices();
  std::vector<EdgeIndex> edges = g.edges();
  std::vector<std::vector<int>> rot = g.rotations();
  SteinerResult out;
  int next_id = g.max_id() + 1;

  for (int fi = 0; fi < static_cast<int>(fs.faces.size()); ++fi) {
    const auto& face = fs.faces[fi];
    if (fi == fs.outer_index || face.size() <= 3) continue;

    std::vector<double> weights;
    Point2d bary = Point2d::Zero();
    for (int v : face) {
      weights.push_back(g.vertex(v).weight);
      bary += g.vertex(v).position;
    }
    bary /= static_cast<double>(face.size());

    const int aux = static_cast<int>(vs.size());
    vs.push_back({next_id, hole_weight(weights), bary});
    out.aux_ids.push_back(next_id++);
    rot.emplace_back(face.begin(), face.end());

    const std::size_t m = face.size();
    for (std::size_t i = 0; i < m; ++i) {
      // The face lies counterclockwise right after the next face vertex.
      const int v = face[i];
      const int succ = face[(i + 1) % m];
      auto& r = rot[v];
      const auto it = std::find(r.begin(), r.end(), succ);
      r.insert(it + 1, aux);
      edges.emplace_back(v, aux);
    }
  }

  if (out.aux_ids.empty()) {
    out.graph = g;
    return out;
  }
  out.graph = WeightedPlaneGraph::from_embedding(std::move(vs), std::move(edges), std::move(rot),
                                                 g.outer_face());
  return out;
}

namespace {

std::vector<char> outer_mask(const WeightedPlaneGraph& g) {
  std::vector<char> mask(g.vertex_count(), 0);
  for (int v : g.outer_face()) mask[v] = 1;
  return mask;
}

double max_residual(const WeightedPlaneGraph& g, const std::vector<Point2d>& pos,
                    const std::vector<char>& fixed) {
  double worst = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (fixed[v] || g.degree(v) == 0) continue;
    Point2d mean = Point2d::Zero();
    for (int w : g.rotation(v)) mean += pos[w];
    mean /= static_cast<double>(g.degree(v));
    worst = std::max(worst, (pos[v] - mean).norm());
  }
  return worst;
}

}  // namespace

double tutte_residual(const WeightedPlaneGraph& g) {
  return max_residual(g, g.positions(), outer_mask(g));
}

WeightedPlaneGraph tutte_embed(const WeightedPlaneGraph& g, const TutteOptions& opt) {
  extract_faces(g);  // Euler check on the embedding
  const auto fixed = outer_mask(g);
  std::vector<Point2d> pos(g.vertex_count(), Point2d::Zero());

  // Outer face is traced clockwise; lay it out counterclockwise.
  const auto& outer = g.outer_face();
  const std::size_t m = outer.size();
  for (std::size_t k = 0; k < m; ++k) {
    const double angle = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
    pos[outer[m - 1 - k]] = opt.radius * Point2d(std::cos(angle), std::sin(angle));
  }

  const double tol = opt.tolerance * 2 * opt.radius;
  bool converged = false;
  for (int sweep = 1; sweep <= opt.max_sweeps; ++sweep) {
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (fixed[v]) continue;
      Point2d mean = Point2d::Zero();
      for (int w : g.rotation(v)) mean += pos[w];
      pos[v] = mean / static_cast<double>(g.degree(v));
    }
    if (sweep % 8 == 0 && max_residual(g, pos, fixed) <= tol) {
      converged = true;
      break;
    }
  }
  if (!converged && max_residual(g, pos, fixed) > tol) {
    throw EmbeddingError("Tutte embedding did not converge within " +
                         std::to_string(opt.max_sweeps) + " sweeps");
  }
  return g.with_positions(pos);
}

WeightedPlaneGraph remove_vertices(const WeightedPlaneGraph& g, std::span<const int> ids) {
  const std::set<int> drop(ids.begin(), ids.end());
  std::vector<GraphVertex> vs;
  for (const auto& v : g.vertices()) {
    if (!drop.count(v.id)) vs.push_back(v);
  }
  std::vector<std::pair<int, int>> edges;
  for (const auto& [u, v] : g.edges()) {
    const int a = g.vertex(u).id, b = g.vertex(v).id;
    if (!drop.count(a) && !drop.count(b)) edges.emplace_back(a, b);
  }
  std::vector<int> outer;
  for (int v : g.outer_face()) {
    if (!drop.count(g.vertex(v).id)) outer.push_back(g.vertex(v).id);
  }
  return WeightedPlaneGraph::from_drawing(std::move(vs), edges, outer);
}

MetaphoricalMap dual_transform(const WeightedPlaneGraph& g, std::span<const int> hole_ids) {
  const FaceSet fs = extract_faces(g);
  if (auto bad = first_visibility_violation(g, fs)) {
    std::string ids;
    for (int v : fs.faces[*bad]) ids += (ids.empty() ? "" : ",") + std::to_string(g.vertex(v).id);
    throw InitError("barycenter visibility violated by face [" + ids + "]");
  }
  const std::set<int> holes(hole_ids.begin(), hole_ids.end());

  MetaphoricalMap map;
  std::vector<int> face_point(fs.faces.size(), -1);
  std::map<std::pair<int, int>, int> face_of;
  for (int fi = 0; fi < static_cast<int>(fs.faces.size()); ++fi) {
    const auto& f = fs.faces[fi];
    for (std::size_t i = 0; i < f.size(); ++i) face_of[{f[i], f[(i + 1) % f.size()]}] = fi;
    if (fi == fs.outer_index) continue;
    Point2d bary = Point2d::Zero();
    for (int v : f) bary += g.vertex(v).position;
    face_point[fi] = static_cast<int>(map.points.size());
    map.points.push_back(bary / static_cast<double>(f.size()));
  }

  std::map<std::pair<int, int>, int> mid_point;
  for (const auto& [u, v] : g.edges()) {
    mid_point[{u, v}] = static_cast<int>(map.points.size());
    map.points.push_back((g.vertex(u).position + g.vertex(v).position) / 2);
  }
  auto mid = [&](int u, int v) { return mid_point.at({std::min(u, v), std::max(u, v)}); };

  std::vector<int> corner(g.vertex_count(), -1);
  for (int v : g.outer_face()) {
    corner[v] = static_cast<int>(map.points.size());
    map.points.push_back(g.vertex(v).position);
  }

  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto& rot = g.rotation(v);
    const int d = static_cast<int>(rot.size());
    Region region;
    region.id = g.vertex(v).id;
    region.target_weight = g.vertex(v).weight;
    if (holes.count(region.id)) {
      region.kind = RegionKind::hole;
    } else {
      region.source_vertex = region.id;
    }

    if (corner[v] >= 0) {
      int k = 0;
      while (k < d && face_of.at({v, rot[k]}) != fs.outer_index) ++k;
      if (k == d) throw InitError("outer vertex without an outer wedge");
      region.boundary.push_back(corner[v]);
      for (int t = 1; t <= d; ++t) {
        const int a = rot[(k + t) % d];
        region.boundary.push_back(mid(v, a));
        if (t < d) region.boundary.push_back(face_point.at(face_of.at({v, a})));
      }
    } else {
      for (int a : rot) {
        region.boundary.push_back(mid(v, a));
        region.boundary.push_back(face_point.at(face_of.at({v, a})));
      }
    }
    map.regions.push_back(std::move(region));
  }
  return map;
}

WeightedPlaneGraph point_contact_drawing(const WeightedPlaneGraph& g) {
  const SteinerResult st = steiner_triangulate(g);
  if (st.aux_ids.empty()) return g;
  return remove_vertices(tutte_embed(st.graph), st.aux_ids);
}

namespace {

void require_biconnected(const WeightedPlaneGraph& g) {
  if (!is_biconnected(g)) throw InitError("input graph must be biconnected");
}

}  // namespace

MetaphoricalMap init_with_point_contacts(const WeightedPlaneGraph& g, const InitOptions& opt) {
  require_biconnected(g);
  if (is_internally_triangulated(g)) {
    return dual_transform(opt.tutte_for_triangulated ? tutte_embed(g) : g);
  }
  return dual_transform(point_contact_drawing(g));
}

MetaphoricalMap init_with_holes(const WeightedPlaneGraph& g, const InitOptions& opt) {
  require_biconnected(g);
  const SteinerResult st = steiner_triangulate(g);
  if (st.aux_ids.empty()) {
    return dual_transform(opt.tutte_for_triangulated ? tutte_embed(g) : g);
  }
  return dual_transform(tutte_embed(st.graph), st.aux_ids);
}

InitVariant parse_init_variant(std::string_view name) {
  if (name == "point_contacts") return InitVariant::point_contacts;
  if (name == "holes") return InitVariant::holes;
  throw InitError("unknown init variant \"" + std::string(name) +
                  "\" (expected point_contacts or holes)");
}

std::string_view to_string(InitVariant v) {
  return v == InitVariant::holes ? "holes" : "point_contacts";
}

MetaphoricalMap initial_map(const WeightedPlaneGraph& g, InitVariant v, const InitOptions& opt) {
  return v == InitVariant::holes ? init_with_holes(g, opt) : init_with_point_contacts(g, opt);
}

}  // namespace metamap
