#include "metamap/genbench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>

namespace metamap {

void GenParams::validate() const {
  if (n < 4) throw GenerationError("n must be at least 4");
  if (!(nest >= 0 && nest <= 1)) throw GenerationError("nest must lie in [0, 1]");
  if (!(weight_ratio >= 1)) throw GenerationError("weight_ratio must be >= 1");
  if (!(rem >= 0 && rem < 1)) throw GenerationError("rem must lie in [0, 1)");
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

bool in_circumcircle(const Point2d& a, const Point2d& b, const Point2d& c, const Point2d& p) {
  const double adx = a.x() - p.x(), ady = a.y() - p.y();
  const double bdx = b.x() - p.x(), bdy = b.y() - p.y();
  const double cdx = c.x() - p.x(), cdy = c.y() - p.y();
  const double det = (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy) -
                     (bdx * bdx + bdy * bdy) * (adx * cdy - cdx * ady) +
                     (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady);
  return det > 0;
}

namespace {

Triangle ccw(const std::vector<Point2d>& p, int a, int b, int c) {
  if (cross<double>(p[b] - p[a], p[c] - p[a]) < 0) std::swap(b, c);
  return {a, b, c};
}

// Boundary of the union of triangles as a counterclockwise vertex cycle.
std::vector<int> boundary_cycle(const std::vector<Triangle>& tris) {
  std::set<std::pair<int, int>> directed;
  for (const auto& t : tris) {
    for (int k = 0; k < 3; ++k) directed.emplace(t[k], t[(k + 1) % 3]);
  }
  std::map<int, int> next;
  for (const auto& [a, b] : directed) {
    if (!directed.count({b, a})) next[a] = b;
  }
  if (next.empty()) return {};
  std::vector<int> cycle;
  int v = next.begin()->first;
  do {
    cycle.push_back(v);
    v = next.at(v);
  } while (v != cycle.front() && cycle.size() <= next.size());
  return cycle;
}

// Closes pockets left by a finite super-triangle so the hull is convex.
void fill_hull_pockets(const std::vector<Point2d>& p, std::vector<Triangle>& tris) {
  for (int guard = 0; guard < 4 * static_cast<int>(p.size()); ++guard) {
    const auto cycle = boundary_cycle(tris);
    const std::size_t m = cycle.size();
    bool changed = false;
    for (std::size_t i = 0; i < m && !changed; ++i) {
      const int a = cycle[(i + m - 1) % m], b = cycle[i], c = cycle[(i + 1) % m];
      if (orientation(p[a], p[b], p[c]) >= 0) continue;
      bool empty = true;
      for (std::size_t q = 0; q < p.size() && empty; ++q) {
        const int qi = static_cast<int>(q);
        if (qi == a || qi == b || qi == c) continue;
        if (orientation(p[a], p[c], p[q]) > 0 && orientation(p[c], p[b], p[q]) > 0 &&
            orientation(p[b], p[a], p[q]) > 0) {
          empty = false;
        }
      }
      if (!empty) continue;
      tris.push_back(ccw(p, a, b, c));
      changed = true;
    }
    if (!changed) return;
  }
}

}  // namespace

std::vector<Triangle> delaunay_triangles(std::span<const Point2d> points) {
  const int n = static_cast<int>(points.size());
  if (n < 3) throw GenerationError("Delaunay triangulation needs at least 3 points");

  bool collinear = true;
  for (int i = 2; i < n && collinear; ++i) {
    collinear = orientation(points[0], points[1], points[i]) == 0;
  }
  if (collinear) throw GenerationError("all points are collinear");

  std::vector<Point2d> p(points.begin(), points.end());
  Point2d lo = p[0], hi = p[0];
  for (const auto& q : p) {
    lo = lo.cwiseMin(q);
    hi = hi.cwiseMax(q);
  }
  const Point2d mid = (lo + hi) / 2;
  const double span = std::max(1e-12, (hi - lo).maxCoeff()) * 1e5;
  p.emplace_back(mid.x() - 2 * span, mid.y() - span);
  p.emplace_back(mid.x() + 2 * span, mid.y() - span);
  p.emplace_back(mid.x(), mid.y() + 2 * span);

  std::vector<Triangle> tris{{n, n + 1, n + 2}};
  for (int i = 0; i < n; ++i) {
    std::vector<Triangle> keep;
    std::map<std::pair<int, int>, int> cavity;
    for (const auto& t : tris) {
      if (in_circumcircle(p[t[0]], p[t[1]], p[t[2]], p[i])) {
        for (int k = 0; k < 3; ++k) {
          const int a = t[k], b = t[(k + 1) % 3];
          ++cavity[{std::min(a, b), std::max(a, b)}];
        }
      } else {
        keep.push_back(t);
      }
    }
    for (const auto& [e, count] : cavity) {
      if (count == 1) keep.push_back(ccw(p, e.first, e.second, i));
    }
    tris = std::move(keep);
  }

  std::erase_if(tris, [n](const Triangle& t) { return t[0] >= n || t[1] >= n || t[2] >= n; });
  p.resize(n);
  fill_hull_pockets(p, tris);
  return tris;
}

WeightedPlaneGraph delaunay_triangulate(std::span<const Point2d> points) {
  const auto tris = delaunay_triangles(points);
  std::set<std::pair<int, int>> edges;
  for (const auto& t : tris) {
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3];
      edges.emplace(std::min(a, b), std::max(a, b));
    }
  }
  std::vector<GraphVertex> vs;
  for (int i = 0; i < static_cast<int>(points.size()); ++i) vs.push_back({i, 1.0, points[i]});
  return WeightedPlaneGraph::from_drawing(std::move(vs), {edges.begin(), edges.end()});
}

namespace {

std::vector<std::pair<int, int>> edge_ids(const WeightedPlaneGraph& g) {
  std::vector<std::pair<int, int>> out;
  for (const auto& [u, v] : g.edges()) out.emplace_back(g.vertex(u).id, g.vertex(v).id);
  return out;
}

}  // namespace

WeightedPlaneGraph generate_benchmark_graph(const GenParams& params) {
  params.validate();
  std::mt19937_64 rng(params.seed);
  const int nested = params.nest > 0
                         ? std::min(static_cast<int>(std::ceil(params.nest * params.n)),
                                    params.n - 3)
                         : 0;
  const int base = params.n - nested;
  constexpr double kMinSeparation = 1e-6;

  std::vector<Point2d> pts;
  std::vector<Triangle> initial;
  for (int attempt = 0;; ++attempt) {
    if (attempt == 100) throw GenerationError("could not draw non-degenerate base points");
    pts.clear();
    for (int i = 0; i < base; ++i) {
      const double x = uniform01(rng);
      const double y = uniform01(rng);
      pts.emplace_back(x, y);
    }
    try {
      initial = delaunay_triangles(pts);
      break;
    } catch (const GenerationError&) {
    }
  }

  for (int i = 0; i < nested; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
      const Triangle& t = initial[uniform_below(rng, initial.size())];
      const double r1 = std::sqrt(uniform01(rng));
      const double r2 = uniform01(rng);
      const Point2d q = (1 - r1) * pts[t[0]] + r1 * (1 - r2) * pts[t[1]] + r1 * r2 * pts[t[2]];
      const bool clear = std::all_of(pts.begin(), pts.end(), [&](const Point2d& o) {
        return (o - q).norm() > kMinSeparation;
      });
      if (clear) {
        pts.push_back(q);
        placed = true;
      }
    }
    if (!placed) {
      throw GenerationError("could not place nested point " + std::to_string(i));
    }
  }

  const WeightedPlaneGraph skeleton = delaunay_triangulate(pts);
  std::vector<GraphVertex> vs = skeleton.vertices();
  for (auto& v : vs) v.weight = 1.0 + (params.weight_ratio - 1.0) * uniform01(rng);

  auto edges = edge_ids(skeleton);
  WeightedPlaneGraph g = WeightedPlaneGraph::from_drawing(vs, edges);
  if (params.rem <= 0) return g;

  std::set<std::pair<int, int>> outer;
  const auto& of = g.outer_face();
  for (std::size_t i = 0; i < of.size(); ++i) {
    const int a = g.vertex(of[i]).id, b = g.vertex(of[(i + 1) % of.size()]).id;
    outer.emplace(std::min(a, b), std::max(a, b));
  }
  std::vector<std::pair<int, int>> internal;
  for (const auto& e : edges) {
    if (!outer.count({std::min(e.first, e.second), std::max(e.first, e.second)})) {
      internal.push_back(e);
    }
  }
  for (std::size_t i = internal.size(); i > 1; --i) {
    std::swap(internal[i - 1], internal[uniform_below(rng, i)]);
  }
  const auto quota = static_cast<std::size_t>(std::floor(params.rem * internal.size()));

  std::size_t removed = 0;
  for (const auto& e : internal) {
    if (removed == quota) break;
    std::vector<std::pair<int, int>> trial;
    trial.reserve(edges.size());
    for (const auto& f : edges) {
      if (f != e) trial.push_back(f);
    }
    WeightedPlaneGraph candidate = WeightedPlaneGraph::from_drawing(vs, trial);
    if (!is_biconnected(candidate)) continue;
    edges = std::move(trial);
    g = std::move(candidate);
    ++removed;
  }
  return g;
}

}  // namespace metamap
