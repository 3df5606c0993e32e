#include "metamap/map.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>

namespace metamap {

namespace {

std::uint64_t directed_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

}  // namespace

std::vector<Point2d> MetaphoricalMap::polygon(const Region& r) const {
  std::vector<Point2d> out;
  out.reserve(r.boundary.size());
  for (int p : r.boundary) out.push_back(points.at(p));
  return out;
}

double MetaphoricalMap::total_weight() const {
  double acc = 0;
  for (const auto& r : regions) {
    if (!r.is_hole()) acc += r.target_weight;
  }
  return acc;
}

int MetaphoricalMap::internal_region_count() const {
  return static_cast<int>(std::count_if(regions.begin(), regions.end(),
                                        [](const Region& r) { return !r.is_hole(); }));
}

void MetaphoricalMap::compact() {
  std::vector<int> remap(points.size(), -1);
  for (const auto& r : regions) {
    for (int p : r.boundary) remap.at(p) = 0;
  }
  std::vector<Point2d> kept;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (remap[i] == 0) {
      remap[i] = static_cast<int>(kept.size());
      kept.push_back(points[i]);
    }
  }
  points = std::move(kept);
  for (auto& r : regions) {
    for (int& p : r.boundary) p = remap[p];
  }
}

void MetaphoricalMap::scale(double factor) {
  for (auto& p : points) p *= factor;
}

const std::vector<int>& MapTopology::face_boundary(const MetaphoricalMap& m, int f,
                                                   std::size_t cycle) const {
  if (f == kOuterFace) return outer_cycles.at(cycle);
  return m.regions.at(f).boundary;
}

MapTopology build_topology(const MetaphoricalMap& m) {
  const int n = static_cast<int>(m.points.size());
  MapTopology topo;
  topo.neighbors.assign(n, {});
  topo.point_faces.assign(n, {});

  std::unordered_set<std::uint64_t> directed;
  std::size_t total = 0;
  for (const auto& r : m.regions) total += r.boundary.size();
  directed.reserve(2 * total);

  for (int ri = 0; ri < static_cast<int>(m.regions.size()); ++ri) {
    const auto& b = m.regions[ri].boundary;
    const std::size_t k = b.size();
    for (std::size_t i = 0; i < k; ++i) {
      const int u = b[i], v = b[(i + 1) % k];
      directed.insert(directed_key(u, v));
      topo.neighbors[u].push_back(v);
      topo.neighbors[v].push_back(u);
      topo.point_faces[u].push_back(ri);
    }
  }

  for (int p = 0; p < n; ++p) {
    auto& nb = topo.neighbors[p];
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    const Point2d c = m.points[p];
    std::sort(nb.begin(), nb.end(), [&](int a, int b) {
      const Point2d da = m.points[a] - c;
      const Point2d db = m.points[b] - c;
      return std::atan2(da.y(), da.x()) < std::atan2(db.y(), db.x());
    });
    for (int q : nb) {
      if (p < q) topo.segments.emplace_back(p, q);
    }
  }

  // Outer face: reversed directed edges with no region on their left.
  std::unordered_set<std::uint64_t> visited;
  for (const auto& [a, b] : topo.segments) {
    for (const auto& [u, v] : {std::pair{a, b}, std::pair{b, a}}) {
      if (directed.count(directed_key(u, v)) || visited.count(directed_key(u, v))) continue;
      std::vector<int> cycle;
      int x = u, y = v;
      while (!visited.count(directed_key(x, y))) {
        visited.insert(directed_key(x, y));
        cycle.push_back(x);
        const auto& rot = topo.neighbors[y];
        const auto it = std::find(rot.begin(), rot.end(), x);
        const std::size_t d = rot.size();
        const std::size_t s = static_cast<std::size_t>(it - rot.begin());
        const int z = rot[(s + d - 1) % d];
        x = y;
        y = z;
      }
      topo.outer_cycles.push_back(std::move(cycle));
    }
  }
  for (const auto& cyc : topo.outer_cycles) {
    for (int p : cyc) topo.point_faces[p].push_back(kOuterFace);
  }
  for (auto& f : topo.point_faces) {
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
  }
  return topo;
}

double average_edge_length(const MetaphoricalMap& m, const MapTopology& topo) {
  if (topo.segments.empty()) return 0;
  double acc = 0;
  for (const auto& [a, b] : topo.segments) acc += (m.points[a] - m.points[b]).norm();
  return acc / static_cast<double>(topo.segments.size());
}

double average_edge_length(const MetaphoricalMap& m) {
  return average_edge_length(m, build_topology(m));
}

std::vector<std::pair<int, int>> find_crossings(const std::vector<Point2d>& pts,
                                                const std::vector<std::pair<int, int>>& segs,
                                                bool exhaustive) {
  std::vector<std::pair<int, int>> hits;
  const int s = static_cast<int>(segs.size());
  auto test = [&](int i, int j) {
    const auto [a, b] = segs[i];
    const auto [c, d] = segs[j];
    if (segments_properly_intersect(pts[a], pts[b], pts[c], pts[d])) hits.emplace_back(i, j);
  };
  if (exhaustive || s < 64) {
    for (int i = 0; i < s; ++i) {
      for (int j = i + 1; j < s; ++j) test(i, j);
    }
    return hits;
  }

  double total = 0;
  Point2d lo = pts[segs[0].first], hi = lo;
  for (const auto& [a, b] : segs) {
    total += (pts[a] - pts[b]).norm();
    lo = lo.cwiseMin(pts[a]).cwiseMin(pts[b]);
    hi = hi.cwiseMax(pts[a]).cwiseMax(pts[b]);
  }
  const double cell = std::max(2 * total / s, 1e-12 * (1 + (hi - lo).norm()));

  struct Box {
    long x0, y0, x1, y1;
  };
  std::vector<Box> boxes(s);
  std::vector<std::pair<std::uint64_t, int>> entries;
  entries.reserve(4 * s);
  auto cell_of = [&](double v, double origin) { return static_cast<long>(std::floor((v - origin) / cell)); };
  for (int i = 0; i < s; ++i) {
    const Point2d& p = pts[segs[i].first];
    const Point2d& q = pts[segs[i].second];
    Box bx{cell_of(std::min(p.x(), q.x()), lo.x()), cell_of(std::min(p.y(), q.y()), lo.y()),
           cell_of(std::max(p.x(), q.x()), lo.x()), cell_of(std::max(p.y(), q.y()), lo.y())};
    boxes[i] = bx;
    for (long x = bx.x0; x <= bx.x1; ++x) {
      for (long y = bx.y0; y <= bx.y1; ++y) {
        entries.emplace_back(directed_key(static_cast<int>(x), static_cast<int>(y)), i);
      }
    }
  }
  std::sort(entries.begin(), entries.end());
  for (std::size_t a = 0; a < entries.size();) {
    std::size_t b = a;
    while (b < entries.size() && entries[b].first == entries[a].first) ++b;
    const long cx = static_cast<long>(static_cast<std::int32_t>(entries[a].first >> 32));
    const long cy = static_cast<long>(static_cast<std::int32_t>(entries[a].first & 0xffffffffu));
    for (std::size_t i = a; i < b; ++i) {
      for (std::size_t j = i + 1; j < b; ++j) {
        const Box& p = boxes[entries[i].second];
        const Box& q = boxes[entries[j].second];
        // Test each pair only in the lowest cell both boxes share.
        if (std::max(p.x0, q.x0) != cx || std::max(p.y0, q.y0) != cy) continue;
        const int si = std::min(entries[i].second, entries[j].second);
        const int sj = std::max(entries[i].second, entries[j].second);
        test(si, sj);
      }
    }
    a = b;
  }
  std::sort(hits.begin(), hits.end());
  return hits;
}

std::vector<std::string> validate_map(const MetaphoricalMap& m) {
  std::vector<std::string> problems;
  for (std::size_t i = 0; i < m.points.size(); ++i) {
    if (!m.points[i].allFinite()) problems.push_back("point " + std::to_string(i) + " is not finite");
  }
  if (!problems.empty()) return problems;

  std::unordered_map<std::uint64_t, int> uses;
  for (const auto& r : m.regions) {
    const std::string name = "region " + std::to_string(r.id);
    if (r.boundary.size() < 3) {
      problems.push_back(name + " has fewer than 3 points");
      continue;
    }
    auto sorted = r.boundary;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      problems.push_back(name + " repeats a boundary point");
    }
    if (!(r.target_weight > 0)) problems.push_back(name + " has non-positive target weight");
    const auto poly = m.polygon(r);
    if (!(signed_area<double>(poly) > 0)) problems.push_back(name + " is not counterclockwise");
    for (std::size_t i = 0; i < r.boundary.size(); ++i) {
      const int u = r.boundary[i], v = r.boundary[(i + 1) % r.boundary.size()];
      if (++uses[directed_key(u, v)] > 1) {
        problems.push_back(name + " reuses directed segment " + std::to_string(u) + "->" +
                           std::to_string(v));
      }
    }
  }
  if (!problems.empty()) return problems;

  const MapTopology topo = build_topology(m);
  const auto hits = find_crossings(m.points, topo.segments);
  for (const auto& [i, j] : hits) {
    const auto& a = topo.segments[i];
    const auto& b = topo.segments[j];
    problems.push_back("segments " + std::to_string(a.first) + "-" + std::to_string(a.second) +
                       " and " + std::to_string(b.first) + "-" + std::to_string(b.second) +
                       " intersect");
  }
  if (topo.outer_cycles.size() != 1) {
    problems.push_back("outer boundary has " + std::to_string(topo.outer_cycles.size()) +
                       " cycles");
  }
  return problems;
}

}  // namespace metamap
