#pragma once

#include "metamap/geom.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace metamap {

class MapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RegionKind { internal, hole };

struct Region {
  int id = 0;
  RegionKind kind = RegionKind::internal;
  std::vector<int> boundary;  // point indices, counterclockwise
  double target_weight = 1.0;
  std::optional<int> source_vertex;

  bool is_hole() const { return kind == RegionKind::hole; }
};

/// Planar subdivision: a shared pool of boundary points and the regions
/// (countries and holes) that tile the map. The outer face is implicit.
struct MetaphoricalMap {
  std::vector<Point2d> points;
  std::vector<Region> regions;

  std::vector<Point2d> polygon(const Region& r) const;
  std::vector<Point2d> polygon(int region_index) const { return polygon(regions.at(region_index)); }

  /// Sum of target weights of non-hole regions.
  double total_weight() const;
  int internal_region_count() const;

  /// Drops points no region references and renumbers the rest in order.
  void compact();
  void scale(double factor);
};

inline constexpr int kOuterFace = -1;

/// Adjacency derived from region boundaries. Faces are region indices plus
/// `kOuterFace`; every face is traced with the face on its left, so the
/// right-hand normal of each directed edge points out of that face.
struct MapTopology {
  std::vector<std::vector<int>> neighbors;   // per point, counterclockwise by angle
  std::vector<std::vector<int>> point_faces;  // per point, sorted (outer first)
  std::vector<std::vector<int>> outer_cycles;  // clockwise around the map
  std::vector<std::pair<int, int>> segments;   // unique undirected, a < b

  int degree(int p) const { return static_cast<int>(neighbors[p].size()); }
  /// Boundary of face f (region index or kOuterFace), concatenating cycles.
  const std::vector<int>& face_boundary(const MetaphoricalMap& m, int f, std::size_t cycle = 0) const;
};

MapTopology build_topology(const MetaphoricalMap& m);

double average_edge_length(const MetaphoricalMap& m, const MapTopology& topo);
double average_edge_length(const MetaphoricalMap& m);

/// Segment pairs (indices into `segments`) that properly intersect.
std::vector<std::pair<int, int>> find_crossings(const std::vector<Point2d>& points,
                                                const std::vector<std::pair<int, int>>& segments,
                                                bool exhaustive = false);

/// Problems with the subdivision; empty when the map is valid. Checks
/// finiteness, simple counterclockwise regions, two faces per segment, and
/// planarity.
std::vector<std::string> validate_map(const MetaphoricalMap& m);

}  // namespace metamap
