#include "metamap/metrics.hpp"

#include <map>
#include <set>

namespace metamap {

std::vector<double> normalized_areas(const MetaphoricalMap& m) {
  std::vector<double> areas(m.regions.size(), 0.0);
  double area_sum = 0;
  double weight_sum = 0;
  for (std::size_t i = 0; i < m.regions.size(); ++i) {
    const Region& r = m.regions[i];
    if (r.is_hole()) continue;
    const auto poly = m.polygon(r);
    areas[i] = polygon_area<double>(poly);
    area_sum += areas[i];
    weight_sum += r.target_weight;
  }
  if (!(area_sum > 0)) throw MapError("map has zero total area");
  for (auto& a : areas) a *= weight_sum / area_sum;
  return areas;
}

double normalized_area(const MetaphoricalMap& m, int region_index) {
  return normalized_areas(m).at(region_index);
}

double cartographic_error(const MetaphoricalMap& m, int region_index) {
  return cartographic_error(normalized_area(m, region_index),
                            m.regions.at(region_index).target_weight);
}

QualityReport evaluate(const MetaphoricalMap& m) {
  QualityReport rep;
  const auto norm = normalized_areas(m);
  for (std::size_t i = 0; i < m.regions.size(); ++i) {
    const Region& r = m.regions[i];
    if (r.is_hole()) continue;
    const auto poly = m.polygon(r);
    RegionQuality q;
    q.region_id = r.id;
    q.normalized_area = norm[i];
    q.error = cartographic_error(norm[i], r.target_weight);
    q.signed_error = norm[i] >= r.target_weight ? q.error : -q.error;
    q.complexity = polygon_complexity<double>(poly);
    rep.per_region.push_back(q);
  }
  if (rep.per_region.empty()) return rep;
  for (const auto& q : rep.per_region) {
    rep.avg_error += q.error;
    rep.avg_complexity += q.complexity;
    rep.max_error = std::max(rep.max_error, q.error);
    rep.max_complexity = std::max(rep.max_complexity, q.complexity);
  }
  rep.avg_error /= static_cast<double>(rep.per_region.size());
  rep.avg_complexity /= static_cast<double>(rep.per_region.size());
  return rep;
}

AdjacencyCheck check_adjacency(const MetaphoricalMap& m, const WeightedPlaneGraph& g) {
  AdjacencyCheck out;
  std::map<int, int> region_of_vertex;  // vertex id -> region index
  for (std::size_t i = 0; i < m.regions.size(); ++i) {
    const auto& sv = m.regions[i].source_vertex;
    if (sv && !m.regions[i].is_hole()) region_of_vertex[*sv] = static_cast<int>(i);
  }
  for (const auto& v : g.vertices()) {
    const auto it = region_of_vertex.find(v.id);
    if (it == region_of_vertex.end()) {
      out.unmatched.push_back(v.id);
    } else if (m.regions[it->second].target_weight != v.weight) {
      out.weight_mismatch.push_back(v.id);
    }
  }

  std::map<std::pair<int, int>, int> owner;  // directed segment -> region index
  for (std::size_t i = 0; i < m.regions.size(); ++i) {
    const auto& b = m.regions[i].boundary;
    for (std::size_t k = 0; k < b.size(); ++k) {
      owner[{b[k], b[(k + 1) % b.size()]}] = static_cast<int>(i);
    }
  }
  std::set<std::pair<int, int>> contacts;  // source vertex ids, ordered
  for (const auto& [seg, r] : owner) {
    const auto it = owner.find({seg.second, seg.first});
    if (it == owner.end()) continue;
    const auto& a = m.regions[r];
    const auto& b = m.regions[it->second];
    if (a.is_hole() || b.is_hole() || !a.source_vertex || !b.source_vertex) continue;
    contacts.insert(std::minmax(*a.source_vertex, *b.source_vertex));
  }
  std::set<std::pair<int, int>> edges;
  for (const auto& [u, v] : g.edges()) {
    edges.insert(std::minmax(g.vertex(u).id, g.vertex(v).id));
  }
  for (const auto& e : edges) {
    if (!contacts.count(e)) out.missing.push_back(e);
  }
  for (const auto& c : contacts) {
    if (!edges.count(c)) out.extra.push_back(c);
  }
  return out;
}

}  // namespace metamap
