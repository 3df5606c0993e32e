#include "metamap/forcesim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <unordered_map>

namespace metamap {

void SimParams::validate() const {
  if (!(s_high >= 1)) throw SimulationError("s_high must be >= 1");
  if (!(step > 0)) throw SimulationError("step must be positive");
  if (iter < 0) throw SimulationError("iter must be positive (or 0 for the default)");
  if (!(split_factor > 1)) throw SimulationError("split_factor must exceed 1");
  if (!(initial_edge_length > 0)) throw SimulationError("initial_edge_length must be positive");
  if (!(merge_fraction > 0 && merge_fraction < 0.5)) {
    throw SimulationError("merge_fraction must lie in (0, 0.5)");
  }
}

std::span<const SimParamField> sim_param_fields() {
  static const SimParamField fields[] = {
      {"c_vv", &SimParams::c_vv},
      {"c_ve", &SimParams::c_ve},
      {"c_p", &SimParams::c_p},
      {"c_ang", &SimParams::c_ang},
      {"step", &SimParams::step},
      {"s_high", &SimParams::s_high},
      {"iter", nullptr, &SimParams::iter},
      {"passage_fraction", &SimParams::passage_fraction},
      {"pairing_threshold", &SimParams::pairing_threshold},
      {"merge_fraction", &SimParams::merge_fraction},
      {"split_factor", &SimParams::split_factor},
      {"ms_mode", nullptr, nullptr, &SimParams::ms_mode},
      {"use_beta", nullptr, nullptr, &SimParams::use_beta},
      {"angular_on_degree2", nullptr, nullptr, &SimParams::angular_on_degree2},
      {"normalize_scale", nullptr, nullptr, &SimParams::normalize_scale},
      {"initial_edge_length", &SimParams::initial_edge_length},
      {"displacement_cap", &SimParams::displacement_cap},
      {"check_planarity", nullptr, nullptr, &SimParams::check_planarity},
  };
  return fields;
}

SimState SimState::initial(MetaphoricalMap map) {
  SimState s;
  s.stiffness.assign(map.regions.size(), 1.0);
  s.pressures.assign(map.regions.size(), 1.0);
  s.forces.assign(map.points.size(), Point2d::Zero());
  s.map = std::move(map);
  return s;
}

double region_pressure(double weight, double area, double area_sum, double weight_sum) {
  if (!(area > 0)) throw SimulationError("region area must be positive");
  return (weight / area) * (area_sum / weight_sum);
}

std::vector<double> region_pressures(const MetaphoricalMap& m) {
  std::vector<double> areas(m.regions.size());
  double area_sum = 0, weight_sum = 0;
  for (std::size_t i = 0; i < m.regions.size(); ++i) {
    areas[i] = signed_area<double>(m.polygon(m.regions[i]));
    if (!(areas[i] > 0)) {
      throw SimulationError("region " + std::to_string(m.regions[i].id) +
                            " has non-positive area");
    }
    if (m.regions[i].is_hole()) continue;
    area_sum += areas[i];
    weight_sum += m.regions[i].target_weight;
  }
  std::vector<double> p(m.regions.size());
  for (std::size_t i = 0; i < m.regions.size(); ++i) {
    p[i] = region_pressure(m.regions[i].target_weight, areas[i], area_sum, weight_sum);
  }
  return p;
}

void update_stiffness(SimState& state, const SimParams& params) {
  const double lo = params.s_low();
  const double hi = params.s_high;
  for (std::size_t i = 0; i < state.map.regions.size(); ++i) {
    if (state.map.regions[i].is_hole() || !params.stiffness_enabled()) {
      state.stiffness[i] = 1.0;
      continue;
    }
    const double p = state.pressures[i];
    const double alpha = p > 1 ? 1.0 : (p < 1 ? -1.0 : 0.0);
    state.stiffness[i] = std::min(hi, std::max(lo, state.stiffness[i] + alpha * params.step));
  }
}

std::optional<Pairing> pairing_edge(std::span<const Point2d> poly, int u, double threshold) {
  const int m = static_cast<int>(poly.size());
  if (m < 3) return std::nullopt;
  std::vector<double> prefix(m + 1, 0.0);
  for (int i = 0; i < m; ++i) prefix[i + 1] = prefix[i] + (poly[(i + 1) % m] - poly[i]).norm();
  const double total = prefix[m];
  // Forward boundary walk from u to vertex k.
  auto forward = [&](int k) {
    const double d = prefix[k % m] - prefix[u];
    return d >= 0 ? d : d + total;
  };

  std::optional<Pairing> best;
  for (int j = 0; j < m; ++j) {
    const int k = (j + 1) % m;
    if (j == u || k == u) continue;
    const auto cp = closest_point_on_segment(poly[u], poly[j], poly[k]);
    const double via_start = forward(j) + (cp.point - poly[j]).norm();
    const double via_end = (total - forward(k)) + (poly[k] - cp.point).norm();
    const double dp = std::min(via_start, via_end);
    if (!(cp.distance < threshold * dp)) continue;
    if (!best || cp.distance < best->distance) best = Pairing{j, cp.distance, cp.point, dp};
  }
  return best;
}

double ideal_radius(const MetaphoricalMap& m) {
  double a = 0;
  for (const auto& r : m.regions) a += std::abs(signed_area<double>(m.polygon(r)));
  return std::sqrt(a / std::numbers::pi);
}

double beta_from_delta(double delta) {
  const double d = delta - 1;
  const double sign = d > 0 ? 1.0 : (d < 0 ? -1.0 : 0.0);
  return 1 + sign * std::log1p(std::abs(d));
}

double beta(std::span<const Point2d> poly, int u, double rho, const SimParams& params,
            double min_distance) {
  const auto pair = pairing_edge(poly, u, params.pairing_threshold);
  if (!pair) return 1.0;
  const double d = std::max(pair->distance, min_distance);
  if (!(d > 0)) return 1.0;
  return beta_from_delta(params.passage_fraction * rho / d);
}

std::vector<PressureContribution> air_pressure_forces(std::span<const Point2d> poly,
                                                      std::span<const double> betas,
                                                      double pressure, double stiffness,
                                                      double c_p) {
  const int m = static_cast<int>(poly.size());
  std::vector<PressureContribution> out;
  double normalizer = 0;
  for (int j = 0; j < m; ++j) {
    const int k = (j + 1) % m;
    normalizer += (poly[k] - poly[j]).norm() * (betas[j] + betas[k]);
  }
  if (!(normalizer > 0)) return out;
  out.reserve(2 * m);
  const double scale = c_p * pressure * stiffness * 2 / normalizer;
  for (int j = 0; j < m; ++j) {
    const int k = (j + 1) % m;
    const Point2d e = poly[k] - poly[j];
    const double len = e.norm();
    if (len == 0) continue;
    const Point2d normal(e.y() / len, -e.x() / len);
    out.push_back({j, scale * betas[j] * len * normal});
    out.push_back({k, scale * betas[k] * len * normal});
  }
  return out;
}

Point2d repulsion_vv(const Point2d& u, const Point2d& v, double c, double min_distance) {
  Point2d d = u - v;
  double len = d.norm();
  if (len == 0) return Point2d::Zero();
  const Point2d dir = d / len;
  len = std::max(len, min_distance);
  return c / (len * len) * dir;
}

Point2d repulsion_ve(const Point2d& v, const Point2d& a, const Point2d& b, double c,
                     double min_distance) {
  const auto cp = closest_point_on_segment(v, a, b);
  const Point2d xv = v - cp.point;
  double len = xv.norm();
  const Point2d e = b - a;
  const double elen = e.norm();
  if (len == 0 || elen == 0) return Point2d::Zero();
  const Point2d dir = xv / len;
  const Point2d normal(-e.y() / elen, e.x() / elen);
  const double align = std::abs(normal.dot(dir));
  len = std::max(len, min_distance);
  return c / (len * len) * align * dir;
}

Point2d angular_force(const Point2d& u, const Point2d& v, const Point2d& w, int degree,
                      double c) {
  const Point2d a = u - v;
  const Point2d b = w - v;
  const double na = a.norm(), nb = b.norm();
  if (na == 0 || nb == 0 || degree < 1) return Point2d::Zero();
  double alpha = std::atan2(cross<double>(a, b), a.dot(b));
  if (alpha <= 0) alpha += 2 * std::numbers::pi;
  const double fair = 2 * std::numbers::pi / degree;
  const double half = alpha / 2;
  const Point2d ua = a / na;
  const Point2d bisector(ua.x() * std::cos(half) - ua.y() * std::sin(half),
                         ua.x() * std::sin(half) + ua.y() * std::cos(half));
  constexpr double kMinAngle = 1e-6;
  return c * (fair - alpha) / std::max(alpha, kMinAngle) * bisector;
}

namespace {

std::uint64_t directed_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

struct FaceView {
  int face;  // region index or kOuterFace
  const std::vector<int>* boundary;
};

std::vector<FaceView> faces_of(const MetaphoricalMap& m, const MapTopology& topo) {
  std::vector<FaceView> faces;
  for (const auto& cyc : topo.outer_cycles) faces.push_back({kOuterFace, &cyc});
  for (int i = 0; i < static_cast<int>(m.regions.size()); ++i) {
    faces.push_back({i, &m.regions[i].boundary});
  }
  return faces;
}

// Smallest face index shared by two points.
int first_common_face(const std::vector<int>& fa, const std::vector<int>& fb) {
  std::size_t i = 0, j = 0;
  while (i < fa.size() && j < fb.size()) {
    if (fa[i] == fb[j]) return fa[i];
    if (fa[i] < fb[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return kOuterFace - 1;
}

bool region_flipped(const MetaphoricalMap& m, const std::vector<Point2d>& pts, int r) {
  const auto& b = m.regions[r].boundary;
  double acc = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    acc += cross<double>(pts[b[i]], pts[b[(i + 1) % b.size()]]);
  }
  return !(acc > 0);
}

}  // namespace

std::vector<Point2d> safe_apply_displacements(SimState& state, const MapTopology& topo,
                                              std::vector<Point2d> disp,
                                              const SimParams& params) {
  MetaphoricalMap& m = state.map;
  const int n = static_cast<int>(m.points.size());
  const double lbar = average_edge_length(m, topo);
  const double cap = params.displacement_cap * lbar;

  // Clearance: distance to the nearest non-incident segment of an incident face.
  std::vector<double> clearance(n, std::numeric_limits<double>::infinity());
  for (const auto& fv : faces_of(m, topo)) {
    const auto& b = *fv.boundary;
    const std::size_t k = b.size();
    for (std::size_t i = 0; i < k; ++i) {
      const int v = b[i];
      for (std::size_t j = 0; j < k; ++j) {
        const int a = b[j], c = b[(j + 1) % k];
        if (a == v || c == v) continue;
        const double d = closest_point_on_segment(m.points[v], m.points[a], m.points[c]).distance;
        clearance[v] = std::min(clearance[v], d);
        // The segment may not sweep more than half as far toward v.
        clearance[a] = std::min(clearance[a], 0.5 * d);
        clearance[c] = std::min(clearance[c], 0.5 * d);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    const double mag = disp[i].norm();
    const double limit = std::min(0.5 * clearance[i], cap);
    if (mag > limit) disp[i] *= limit / mag;
    if (!disp[i].allFinite()) disp[i].setZero();
  }

  std::vector<Point2d> trial(n);
  auto place = [&] {
    for (int i = 0; i < n; ++i) trial[i] = m.points[i] + disp[i];
  };
  constexpr int kMaxHalvings = 20;
  place();
  bool clean = false;
  for (int round = 0; round <= kMaxHalvings + 1; ++round) {
    std::vector<char> offending(n, 0);
    bool bad = false;
    for (const auto& [i, j] : find_crossings(trial, topo.segments)) {
      for (const auto& [a, b] : {topo.segments[i], topo.segments[j]}) {
        offending[a] = offending[b] = 1;
      }
      bad = true;
    }
    for (int r = 0; r < static_cast<int>(m.regions.size()); ++r) {
      if (!region_flipped(m, trial, r)) continue;
      for (int p : m.regions[r].boundary) offending[p] = 1;
      bad = true;
    }
    if (!bad) {
      clean = true;
      break;
    }
    for (int i = 0; i < n; ++i) {
      if (!offending[i]) continue;
      if (round >= kMaxHalvings) {
        disp[i].setZero();
      } else {
        disp[i] *= 0.5;
      }
    }
    place();
  }
  if (!clean) {
    for (auto& d : disp) d.setZero();
    return disp;
  }
  m.points = trial;
  return disp;
}

void split_and_merge(SimState& state, const SimParams& params) {
  MetaphoricalMap& m = state.map;
  const MapTopology topo = build_topology(m);
  const double lbar = average_edge_length(m, topo);
  const int n = static_cast<int>(m.points.size());

  // Live neighbor lists and segments, updated as points are merged away.
  std::vector<std::vector<int>> nbr = topo.neighbors;
  std::vector<std::pair<int, int>> segs = topo.segments;
  std::vector<char> seg_alive(segs.size(), 1);
  std::vector<char> removed(n, 0);
  const double merge_dist = params.merge_fraction * lbar;

  for (int p = 0; p < n; ++p) {
    if (nbr[p].size() != 2) continue;
    const int a = nbr[p][0], b = nbr[p][1];
    const Point2d& pp = m.points[p];
    if (std::min((pp - m.points[a]).norm(), (pp - m.points[b]).norm()) >= merge_dist) continue;
    if (std::find(nbr[a].begin(), nbr[a].end(), b) != nbr[a].end()) continue;

    bool ok = true;
    for (int f : topo.point_faces[p]) {
      if (f != kOuterFace && m.regions[f].boundary.size() <= 3) ok = false;
    }
    if (!ok) continue;

    const Point2d& pa = m.points[a];
    const Point2d& pb = m.points[b];
    for (std::size_t s = 0; s < segs.size() && ok; ++s) {
      if (!seg_alive[s]) continue;
      const auto [x, y] = segs[s];
      if (x == p || y == p) continue;
      if (segments_properly_intersect(pa, pb, m.points[x], m.points[y])) ok = false;
    }
    // The cut-off triangle must not contain any other point.
    const int turn = orientation(pa, pp, pb);
    for (int q = 0; q < n && ok && turn != 0; ++q) {
      if (removed[q] || q == p || q == a || q == b) continue;
      const Point2d& pq = m.points[q];
      if (orientation(pa, pp, pq) == turn && orientation(pp, pb, pq) == turn &&
          orientation(pb, pa, pq) == turn) {
        ok = false;
      }
    }
    if (!ok) continue;

    for (int f : topo.point_faces[p]) {
      if (f == kOuterFace) continue;
      auto& bd = m.regions[f].boundary;
      bd.erase(std::remove(bd.begin(), bd.end(), p), bd.end());
    }
    std::replace(nbr[a].begin(), nbr[a].end(), p, b);
    std::replace(nbr[b].begin(), nbr[b].end(), p, a);
    nbr[p].clear();
    removed[p] = 1;
    for (std::size_t s = 0; s < segs.size(); ++s) {
      if (segs[s].first == p || segs[s].second == p) seg_alive[s] = 0;
    }
    segs.emplace_back(std::min(a, b), std::max(a, b));
    seg_alive.push_back(1);
  }

  const double split_len = params.split_factor * lbar;
  std::unordered_map<std::uint64_t, int> midpoint;
  for (auto& r : m.regions) {
    std::vector<int> out;
    out.reserve(r.boundary.size() + 4);
    const std::size_t k = r.boundary.size();
    for (std::size_t i = 0; i < k; ++i) {
      const int u = r.boundary[i], v = r.boundary[(i + 1) % k];
      out.push_back(u);
      if ((m.points[u] - m.points[v]).norm() <= split_len) continue;
      const auto key = directed_key(std::min(u, v), std::max(u, v));
      auto it = midpoint.find(key);
      if (it == midpoint.end()) {
        it = midpoint.emplace(key, static_cast<int>(m.points.size())).first;
        m.points.push_back((m.points[u] + m.points[v]) / 2);
      }
      out.push_back(it->second);
    }
    r.boundary = std::move(out);
  }
  m.compact();
}

Simulation::Simulation(MetaphoricalMap map, SimParams params)
    : state_(SimState::initial(std::move(map))), params_(params) {
  params_.validate();
}

void Simulation::step() {
  MetaphoricalMap& m = state_.map;
  const MapTopology topo = build_topology(m);
  const double lbar = average_edge_length(m, topo);
  const double floor_dist = 1e-6 * lbar;
  const int n = static_cast<int>(m.points.size());

  state_.pressures = region_pressures(m);
  update_stiffness(state_, params_);
  const double rho = ideal_radius(m);

  std::vector<Point2d> force(n, Point2d::Zero());

  // Air pressure.
  for (int ri = 0; ri < static_cast<int>(m.regions.size()); ++ri) {
    const auto poly = m.polygon(ri);
    std::vector<double> betas(poly.size(), 1.0);
    if (params_.beta_enabled()) {
      for (int u = 0; u < static_cast<int>(poly.size()); ++u) {
        betas[u] = beta(poly, u, rho, params_, floor_dist);
      }
    }
    const auto& bd = m.regions[ri].boundary;
    for (const auto& c : air_pressure_forces(poly, betas, state_.pressures[ri],
                                             state_.stiffness[ri], params_.c_p)) {
      force[bd[c.vertex]] += c.force;
    }
  }
  for (const auto& cyc : topo.outer_cycles) {
    std::vector<Point2d> poly;
    poly.reserve(cyc.size());
    for (int p : cyc) poly.push_back(m.points[p]);
    const std::vector<double> ones(poly.size(), 1.0);
    for (const auto& c : air_pressure_forces(poly, ones, 1.0, 1.0, params_.c_p)) {
      force[cyc[c.vertex]] += c.force;
    }
  }

  // Face of each directed boundary edge, for de-duplicating shared pairs.
  const auto faces = faces_of(m, topo);
  std::unordered_map<std::uint64_t, int> edge_face;
  for (const auto& fv : faces) {
    const auto& b = *fv.boundary;
    for (std::size_t i = 0; i < b.size(); ++i) {
      edge_face[directed_key(b[i], b[(i + 1) % b.size()])] = fv.face;
    }
  }

  for (const auto& fv : faces) {
    const auto& b = *fv.boundary;
    const std::size_t k = b.size();
    // Vertex-vertex repulsion, each pair once in the first face it shares.
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        const int p = b[i], q = b[j];
        if (p == q) continue;
        if (first_common_face(topo.point_faces[p], topo.point_faces[q]) != fv.face) continue;
        const Point2d f = repulsion_vv(m.points[p], m.points[q], params_.c_vv, floor_dist);
        force[p] += f;
        force[q] -= f;
      }
    }
    // Vertex-edge repulsion, each (vertex, edge) once.
    for (std::size_t j = 0; j < k; ++j) {
      const int a = b[j], c = b[(j + 1) % k];
      const auto other = edge_face.find(directed_key(c, a));
      const int other_face = other == edge_face.end() ? fv.face : other->second;
      for (std::size_t i = 0; i < k; ++i) {
        const int v = b[i];
        if (v == a || v == c) continue;
        if (other_face < fv.face &&
            std::binary_search(topo.point_faces[v].begin(), topo.point_faces[v].end(),
                               other_face)) {
          continue;
        }
        force[v] += repulsion_ve(m.points[v], m.points[a], m.points[c], params_.c_ve, floor_dist);
      }
    }
  }

  // Angular resolution.
  for (int v = 0; v < n; ++v) {
    const auto& nb = topo.neighbors[v];
    const int d = static_cast<int>(nb.size());
    if (d < 2 || (d == 2 && !params_.angular_on_degree2)) continue;
    for (int t = 0; t < d; ++t) {
      force[v] += angular_force(m.points[nb[t]], m.points[v], m.points[nb[(t + 1) % d]], d,
                                params_.c_ang);
    }
  }

  state_.forces = force;
  safe_apply_displacements(state_, topo, std::move(force), params_);
  split_and_merge(state_, params_);
  ++state_.iteration;

  if (params_.check_planarity) {
    const MapTopology after = build_topology(m);
    if (!find_crossings(m.points, after.segments, true).empty()) {
      throw SimulationError("planarity violated after iteration " +
                            std::to_string(state_.iteration));
    }
  }
}

RunResult run(MetaphoricalMap map, const SimParams& params, const RunOptions& options) {
  if (params.normalize_scale) {
    const double lbar = average_edge_length(map);
    if (!(lbar > 0)) throw SimulationError("initial map has no extent");
    map.scale(params.initial_edge_length / lbar);
  }
  const int iterations = params.iterations_for(map.internal_region_count());
  Simulation sim(std::move(map), params);
  RunResult result;
  for (int it = 0; it < iterations; ++it) {
    sim.step();
    if (options.observer) options.observer(sim.state());
    if (options.trace) {
      const QualityReport q = evaluate(sim.state().map);
      result.trace.push_back({sim.state().iteration, q.avg_error, q.max_error, q.avg_complexity,
                              q.max_complexity});
    }
  }
  result.map = sim.state().map;
  result.report = evaluate(result.map);
  result.stiffness = sim.state().stiffness;
  result.iterations = iterations;
  return result;
}

}  // namespace metamap
