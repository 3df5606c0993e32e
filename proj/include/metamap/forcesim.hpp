#pragma once

#include "metamap/geom.hpp"
#include "metamap/map.hpp"
#include "metamap/metrics.hpp"

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace metamap {

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SimParams {
  // Force multipliers.
  double c_vv = 25.0;
  double c_ve = 10.0;
  double c_p = 3.0;
  double c_ang = 0.5;

  // Stiffness schedule.
  double step = 0.02;
  double s_high = 8.0;
  int iter = 0;  // 0 selects 800 + 10 n

  // Narrow-passage correction.
  double passage_fraction = 0.05;
  double pairing_threshold = 0.9;

  // Subdivision maintenance, relative to the mean segment length.
  double merge_fraction = 0.1;
  double split_factor = 2.0;

  // Baseline: unit stiffness and no passage correction.
  bool ms_mode = false;
  bool use_beta = true;
  bool angular_on_degree2 = true;

  bool normalize_scale = true;
  double initial_edge_length = 10.0;  // mean segment length after normalization
  double displacement_cap = 0.5;  // per-iteration move limit, times mean segment length

  bool check_planarity = false;  // exhaustive crossing check after every iteration

  double s_low() const { return 1.0 / s_high; }
  bool beta_enabled() const { return use_beta && !ms_mode; }
  bool stiffness_enabled() const { return !ms_mode; }
  int iterations_for(int region_count) const { return iter > 0 ? iter : 800 + 10 * region_count; }
  void validate() const;
};

/// Name and member of every SimParams field, in declaration order; exactly
/// one of the member pointers is set.
struct SimParamField {
  const char* name;
  double SimParams::*real = nullptr;
  int SimParams::*integer = nullptr;
  bool SimParams::*flag = nullptr;
};
std::span<const SimParamField> sim_param_fields();

struct SimState {
  MetaphoricalMap map;
  std::vector<double> stiffness;  // per region index
  std::vector<double> pressures;  // per region index, from the latest iteration
  std::vector<Point2d> forces;    // per point, resultant of the latest iteration
  int iteration = 0;

  static SimState initial(MetaphoricalMap map);
};

/// Normalized pressure (w / A) * (sum A / sum w).
double region_pressure(double weight, double area, double area_sum, double weight_sum);

/// Pressure of every region (holes use their target weight); sums run over
/// all regions. Throws SimulationError naming a region with non-positive area.
std::vector<double> region_pressures(const MetaphoricalMap& m);

/// One stiffness step from the current pressures: +step when over-pressured,
/// -step when under-pressured, clamped to [1/s_high, s_high]. Holes stay at 1.
void update_stiffness(SimState& state, const SimParams& params);

struct Pairing {
  int edge = -1;  // edge index j, from vertex j to vertex j + 1
  double distance = 0;
  Point2d closest = Point2d::Zero();
  double polygonal_distance = 0;
};

/// Nearest edge not incident to vertex u with d_E < threshold * d_P, where
/// d_P is the shorter boundary walk from u to the closest point.
std::optional<Pairing> pairing_edge(std::span<const Point2d> poly, int u, double threshold = 0.9);

/// Radius of the disc whose area equals the total map area.
double ideal_radius(const MetaphoricalMap& m);

/// 1 + sign(delta - 1) ln(1 + |delta - 1|).
double beta_from_delta(double delta);

/// Passage coefficient of vertex u; 1 when no pairing edge exists.
double beta(std::span<const Point2d> poly, int u, double ideal_radius, const SimParams& params,
            double min_distance = 0);

struct PressureContribution {
  int vertex = 0;  // polygon-local index
  Point2d force = Point2d::Zero();
};

/// Air-pressure contributions on a face traced with the face on its left:
/// two per edge (one per endpoint) along the right-hand normal, with share
/// proportional to the endpoint's beta. Magnitudes sum to 2 c_p P s.
std::vector<PressureContribution> air_pressure_forces(std::span<const Point2d> poly,
                                                      std::span<const double> betas,
                                                      double pressure, double stiffness,
                                                      double c_p = 3.0);

/// Force on u pushing it away from v, c / d^2.
Point2d repulsion_vv(const Point2d& u, const Point2d& v, double c = 25.0, double min_distance = 0);

/// Force on v pushing it away from segment ab, c / |xv|^2 scaled by the
/// alignment between the segment normal and the direction x -> v.
Point2d repulsion_ve(const Point2d& v, const Point2d& a, const Point2d& b, double c = 10.0,
                     double min_distance = 0);

/// Angular-resolution force on v for the counterclockwise wedge u -> w.
Point2d angular_force(const Point2d& u, const Point2d& v, const Point2d& w, int degree,
                      double c = 0.5);

/// Moves every point by its (truncated) displacement without creating
/// crossings or flipping a region. Returns the applied displacements.
std::vector<Point2d> safe_apply_displacements(SimState& state, const MapTopology& topo,
                                              std::vector<Point2d> raw, const SimParams& params);

/// Removes degree-2 points closer than merge_fraction * mean length to a
/// neighbor and halves segments longer than split_factor * mean length.
void split_and_merge(SimState& state, const SimParams& params);

struct TraceRow {
  int iteration = 0;
  double avg_error = 0;
  double max_error = 0;
  double avg_complexity = 0;
  double max_complexity = 0;
};

struct RunResult {
  MetaphoricalMap map;
  QualityReport report;
  std::vector<TraceRow> trace;
  std::vector<double> stiffness;
  int iterations = 0;
};

class Simulation {
 public:
  Simulation(MetaphoricalMap map, SimParams params);

  void step();
  const SimState& state() const { return state_; }
  const SimParams& params() const { return params_; }

 private:
  SimState state_;
  SimParams params_;
};

struct RunOptions {
  bool trace = false;
  /// Called after each iteration with the live state.
  std::function<void(const SimState&)> observer;
};

RunResult run(MetaphoricalMap map, const SimParams& params, const RunOptions& options = {});

}  // namespace metamap
