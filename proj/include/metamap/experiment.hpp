#pragma once

#include "metamap/forcesim.hpp"
#include "metamap/initmap.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace metamap {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameter grid. Every combination of the list-valued fields is a cell;
/// each cell runs `graphs_per_cell` graphs with seeds base_seed + k.
struct ExperimentConfig {
  std::vector<int> n{20};
  std::vector<double> nest{0.0};
  std::vector<double> weight_ratio{5.0};
  std::vector<double> rem{0.0};
  std::vector<double> s_high{8.0};
  std::vector<double> step{0.02};
  int graphs_per_cell = 50;
  std::uint64_t base_seed = 1;
  bool run_new = true;
  bool run_ms = false;
  InitVariant init = InitVariant::holes;
  int iter = 0;  // 0 selects 800 + 10 n
  SimParams sim;  // remaining simulation parameters

  void validate() const;
};

/// Parses a JSON config. Unknown keys are rejected.
ExperimentConfig parse_experiment_config(std::string_view text);

/// Effective configuration as JSON, including defaults.
std::string experiment_config_to_text(const ExperimentConfig& cfg);

struct ExperimentRow {
  std::uint64_t seed = 0;
  int n = 0;
  double nest = 0;
  double weight_ratio = 0;
  double rem = 0;
  double s_high = 0;
  double step = 0;
  int iter = 0;
  bool ms_mode = false;
  std::string init;
  double avg_error = 0;
  double max_error = 0;
  double avg_compl = 0;
  double max_compl = 0;
  double wall_time_seconds = 0;
  std::string status = "ok";  // error message when the run failed
};

/// Rows in grid order: cells vary s_high and step fastest, then rem,
/// weight_ratio, nest, n; within a cell graphs in seed order, new before ms.
/// Baseline rows do not depend on s_high or step and appear once per graph.
std::vector<ExperimentRow> plan_experiment(const ExperimentConfig& cfg);

/// Fills in one planned row.
void execute_row(ExperimentRow& row, const ExperimentConfig& cfg);

/// Worker count from METAMAP_WORKERS, else the hardware concurrency.
int default_worker_count();

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg, int workers,
                                          const ProgressFn& progress = {});

std::string rows_to_csv(const std::vector<ExperimentRow>& rows, bool include_wall_time = true);

}  // namespace metamap
