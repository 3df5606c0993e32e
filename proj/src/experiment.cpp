#include "metamap/experiment.hpp"

#include "metamap/genbench.hpp"
#include "metamap/io.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <set>
#include <thread>

namespace metamap {

using ordered_json = nlohmann::ordered_json;

void ExperimentConfig::validate() const {
  auto nonempty = [](const auto& v, const char* name) {
    if (v.empty()) throw ConfigError(std::string(name) + ": at least one value required");
  };
  nonempty(n, "n");
  nonempty(nest, "nest");
  nonempty(weight_ratio, "weight_ratio");
  nonempty(rem, "rem");
  nonempty(s_high, "s_high");
  nonempty(step, "step");
  if (graphs_per_cell < 1) throw ConfigError("graphs_per_cell must be at least 1");
  if (!run_new && !run_ms) throw ConfigError("algorithms: select at least one of new, ms");
  if (iter < 0) throw ConfigError("iter must be positive (or 0 for the default)");
  for (int v : n) {
    GenParams gp;
    gp.n = v;
    gp.validate();
  }
  for (double v : nest) {
    GenParams gp;
    gp.nest = v;
    gp.validate();
  }
  for (double v : weight_ratio) {
    GenParams gp;
    gp.weight_ratio = v;
    gp.validate();
  }
  for (double v : rem) {
    GenParams gp;
    gp.rem = v;
    gp.validate();
  }
  for (double sh : s_high) {
    for (double st : step) {
      SimParams p = sim;
      p.s_high = sh;
      p.step = st;
      p.iter = iter;
      p.validate();
    }
  }
}

namespace {

template <typename T>
std::vector<T> scalar_or_list(const ordered_json& v, const std::string& key) {
  try {
    if (v.is_array()) return v.get<std::vector<T>>();
    return {v.get<T>()};
  } catch (const ordered_json::exception&) {
    throw ConfigError(key + ": expected a number or a list of numbers");
  }
}

template <typename T>
T get(const ordered_json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const ordered_json::exception&) {
    throw ConfigError(key + ": wrong type");
  }
}

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text.begin(), text.end());
  } catch (const ordered_json::parse_error& e) {
    throw ConfigError(std::string("parse error: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig cfg;
  for (const auto& [key, val] : j.items()) {
    if (key == "n") {
      cfg.n = scalar_or_list<int>(val, key);
    } else if (key == "nest") {
      cfg.nest = scalar_or_list<double>(val, key);
    } else if (key == "weight_ratio") {
      cfg.weight_ratio = scalar_or_list<double>(val, key);
    } else if (key == "rem") {
      cfg.rem = scalar_or_list<double>(val, key);
    } else if (key == "s_high") {
      cfg.s_high = scalar_or_list<double>(val, key);
    } else if (key == "step") {
      cfg.step = scalar_or_list<double>(val, key);
    } else if (key == "graphs_per_cell") {
      cfg.graphs_per_cell = get<int>(val, key);
    } else if (key == "base_seed") {
      cfg.base_seed = get<std::uint64_t>(val, key);
    } else if (key == "iter") {
      cfg.iter = get<int>(val, key);
    } else if (key == "init") {
      try {
        cfg.init = parse_init_variant(get<std::string>(val, key));
      } catch (const InitError& e) {
        throw ConfigError(std::string("init: ") + e.what());
      }
    } else if (key == "algorithms") {
      cfg.run_new = cfg.run_ms = false;
      for (const auto& a : scalar_or_list<std::string>(val, key)) {
        if (a == "new") {
          cfg.run_new = true;
        } else if (a == "ms") {
          cfg.run_ms = true;
        } else {
          throw ConfigError("algorithms: unknown entry \"" + a + "\" (expected new or ms)");
        }
      }
    } else if (key == "sim") {
      if (!val.is_object()) throw ConfigError("sim: expected an object");
      static const std::set<std::string> grid_keys{"s_high", "step", "iter", "ms_mode"};
      for (const auto& [name, v] : val.items()) {
        if (grid_keys.count(name)) {
          throw ConfigError("sim." + name + ": set at the top level or via algorithms");
        }
        bool found = false;
        for (const auto& f : sim_param_fields()) {
          if (name != f.name) continue;
          found = true;
          if (f.real) cfg.sim.*f.real = get<double>(v, "sim." + name);
          if (f.integer) cfg.sim.*f.integer = get<int>(v, "sim." + name);
          if (f.flag) cfg.sim.*f.flag = get<bool>(v, "sim." + name);
        }
        if (!found) throw ConfigError("sim: unknown parameter \"" + name + "\"");
      }
    } else {
      throw ConfigError("unknown key \"" + key + "\"");
    }
  }
  cfg.validate();
  return cfg;
}

std::string experiment_config_to_text(const ExperimentConfig& cfg) {
  ordered_json j;
  j["n"] = cfg.n;
  j["nest"] = cfg.nest;
  j["weight_ratio"] = cfg.weight_ratio;
  j["rem"] = cfg.rem;
  j["s_high"] = cfg.s_high;
  j["step"] = cfg.step;
  j["graphs_per_cell"] = cfg.graphs_per_cell;
  j["base_seed"] = cfg.base_seed;
  j["algorithms"] = ordered_json::array();
  if (cfg.run_new) j["algorithms"].push_back("new");
  if (cfg.run_ms) j["algorithms"].push_back("ms");
  j["init"] = std::string(to_string(cfg.init));
  j["iter"] = cfg.iter;
  ordered_json sim;
  for (const auto& f : sim_param_fields()) {
    const std::string name = f.name;
    if (name == "s_high" || name == "step" || name == "iter" || name == "ms_mode") continue;
    if (f.real) sim[name] = cfg.sim.*f.real;
    if (f.integer) sim[name] = cfg.sim.*f.integer;
    if (f.flag) sim[name] = cfg.sim.*f.flag;
  }
  j["sim"] = sim;
  return j.dump(2);
}

std::vector<ExperimentRow> plan_experiment(const ExperimentConfig& cfg) {
  std::vector<ExperimentRow> rows;
  for (int n : cfg.n) {
    for (double nest : cfg.nest) {
      for (double w : cfg.weight_ratio) {
        for (double rem : cfg.rem) {
          for (int k = 0; k < cfg.graphs_per_cell; ++k) {
            ExperimentRow base;
            base.seed = cfg.base_seed + static_cast<std::uint64_t>(k);
            base.n = n;
            base.nest = nest;
            base.weight_ratio = w;
            base.rem = rem;
            base.init = std::string(to_string(cfg.init));
            base.iter = cfg.iter > 0 ? cfg.iter : 800 + 10 * n;
            if (cfg.run_new) {
              for (double sh : cfg.s_high) {
                for (double st : cfg.step) {
                  ExperimentRow r = base;
                  r.s_high = sh;
                  r.step = st;
                  rows.push_back(r);
                }
              }
            }
            if (cfg.run_ms) {
              ExperimentRow r = base;
              r.ms_mode = true;
              r.s_high = 1;
              r.step = cfg.step.front();
              rows.push_back(r);
            }
          }
        }
      }
    }
  }
  return rows;
}

void execute_row(ExperimentRow& row, const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    GenParams gp;
    gp.n = row.n;
    gp.nest = row.nest;
    gp.weight_ratio = row.weight_ratio;
    gp.rem = row.rem;
    gp.seed = row.seed;
    const WeightedPlaneGraph g = generate_benchmark_graph(gp);
    SimParams sp = cfg.sim;
    sp.s_high = row.s_high;
    sp.step = row.step;
    sp.ms_mode = row.ms_mode;
    sp.iter = cfg.iter;
    MetaphoricalMap m = initial_map(g, cfg.init);
    sp.iter = sp.iterations_for(m.internal_region_count());
    row.iter = sp.iter;
    const RunResult res = run(std::move(m), sp);
    row.avg_error = res.report.avg_error;
    row.max_error = res.report.max_error;
    row.avg_compl = res.report.avg_complexity;
    row.max_compl = res.report.max_complexity;
    row.status = "ok";
  } catch (const std::exception& e) {
    row.status = e.what();
    row.avg_error = row.max_error = row.avg_compl = row.max_compl =
        std::numeric_limits<double>::quiet_NaN();
  }
  row.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int default_worker_count() {
  if (const char* env = std::getenv("METAMAP_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg, int workers,
                                          const ProgressFn& progress) {
  cfg.validate();
  std::vector<ExperimentRow> rows = plan_experiment(cfg);
  std::atomic<std::size_t> next{0};
  std::size_t done = 0;
  std::mutex mu;
  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      execute_row(rows[i], cfg);
      if (progress) {
        std::lock_guard lock(mu);
        progress(++done, rows.size());
      }
    }
  };
  const int count = std::max(1, std::min<int>(workers, static_cast<int>(rows.size())));
  std::vector<std::jthread> pool;
  for (int t = 1; t < count; ++t) pool.emplace_back(work);
  work();
  pool.clear();
  return rows;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string csv_num(double v) { return std::isnan(v) ? "" : format_double(v); }

}  // namespace

std::string rows_to_csv(const std::vector<ExperimentRow>& rows, bool include_wall_time) {
  std::string out =
      "seed,n,nest,weight_ratio,rem,s_high,step,iter,ms_mode,init,avg_error,max_error,"
      "avg_compl,max_compl";
  if (include_wall_time) out += ",wall_time_seconds";
  out += ",status\n";
  for (const auto& r : rows) {
    out += std::to_string(r.seed) + "," + std::to_string(r.n) + "," + csv_num(r.nest) + "," +
           csv_num(r.weight_ratio) + "," + csv_num(r.rem) + "," + csv_num(r.s_high) + "," +
           csv_num(r.step) + "," + std::to_string(r.iter) + "," + (r.ms_mode ? "1" : "0") + "," +
           r.init + "," + csv_num(r.avg_error) + "," + csv_num(r.max_error) + "," +
           csv_num(r.avg_compl) + "," + csv_num(r.max_compl);
    if (include_wall_time) out += "," + csv_num(r.wall_time_seconds);
    out += "," + csv_field(r.status) + "\n";
  }
  return out;
}

}  // namespace metamap
