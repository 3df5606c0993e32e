#include "metamap/experiment.hpp"
#include "metamap/forcesim.hpp"
#include "metamap/genbench.hpp"
#include "metamap/initmap.hpp"
#include "metamap/io.hpp"
#include "metamap/metrics.hpp"
#include "metamap/svg.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

using namespace metamap;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

// Input or parameter problems map to exit code 1; anything else is a
// runtime failure.
struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename F>
void validating(F&& f) {
  try {
    f();
  } catch (const FormatError& e) {
    throw ValidationFailure(e.what());
  } catch (const GraphError& e) {
    throw ValidationFailure(e.what());
  } catch (const MapError& e) {
    throw ValidationFailure(e.what());
  } catch (const InitError& e) {
    throw ValidationFailure(e.what());
  } catch (const GenerationError& e) {
    throw ValidationFailure(e.what());
  } catch (const ConfigError& e) {
    throw ValidationFailure(e.what());
  } catch (const SimulationError& e) {
    throw ValidationFailure(e.what());
  }
}

std::string hyphenated(std::string name) {
  for (auto& c : name) {
    if (c == '_') c = '-';
  }
  return name;
}

// Registers --name (and --hyphen-name) for every simulation parameter.
void add_sim_options(CLI::App* cmd, SimParams& p) {
  for (const auto& f : sim_param_fields()) {
    const std::string name = f.name;
    std::string flags = "--" + name;
    if (hyphenated(name) != name) flags += ",--" + hyphenated(name);
    if (f.real) cmd->add_option(flags, p.*f.real)->capture_default_str()->group("Simulation");
    if (f.integer) {
      cmd->add_option(flags, p.*f.integer, name == "iter" ? "0 selects 800 + 10 n" : "")
          ->capture_default_str()
          ->group("Simulation");
    }
    if (f.flag) {
      std::string neg = "!--no-" + name;
      if (hyphenated(name) != name) neg += ",!--no-" + hyphenated(name);
      cmd->add_flag(flags + "," + neg, p.*f.flag)->capture_default_str()->group("Simulation");
    }
  }
}

void print_sim_params(const SimParams& p) {
  for (const auto& f : sim_param_fields()) {
    std::cerr << "  " << f.name << " = ";
    if (f.real) std::cerr << format_double(p.*f.real);
    if (f.integer) std::cerr << p.*f.integer;
    if (f.flag) std::cerr << (p.*f.flag ? "true" : "false");
    std::cerr << "\n";
  }
}

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    write_file(path, content);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metaphorical maps of vertex-weighted plane graphs"};
  app.require_subcommand(1);

  // generate
  GenParams gen;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Random benchmark graph -> GraphFile");
  generate->add_option("--n", gen.n, "number of vertices")->capture_default_str();
  generate->add_option("--nest", gen.nest, "nesting ratio")->capture_default_str();
  generate->add_option("--weight_ratio,--weight-ratio,-w", gen.weight_ratio)->capture_default_str();
  generate->add_option("--rem", gen.rem, "fraction of internal edges removed")
      ->capture_default_str();
  generate->add_option("--seed", gen.seed)->capture_default_str();
  generate->add_option("-o,--output", gen_out, "GraphFile path (default stdout)");

  // layout
  SimParams sim;
  std::string layout_graph, layout_initial, layout_out, layout_trace, layout_init = "holes";
  bool tutte_for_triangulated = false;
  auto* layout = app.add_subcommand("layout", "GraphFile -> MapFile");
  layout->add_option("graph", layout_graph, "GraphFile")->required();
  layout->add_option("--initial", layout_initial, "initial MapFile instead of the dual transform");
  layout->add_option("--init", layout_init, "point_contacts or holes")->capture_default_str();
  layout->add_flag("--tutte", tutte_for_triangulated, "Tutte layout for triangulated input too");
  layout->add_option("-o,--output", layout_out, "MapFile path (default stdout)");
  layout->add_option("--trace", layout_trace, "per-iteration metric trace (CSV)");
  add_sim_options(layout, sim);

  // metrics
  std::string metrics_map, metrics_graph, metrics_out;
  auto* metrics = app.add_subcommand("metrics", "MapFile [+ GraphFile] -> report");
  metrics->add_option("map", metrics_map, "MapFile")->required();
  metrics->add_option("--graph", metrics_graph, "GraphFile to check contacts and weights");
  metrics->add_option("-o,--output", metrics_out, "report path (default stdout)");

  // render
  SvgStyle style;
  std::string render_map, render_out;
  bool flat = false;
  auto* render = app.add_subcommand("render", "MapFile -> SVG");
  render->add_option("map", render_map, "MapFile")->required();
  render->add_option("-o,--output", render_out, "SVG path (default stdout)");
  render->add_option("--width", style.width)->capture_default_str();
  render->add_option("--error_range,--error-range", style.error_range,
                     "signed error at the palette ends")
      ->capture_default_str();
  render->add_flag("--flat", flat, "no heat-map fill");
  render->add_flag("--labels", style.labels, "print region ids");
  render->add_flag("!--no-legend", style.legend, "omit the legend");

  // experiment
  std::string exp_config, exp_out;
  int workers = default_worker_count();
  bool no_wall_time = false;
  auto* experiment = app.add_subcommand("experiment", "config -> CSV");
  experiment->add_option("config", exp_config, "JSON experiment config")->required();
  experiment->add_option("-o,--output", exp_out, "CSV path (default stdout)");
  experiment->add_option("--workers", workers, "worker threads (default METAMAP_WORKERS)")
      ->capture_default_str();
  experiment->add_flag("--no-wall-time", no_wall_time, "omit the wall-time column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*generate) {
      WeightedPlaneGraph g;
      validating([&] {
        gen.validate();
        std::cerr << "generate parameters:\n  n = " << gen.n
                  << "\n  nest = " << format_double(gen.nest)
                  << "\n  weight_ratio = " << format_double(gen.weight_ratio)
                  << "\n  rem = " << format_double(gen.rem) << "\n  seed = " << gen.seed << "\n";
        g = generate_benchmark_graph(gen);
      });
      write_or_print(gen_out, graph_to_text(g));
    } else if (*layout) {
      WeightedPlaneGraph g;
      MetaphoricalMap initial;
      InitVariant variant{};
      validating([&] {
        variant = parse_init_variant(layout_init);
        sim.validate();
        g = load_graph(layout_graph);
        if (!layout_initial.empty()) {
          initial = load_map(layout_initial);
          const auto check = check_adjacency(initial, g);
          if (!check.unmatched.empty() || !check.weight_mismatch.empty()) {
            throw MapError("initial map does not match the graph's vertices and weights");
          }
        } else {
          InitOptions opt;
          opt.tutte_for_triangulated = tutte_for_triangulated;
          initial = initial_map(g, variant, opt);
        }
      });
      std::cerr << "layout parameters:\n  graph = " << layout_graph << "\n  init = "
                << (layout_initial.empty() ? std::string(to_string(variant))
                                           : "file " + layout_initial)
                << "\n  tutte_for_triangulated = " << (tutte_for_triangulated ? "true" : "false")
                << "\n  effective_iter = " << sim.iterations_for(initial.internal_region_count())
                << "\n";
      print_sim_params(sim);
      RunOptions opt;
      opt.trace = !layout_trace.empty();
      const RunResult res = run(std::move(initial), sim, opt);
      write_or_print(layout_out, map_to_text(res.map));
      if (opt.trace) {
        std::string csv = "iteration,avg_error,max_error,avg_compl,max_compl\n";
        for (const auto& t : res.trace) {
          csv += std::to_string(t.iteration) + "," + format_double(t.avg_error) + "," +
                 format_double(t.max_error) + "," + format_double(t.avg_complexity) + "," +
                 format_double(t.max_complexity) + "\n";
        }
        write_file(layout_trace, csv);
      }
      std::cerr << "avg_error = " << format_double(res.report.avg_error)
                << "\nmax_error = " << format_double(res.report.max_error)
                << "\navg_compl = " << format_double(res.report.avg_complexity)
                << "\nmax_compl = " << format_double(res.report.max_complexity) << "\n";
    } else if (*metrics) {
      std::cerr << "metrics parameters:\n  map = " << metrics_map
                << "\n  graph = " << (metrics_graph.empty() ? "(none)" : metrics_graph) << "\n";
      std::string out;
      bool mismatch = false;
      validating([&] {
        const MetaphoricalMap m = load_map(metrics_map);
        out = report_to_text(evaluate(m));
        if (!metrics_graph.empty()) {
          const auto check = check_adjacency(m, load_graph(metrics_graph));
          out += "missing_contacts," + std::to_string(check.missing.size()) + "\n";
          out += "extra_contacts," + std::to_string(check.extra.size()) + "\n";
          out += "weight_mismatches," + std::to_string(check.weight_mismatch.size()) + "\n";
          out += "unmatched_vertices," + std::to_string(check.unmatched.size()) + "\n";
          mismatch = !check.ok();
        }
      });
      write_or_print(metrics_out, out);
      if (mismatch) {
        std::cerr << "error: map does not represent the graph\n";
        return kExitValidation;
      }
    } else if (*render) {
      style.heat_map = !flat;
      std::cerr << "render parameters:\n  map = " << render_map
                << "\n  width = " << format_double(style.width)
                << "\n  heat_map = " << (style.heat_map ? "true" : "false")
                << "\n  error_range = " << format_double(style.error_range)
                << "\n  legend = " << (style.legend ? "true" : "false")
                << "\n  labels = " << (style.labels ? "true" : "false") << "\n";
      MetaphoricalMap m;
      validating([&] { m = load_map(render_map); });
      write_or_print(render_out, render_svg(m, style));
    } else if (*experiment) {
      ExperimentConfig cfg;
      validating([&] { cfg = parse_experiment_config(read_file(exp_config)); });
      if (workers < 1) throw ValidationFailure("--workers must be at least 1");
      std::cerr << "experiment parameters:\n" << experiment_config_to_text(cfg)
                << "\nworkers = " << workers << "\n";
      const auto rows = run_experiment(cfg, workers, [](std::size_t done, std::size_t total) {
        std::cerr << "\r" << done << "/" << total << std::flush;
      });
      std::cerr << "\n";
      write_or_print(exp_out, rows_to_csv(rows, !no_wall_time));
    }
  } catch (const ValidationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
