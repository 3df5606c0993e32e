#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "metamap/experiment.hpp"
#include "metamap/genbench.hpp"
#include "metamap/initmap.hpp"
#include "metamap/io.hpp"
#include "metamap/svg.hpp"


#include <cstdlib>
#include <filesystem>
#include <random>
#include <regex>

using namespace metamap;

namespace {

const char* kK3 = R"({
  "format": "metamap-graph",
  "version": 1,
  "vertices": [
    {"id": 1, "weight": 2, "x": 0, "y": 0},
    {"id": 2, "weight": 3, "x": 2, "y": 0},
    {"id": 3, "weight": 5, "x": 0, "y": 2}
  ],
  "edges": [[1, 2], [2, 3], [3, 1]]
})";

WeightedPlaneGraph generated(int n, double rem, std::uint64_t seed) {
  GenParams gp;
  gp.n = n;
  gp.rem = rem;
  gp.seed = seed;
  return generate_benchmark_graph(gp);
}

int count(const std::string& s, const std::string& needle) {
  int c = 0;
  for (std::size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++c;
  return c;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("metamap_test_io_" + name);
}

}  // namespace

TEST_CASE("shortest round-trip doubles") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(-1.5e-7) == "-1.5e-07");
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double x = std::ldexp(uniform01(rng) - 0.5, static_cast<int>(rng() % 80) - 40);
    CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
  }
}

TEST_CASE("minimal K3 GraphFile") {
  const auto g = graph_from_text(kK3);
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 3);
  CHECK(g.vertex(g.index_of(3)).weight == 5);
  CHECK(g.outer_face().size() == 3);
}

TEST_CASE("GraphFile validation errors") {
  std::string bad = kK3;
  bad.replace(bad.find("\"weight\": 3"), 11, "\"weight\": 0");
  CHECK_THROWS_WITH(graph_from_text(bad), doctest::Contains("weight must be positive"));

  std::string crossing = R"({"format": "metamap-graph", "version": 1,
    "vertices": [{"id": 0, "weight": 1, "x": 0, "y": 0}, {"id": 1, "weight": 1, "x": 1, "y": 0},
                 {"id": 2, "weight": 1, "x": 1, "y": 1}, {"id": 3, "weight": 1, "x": 0, "y": 1}],
    "edges": [[0, 1], [1, 2], [2, 3], [3, 0], [0, 2], [1, 3]]})";
  CHECK_THROWS_WITH_AS(graph_from_text(crossing), doctest::Contains("cross"), GraphError);

  CHECK_THROWS_AS(graph_from_text("{"), FormatError);
  CHECK_THROWS_WITH_AS(graph_from_text(R"({"format": "metamap-map", "version": 1})"),
                       doctest::Contains("format"), FormatError);
  CHECK_THROWS_WITH_AS(graph_from_text(R"({"format": "metamap-graph", "version": 7})"),
                       doctest::Contains("version"), FormatError);
  std::string missing = kK3;
  missing.replace(missing.find("\"x\": 2, "), 8, "");
  CHECK_THROWS_WITH_AS(graph_from_text(missing), doctest::Contains("vertices[1]"), FormatError);
}

TEST_CASE("GraphFile round trip") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto g = generated(40, seed % 2 ? 0.4 : 0.0, seed);
    const std::string text = graph_to_text(g);
    const auto back = graph_from_text(text);
    CHECK(graph_to_text(back) == text);
    REQUIRE(back.vertex_count() == g.vertex_count());
    for (int i = 0; i < g.vertex_count(); ++i) {
      CHECK(back.vertex(i).id == g.vertex(i).id);
      CHECK(back.vertex(i).weight == g.vertex(i).weight);
      CHECK(back.vertex(i).position == g.vertex(i).position);
      CHECK(back.rotation(i) == g.rotation(i));
    }
    CHECK(back.edges() == g.edges());
    CHECK(back.outer_face() == g.outer_face());
  }
}

TEST_CASE("MapFile round trip and validation") {
  const auto m = init_with_holes(generated(20, 0.4, 9));
  const std::string text = map_to_text(m);
  const auto back = map_from_text(text);
  CHECK(map_to_text(back) == text);
  CHECK(back.points == m.points);
  REQUIRE(back.regions.size() == m.regions.size());
  for (std::size_t i = 0; i < m.regions.size(); ++i) {
    CHECK(back.regions[i].id == m.regions[i].id);
    CHECK(back.regions[i].kind == m.regions[i].kind);
    CHECK(back.regions[i].boundary == m.regions[i].boundary);
    CHECK(back.regions[i].target_weight == m.regions[i].target_weight);
    CHECK(back.regions[i].source_vertex == m.regions[i].source_vertex);
  }

  // Sparse point ids are renumbered in file order.
  const auto sparse = map_from_text(R"({"format": "metamap-map", "version": 1,
    "points": {"10": [0, 0], "20": [1, 0], "30": [1, 1], "40": [0, 1]},
    "regions": [{"id": 5, "kind": "internal", "source_vertex": 5, "target_weight": 1,
                 "boundary": [10, 20, 30, 40]}]})");
  CHECK(sparse.regions[0].boundary == std::vector<int>{0, 1, 2, 3});

  CHECK_THROWS_AS(map_from_text(R"({"format": "metamap-map", "version": 1,
    "points": {"0": [0, 0], "1": [1, 0], "2": [1, 1], "3": [0, 1]},
    "regions": [{"id": 0, "kind": "internal", "target_weight": 1, "boundary": [0, 2, 1, 3]}]})"),
                  MapError);
  CHECK_THROWS_WITH_AS(map_from_text(R"({"format": "metamap-map", "version": 1,
    "points": {"0": [0, 0]}, "regions": [{"id": 0, "kind": "country", "target_weight": 1,
    "boundary": [0]}]})"),
                       doctest::Contains("kind"), FormatError);
}

TEST_CASE("file helpers") {
  const auto path = temp_path("k3.json");
  const auto g = graph_from_text(kK3);
  save_graph(path, g);
  CHECK(graph_to_text(load_graph(path)) == graph_to_text(g));
  const auto m = dual_transform(g);
  save_map(path, m);
  CHECK(map_to_text(load_map(path)) == map_to_text(m));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_file(temp_path("does_not_exist")), std::runtime_error);
}

TEST_CASE("quality report text") {
  const auto m = dual_transform(graph_from_text(kK3));
  const std::string r = report_to_text(evaluate(m));
  CHECK(r.find("avg_error") != std::string::npos);
  CHECK(r.find("max_compl") != std::string::npos);
}

TEST_CASE("SVG rendering") {
  const auto m = dual_transform(graph_from_text(kK3));
  const std::string svg = render_svg(m);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(count(svg, "<path class=\"region\"") == 3);
  for (const auto& r : m.regions) {
    CHECK(svg.find("data-id=\"" + std::to_string(r.id) + "\"") != std::string::npos);
  }
  const std::regex closed("<path [^>]* d=\"M[^\"]*Z\"");
  CHECK(std::distance(std::sregex_iterator(svg.begin(), svg.end(), closed),
                      std::sregex_iterator()) == 3);
  CHECK(svg == render_svg(m));

  SvgStyle bare;
  bare.legend = false;
  CHECK(render_svg(m, bare).find("class=\"legend\"") == std::string::npos);
  CHECK(svg.find("class=\"legend\"") != std::string::npos);
}

TEST_CASE("diverging palette") {
  CHECK(diverging_color(0, 0.3) == "#ffffff");
  const std::string over = diverging_color(0.3, 0.3);
  const std::string under = diverging_color(-0.3, 0.3);
  CHECK(over != under);
  // Red dominates for oversized regions, blue for undersized.
  auto channel = [](const std::string& c, int k) { return std::stoi(c.substr(1 + 2 * k, 2), nullptr, 16); };
  CHECK(channel(over, 0) > channel(over, 2));
  CHECK(channel(under, 2) > channel(under, 0));
  CHECK(diverging_color(5, 0.3) == over);
}

TEST_CASE("zero-error maps render at the palette midpoint") {
  // Two unit squares with equal weights.
  MetaphoricalMap m;
  m.points = {{0, 0}, {1, 0}, {2, 0}, {2, 1}, {1, 1}, {0, 1}};
  Region a, b;
  a.id = 0;
  a.boundary = {0, 1, 4, 5};
  a.source_vertex = 0;
  b.id = 1;
  b.boundary = {1, 2, 3, 4};
  b.source_vertex = 1;
  m.regions = {a, b};
  const std::string svg = render_svg(m);
  CHECK(count(svg, "class=\"region\" data-id=\"0\" fill=\"#ffffff\"") == 1);
  CHECK(count(svg, "class=\"region\" data-id=\"1\" fill=\"#ffffff\"") == 1);
}

TEST_CASE("holes are drawn with a hatch pattern") {
  GenParams gp;
  gp.n = 12;
  gp.rem = 0.5;
  gp.seed = 2;
  const auto m = init_with_holes(generate_benchmark_graph(gp));
  int holes = 0;
  for (const auto& r : m.regions) holes += r.is_hole();
  REQUIRE(holes > 0);
  const std::string svg = render_svg(m);
  CHECK(count(svg, "<path class=\"hole\"") == holes);
  CHECK(count(svg, "class=\"hole\" data-id=") == count(svg, "fill=\"url(#hatch)\""));
  CHECK(svg.find("<pattern id=\"hatch\"") != std::string::npos);
}

TEST_CASE("experiment config parsing") {
  auto cfg = parse_experiment_config(R"({"n": [15, 20], "weight_ratio": 10, "rem": [0, 0.2],
    "algorithms": ["new", "ms"], "graphs_per_cell": 3, "sim": {"c_vv": 20}})");
  CHECK(cfg.n == std::vector<int>{15, 20});
  CHECK(cfg.weight_ratio == std::vector<double>{10});
  CHECK(cfg.run_new);
  CHECK(cfg.run_ms);
  CHECK(cfg.sim.c_vv == 20);
  CHECK(parse_experiment_config(experiment_config_to_text(cfg)).n == cfg.n);
  CHECK_THROWS_AS(parse_experiment_config(R"({"colour": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_experiment_config(R"({"n": "many"})"), ConfigError);
  CHECK_THROWS_AS(parse_experiment_config(R"({"rem": 1.5})"), GenerationError);
  CHECK_THROWS_AS(parse_experiment_config(R"({"s_high": 0.5})"), SimulationError);
  CHECK_THROWS_AS(parse_experiment_config(R"({"sim": {"s_high": 2}})"), ConfigError);
  CHECK_THROWS_AS(parse_experiment_config(R"({"algorithms": ["fast"]})"), ConfigError);
}

TEST_CASE("experiment plan sizes") {
  ExperimentConfig cfg;
  cfg.run_ms = true;
  CHECK(plan_experiment(cfg).size() == 100);
  cfg.s_high = {2, 4, 8};
  // Baseline rows appear once per graph whatever the s_high sweep.
  CHECK(plan_experiment(cfg).size() == 50 * 4);
  cfg.run_ms = false;
  cfg.step = {0.01, 0.02, 0.04};
  cfg.n = {15, 20};
  CHECK(plan_experiment(cfg).size() == 2 * 50 * 9);
  const auto rows = plan_experiment(cfg);
  CHECK(rows.front().seed == 1);
  CHECK(rows.front().iter == 950);
  CHECK(rows.back().n == 20);
}

TEST_CASE("experiment CSV is deterministic and ordered") {
  ExperimentConfig cfg;
  cfg.n = {10};
  cfg.rem = {0.0, 0.4};
  cfg.graphs_per_cell = 2;
  cfg.run_ms = true;
  cfg.iter = 40;
  const auto a = run_experiment(cfg, 3);
  const auto b = run_experiment(cfg, 1);
  REQUIRE(a.size() == 8);
  CHECK(rows_to_csv(a, false) == rows_to_csv(b, false));
  const std::string csv = rows_to_csv(a);
  CHECK(csv.rfind("seed,n,nest,weight_ratio,rem,s_high,step,iter,ms_mode,init,avg_error,"
                  "max_error,avg_compl,max_compl,wall_time_seconds,status\n",
                  0) == 0);
  for (const auto& r : a) {
    CHECK(r.status == "ok");
    CHECK(r.wall_time_seconds > 0);
    CHECK(r.avg_error >= 0);
    CHECK(r.avg_error <= 1);
    CHECK(r.iter == 40);
  }
  CHECK(a[0].ms_mode == false);
  CHECK(a[1].ms_mode == true);
  CHECK(a[0].seed == a[1].seed);
  CHECK(a[4].rem == 0.4);
}

TEST_CASE("failing runs are recorded and the harness continues") {
  ExperimentConfig cfg;
  cfg.n = {10};
  cfg.graphs_per_cell = 2;
  cfg.iter = 5;
  cfg.sim.initial_edge_length = 1e200;  // overflows areas into a failure
  const auto rows = run_experiment(cfg, 2);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK(r.status != "ok");
    CHECK(std::isnan(r.avg_error));
  }
  const std::string csv = rows_to_csv(rows, false);
  CHECK(count(csv, "\n") == 3);
}

TEST_CASE("worker count from the environment") {
  ::setenv("METAMAP_WORKERS", "3", 1);
  CHECK(default_worker_count() == 3);
  ::setenv("METAMAP_WORKERS", "zero", 1);
  CHECK(default_worker_count() >= 1);
  ::unsetenv("METAMAP_WORKERS");
  CHECK(default_worker_count() >= 1);
}
