#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "metamap/genbench.hpp"
#include "metamap/io.hpp"
#include "oracles.hpp"

#include <set>

using namespace metamap;

namespace {

// Circumcircle test written out from the circumcenter, independent of the
// library's determinant predicate.
bool strictly_inside_circumcircle(const Point2d& a, const Point2d& b, const Point2d& c,
                                  const Point2d& p) {
  const double den = 2 * (a.x() * (b.y() - c.y()) + b.x() * (c.y() - a.y()) +
                          c.x() * (a.y() - b.y()));
  const double a2 = a.squaredNorm(), b2 = b.squaredNorm(), c2 = c.squaredNorm();
  const Point2d ctr((a2 * (b.y() - c.y()) + b2 * (c.y() - a.y()) + c2 * (a.y() - b.y())) / den,
                    (a2 * (c.x() - b.x()) + b2 * (a.x() - c.x()) + c2 * (b.x() - a.x())) / den);
  const double r = (a - ctr).norm();
  return (p - ctr).norm() < r * (1 - 1e-9);
}

int internal_edge_count(const WeightedPlaneGraph& g) {
  std::set<std::pair<int, int>> outer;
  const auto& f = g.outer_face();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const int a = f[i], b = f[(i + 1) % f.size()];
    outer.insert({std::min(a, b), std::max(a, b)});
  }
  return g.edge_count() - static_cast<int>(outer.size());
}

}  // namespace

TEST_CASE("Delaunay on three points is one triangle") {
  const std::vector<Point2d> p{{0, 0}, {1, 0}, {0.3, 0.8}};
  const auto t = delaunay_triangles(p);
  REQUIRE(t.size() == 1);
  CHECK(oracle::signed_area({p[t[0][0]], p[t[0][1]], p[t[0][2]]}) > 0);
  CHECK(delaunay_triangulate(p).edge_count() == 3);
  CHECK_THROWS_AS(delaunay_triangles(std::vector<Point2d>{{0, 0}, {1, 1}, {2, 2}}),
                  GenerationError);
}

TEST_CASE("Delaunay on four convex points picks the empty diagonal") {
  // Exactly one diagonal gives two triangles with empty circumcircles.
  const std::vector<Point2d> p{{0, 0}, {4, 0}, {3.5, 2.5}, {0, 2}};
  const bool diag02_ok = !strictly_inside_circumcircle(p[0], p[1], p[2], p[3]) &&
                         !strictly_inside_circumcircle(p[0], p[2], p[3], p[1]);
  const bool diag13_ok = !strictly_inside_circumcircle(p[0], p[1], p[3], p[2]) &&
                         !strictly_inside_circumcircle(p[1], p[2], p[3], p[0]);
  REQUIRE(diag02_ok != diag13_ok);
  const auto g = delaunay_triangulate(p);
  CHECK(delaunay_triangles(p).size() == 2);
  CHECK(g.has_edge(0, 2) == diag02_ok);
  CHECK(g.has_edge(1, 3) == diag13_ok);
}

TEST_CASE("square corners plus center fan from the center") {
  const std::vector<Point2d> p{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
  const auto t = delaunay_triangles(p);
  REQUIRE(t.size() == 4);
  for (const auto& tri : t) CHECK(std::count(tri.begin(), tri.end(), 4) == 1);
  // Every corner triangle of the alternatives has the center in its circumcircle.
  for (int i = 0; i < 4; ++i) {
    CHECK(strictly_inside_circumcircle(p[i], p[(i + 1) % 4], p[(i + 2) % 4], p[4]));
  }
  const auto g = delaunay_triangulate(p);
  CHECK_FALSE(g.has_edge(0, 2));
  CHECK_FALSE(g.has_edge(1, 3));
  CHECK(g.degree(4) == 4);
}

TEST_CASE("random Delaunay triangulations have empty circumcircles") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 40; ++t) {
    std::vector<Point2d> p(5 + t * 2);
    for (auto& q : p) q = Point2d(uniform01(rng), uniform01(rng));
    const auto tris = delaunay_triangles(p);
    const auto hull = oracle::hull(p);
    // Euler count for a triangulated point set: 2n - 2 - h triangles.
    CHECK(tris.size() == 2 * p.size() - 2 - hull.size());
    for (const auto& tri : tris) {
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (k == static_cast<std::size_t>(tri[0]) || k == static_cast<std::size_t>(tri[1]) ||
            k == static_cast<std::size_t>(tri[2])) {
          continue;
        }
        CHECK_FALSE(strictly_inside_circumcircle(p[tri[0]], p[tri[1]], p[tri[2]], p[k]));
      }
    }
  }
}

TEST_CASE("benchmark graphs are triangulated with bounded weights") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenParams gp;
    gp.seed = seed;
    gp.nest = (seed % 3) * 0.2;
    const auto g = generate_benchmark_graph(gp);
    CHECK(g.vertex_count() == 20);
    CHECK(is_internally_triangulated(g));
    CHECK(is_biconnected(g));
    double lo = 1e300, hi = 0;
    for (const auto& v : g.vertices()) {
      CHECK(v.weight >= 1);
      CHECK(v.weight <= 5);
      lo = std::min(lo, v.weight);
      hi = std::max(hi, v.weight);
    }
    CHECK(hi / lo <= 5);
  }
}

TEST_CASE("generation is deterministic per seed") {
  GenParams gp;
  gp.n = 40;
  gp.rem = 0.4;
  gp.nest = 0.3;
  gp.seed = 123;
  const std::string a = graph_to_text(generate_benchmark_graph(gp));
  CHECK(a == graph_to_text(generate_benchmark_graph(gp)));
  gp.seed = 124;
  CHECK(a != graph_to_text(generate_benchmark_graph(gp)));
}

TEST_CASE("edge removal keeps biconnectivity within the quota") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (double rem : {0.2, 0.4, 0.6}) {
      GenParams gp;
      gp.n = 40;
      gp.rem = rem;
      gp.seed = seed;
      const auto g = generate_benchmark_graph(gp);
      std::vector<std::pair<int, int>> edges(g.edges().begin(), g.edges().end());
      CHECK(oracle::biconnected(g.vertex_count(), edges));
      const auto full = delaunay_triangulate(g.positions());
      const int removed = full.edge_count() - g.edge_count();
      CHECK(removed >= 1);
      CHECK(removed <= static_cast<int>(std::floor(rem * internal_edge_count(full))));
      bool big_face = false;
      for (const auto& f : extract_faces(g).inner_faces()) big_face = big_face || f.size() >= 4;
      CHECK(big_face);
      CHECK_FALSE(is_internally_triangulated(g));
      // Only edges of the full triangulation remain.
      for (auto [a, b] : g.edges()) CHECK(full.has_edge(a, b));
    }
  }
}

TEST_CASE("parameter validation") {
  GenParams gp;
  gp.nest = 1.5;
  CHECK_THROWS_AS(generate_benchmark_graph(gp), GenerationError);
  gp = {};
  gp.weight_ratio = 0.5;
  CHECK_THROWS_AS(gp.validate(), GenerationError);
  gp = {};
  gp.rem = 1.0;
  CHECK_THROWS_AS(gp.validate(), GenerationError);
  gp = {};
  gp.n = 3;
  CHECK_THROWS_AS(gp.validate(), GenerationError);
}

TEST_CASE("uniform helpers") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform01(rng);
    CHECK(u >= 0);
    CHECK(u < 1);
    CHECK(uniform_below(rng, 7) < 7);
  }
}
