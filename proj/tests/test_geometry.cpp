#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "gtom/facets.hpp"
#include "gtom/geometry.hpp"
#include "gtom/subdivision.hpp"
#include "oracles.hpp"

using namespace gtom;
using oracle::rows;

namespace {

std::vector<BipartiteType> sorted_facet_graphs(const BipartiteType& g) {
  std::vector<BipartiteType> out;
  for (const auto& f : facets_graphtheoretic(g)) out.push_back(f.graph);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BipartiteType> sorted_hull_facets(const BipartiteType& g) {
  std::vector<BipartiteType> out;
  for (const auto& f : facets_geometric(g)) out.push_back(f.vertex_set);
  std::sort(out.begin(), out.end());
  return out;
}

// Faces of a polytope are exactly the intersections of facets (plus the
// polytope itself), so a subgraph is a face iff it is closed under them.
bool face_by_facets(const BipartiteType& h, const BipartiteType& g) {
  if (h.edge_count() == 0) return false;
  if (h == g) return true;
  BipartiteType meet = g;
  for (const auto& f : facets_graphtheoretic(g))
    if (is_subgraph(h, f.graph)) meet = intersection(meet, f.graph);
  return meet == h;
}

HeightFunction heights(const BipartiteType& g, std::vector<int> v) {
  std::vector<Rational> q;
  for (int x : v) q.emplace_back(x);
  return HeightFunction(g, q);
}

}  // namespace

TEST_CASE("root polytope vertices and dimension") {
  const auto k11 = oracle::complete(1, 1);
  const auto q = q_vertices(k11);
  REQUIRE(q.cols() == 1);
  CHECK(q(0, 0) == 1);
  CHECK(q(1, 0) == 1);
  CHECK(q_vertices(oracle::complete(3, 4)).cols() == 12);
  CHECK(dim_q(oracle::complete(2, 2)) == 2);
  CHECK(dim_q(oracle::complete(2, 3)) == 3);
  CHECK(dim_q(rows(2, {{1}, {}})) == 0);
  std::mt19937_64 rng(2);
  for (int k = 0; k < 20; ++k) {
    const auto g = random_connected_spanning(3, 3, rng);
    CHECK(dim_q(g) == 4);
  }
  const auto tree = rows(3, {{1, 2}, {2, 3}});
  CHECK(is_spanning_tree(tree));
  CHECK(dim_q(tree) == 3);
  CHECK(tree.edge_count() == 4);
}

TEST_CASE("facet counts") {
  CHECK(facets_graphtheoretic(oracle::complete(2, 2)).size() == 4);
  CHECK(facets_geometric(oracle::complete(2, 2)).size() == 4);
  // the prism has two triangles and three squares
  CHECK(facets_geometric(oracle::complete(2, 3)).size() == 5);
  CHECK(facets_graphtheoretic(oracle::complete(2, 3)).size() == 5);
  for (int d = 2; d <= 5; ++d) CHECK(facets_graphtheoretic(oracle::complete(1, d)).size() == static_cast<std::size_t>(d));
  const auto facets = facets_graphtheoretic(oracle::complete(2, 2));
  bool found = false;
  for (const auto& f : facets) found = found || f.graph == rows(2, {{1}, {1}});
  CHECK(found);
}

TEST_CASE("facet splits use a single kind of cross edge") {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 40; ++k) {
    const auto g = random_connected_spanning(2 + k % 3, 2 + (k / 3) % 3, rng);
    for (const auto& f : facets_graphtheoretic(g)) {
      const auto c = cross_edges(g, f.split);
      CHECK(c.left1_right2 != c.left2_right1);
      CHECK((f.split.left1 & 1u) != 0);
      CHECK(is_subgraph(f.graph, g));
    }
    for (const auto& f : interior_splits(g)) {
      const auto c = cross_edges(g, f.split);
      CHECK(c.left1_right2);
      CHECK(c.left2_right1);
    }
  }
}

TEST_CASE("combinatorial facets match the hull on every subgraph of K_{2,3}") {
  int graphs = 0;
  for (const auto& g : oracle::all_subgraphs(oracle::complete(2, 3))) {
    if (!oracle::connected_spanning(g)) continue;
    ++graphs;
    REQUIRE(sorted_facet_graphs(g) == sorted_hull_facets(g));
  }
  CHECK(graphs > 10);
}

TEST_CASE("faces are the refinements among types") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 8; ++k) {
    const auto g = random_connected_spanning(2 + k % 2, 3, rng);
    for (const auto& h : oracle::all_subgraphs(g)) {
      if (h.edge_count() == 0) continue;
      const bool face = is_face_of_geometric(h, g);
      REQUIRE(face == face_by_facets(h, g));
      if (h.is_type()) CHECK(face == is_refinement_of(h, g));
    }
  }
  const auto g = oracle::complete(2, 2);
  CHECK(is_face_of_geometric(g, g));
  CHECK(is_face_of_geometric(rows(2, {{1}, {}}), g));
}

TEST_CASE("regular subdivisions of the square") {
  const auto g = oracle::complete(2, 2);
  // edge order (1,1) (1,2) (2,1) (2,2)
  const auto s = regular_subdivision(g, heights(g, {0, 1, 1, 0}));
  CHECK(s.cells() == std::vector<BipartiteType>{rows(2, {{1}, {1, 2}}), rows(2, {{1, 2}, {2}})});
  CHECK(regular_subdivision(g, HeightFunction::zero(g)).cells() == std::vector<BipartiteType>{g});
  const auto subs = sample_subdivisions(g, 100, 0);
  CHECK(subs.size() == 3);
  CHECK(std::count_if(subs.begin(), subs.end(), [](const Subdivision& x) { return x.cells().size() == 1; }) == 1);
  CHECK(std::count_if(subs.begin(), subs.end(), [](const Subdivision& x) { return is_triangulation(x); }) == 2);
}

TEST_CASE("prism has six regular triangulations") {
  const auto g = oracle::complete(2, 3);
  const auto subs = sample_subdivisions(g, 500, 3);
  CHECK(std::count_if(subs.begin(), subs.end(), [](const Subdivision& x) { return is_triangulation(x); }) == 6);
  for (const auto& s : subs) CHECK(check_subdivision(s).valid);
}

TEST_CASE("dual walk agrees with the lower hull") {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 60; ++k) {
    const int n = 2 + k % 2, d = 2 + (k / 2) % 3;
    const auto g = random_connected_spanning(n, d, rng);
    const auto h = random_heights(g, 1u << (1 + k % 4), rng);
    REQUIRE(regular_subdivision(g, h) == regular_subdivision_dual(g, h));
  }
}

TEST_CASE("height functions") {
  const auto g = oracle::complete(2, 2);
  CHECK_THROWS_AS(heights(g, {0, 1}), PreconditionError);
  const std::vector<Edge> edges{{2, 2}, {1, 1}, {1, 2}, {2, 1}};
  const HeightFunction h(g, edges, {Rational(4), Rational(1), Rational(2), Rational(3)});
  CHECK(h.at({2, 2}) == 4);
  CHECK(h.values().front() == 1);
  CHECK_THROWS_AS(HeightFunction(g, {{1, 1}, {1, 1}, {1, 2}, {2, 1}}, std::vector<Rational>(4)), PreconditionError);
}

TEST_CASE("Minkowski cells") {
  const auto cell = rows(3, {{1, 2}, {2, 3}});
  const auto v = minkowski_vertices(cell);
  std::vector<std::vector<int>> got;
  for (const auto& p : v) got.push_back({static_cast<int>(p(0)), static_cast<int>(p(1)), static_cast<int>(p(2))});
  CHECK(got == std::vector<std::vector<int>>{{0, 1, 1}, {0, 2, 0}, {1, 0, 1}, {1, 1, 0}});
  CHECK(cayley_slice_vertices(cell) == v);

  const auto point = cayley_slice_vertices(rows(3, {{2}, {3}}));
  REQUIRE(point.size() == 1);
  CHECK(point[0](0) == 0);
  CHECK(point[0](1) == 1);
  CHECK(point[0](2) == 1);

  CHECK_FALSE(has_proper_minkowski_subcell(cell));
  CHECK(has_proper_minkowski_subcell(oracle::complete(2, 2)));
  CHECK(permutohedron_volume(oracle::complete(2, 2)) == 2);
}

TEST_CASE("fine mixed cells are exactly the spanning trees") {
  for (const auto& g : oracle::all_subgraphs(oracle::complete(2, 3))) {
    if (!oracle::connected_spanning(g)) continue;
    CHECK(has_proper_minkowski_subcell(g) == !is_spanning_tree(g));
  }
}
