#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "gtom/types.hpp"
#include "oracles.hpp"

using namespace gtom;
using oracle::rows;

namespace {

const BipartiteType kExampleG =
    rows(9, {{2, 9}, {1, 2, 3, 9}, {1, 2, 8}, {1, 2, 4, 6, 8}, {3, 4, 7}, {2, 4, 5}, {6, 7}, {2, 3, 5, 7}, {4, 5, 9}});
const BipartiteType kExampleA =
    rows(9, {{2, 9}, {1, 2}, {1, 8}, {2, 4, 6}, {3, 4}, {2, 4}, {6, 7}, {5, 7}, {5}});

}  // namespace

TEST_CASE("construction rejects out of range rows") {
  CHECK_THROWS_AS(BipartiteType(2, 2, {1, 4}), PreconditionError);
  CHECK_THROWS_AS(BipartiteType::from_lists(2, {{3}}), PreconditionError);
  CHECK_THROWS_AS(is_compatible(rows(2, {{1}}), rows(2, {{1}, {2}})), DimensionMismatch);
  CHECK_FALSE(rows(2, {{1}, {}}).is_type());
  CHECK(rows(2, {{1}, {2}}).is_type());
  CHECK(to_string(rows(3, {{1, 2}, {3}})) == "(1 2 | 3)");
}

TEST_CASE("refine on the worked example graph") {
  const int order[] = {9, 1, 8, 2, 3, 4, 6, 7, 5};
  const OrderedPartition p(9, {make_set(std::vector<int>{9}), make_set(std::vector<int>{1, 8}),
                               make_set(std::vector<int>{2, 3, 4}), make_set(std::vector<int>{6, 7}),
                               make_set(std::vector<int>{5})});
  const BipartiteType expected = rows(9, {{9}, {9}, {1}, {1}, {3}, {2}, {6}, {2}, {9}});
  // the bars only group the permutation; the blocks alone keep ties
  CHECK(refine_by_order(kExampleG, order) == expected);
  CHECK(refine(kExampleG, p) == rows(9, {{9}, {9}, {1, 8}, {1, 8}, {3, 4}, {2, 4}, {6, 7}, {2, 3}, {9}}));
  CHECK(is_refinement_of(expected, refine(kExampleG, p)));
  const auto totals = total_refinements(kExampleG);
  CHECK(std::find(totals.begin(), totals.end(), expected) != totals.end());
  CHECK(is_refinement_of(expected, kExampleG));
}

TEST_CASE("refine small cases") {
  const auto k22 = oracle::complete(2, 2);
  CHECK(refine(k22, OrderedPartition(2, {1, 2})) == rows(2, {{1}, {1}}));
  CHECK(refine(kExampleA, OrderedPartition(9, {full_set(9)})) == kExampleA);
  CHECK_THROWS_AS(OrderedPartition(2, {1, 1, 2}), PreconditionError);
  CHECK_THROWS_AS(OrderedPartition(3, {1, 2}), PreconditionError);

  const auto t22 = total_refinements(k22);
  CHECK(t22 == std::vector<BipartiteType>{rows(2, {{1}, {1}}), rows(2, {{2}, {2}})});
  CHECK(total_refinements(rows(2, {{1}, {2}})) == std::vector<BipartiteType>{rows(2, {{1}, {2}})});
}

TEST_CASE("refinement closure matches exhaustive partitions") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4), d = 1 + static_cast<int>(rng() % 4);
    const BipartiteType a = oracle::random_type(n, d, rng);
    const auto expected = oracle::refinements(a);
    const auto got = all_refinements(a);
    REQUIRE(std::set<BipartiteType>(got.begin(), got.end()) == expected);
    CHECK(std::is_sorted(got.begin(), got.end()));
    const BipartiteType other = oracle::random_type(n, d, rng);
    CHECK(is_refinement_of(other, a) == (expected.count(other) != 0));
    for (const auto& t : got) {
      CHECK(is_subgraph(t, a));
      CHECK(t.is_type());
    }
  }
}

TEST_CASE("compatibility examples") {
  CHECK(is_compatible(kExampleA, kExampleA));
  CHECK_FALSE(is_compatible(rows(2, {{1}, {2}}), rows(2, {{2}, {1}})));
  const auto a = rows(2, {{1, 2}, {1}});
  const auto b = rows(2, {{1}, {1, 2}});
  CHECK_FALSE(is_compatible(a, b));
  const auto walk = incompatibility_witness(a, b);
  REQUIRE(walk.size() >= 5);
  CHECK(walk.front() == walk.back());
  const auto u = union_type(a, b);
  for (std::size_t k = 0; k + 1 < walk.size(); ++k) {
    const int x = walk[k], y = walk[k + 1];
    REQUIRE((x > 0) != (y > 0));
    const bool edge = x > 0 ? u.has_edge(x, -y) : u.has_edge(y, -x);
    CHECK(edge);
  }
  CHECK(incompatibility_witness(a, a).empty());
}

TEST_CASE("compatibility agrees with walk search exhaustively for n, d <= 2 and randomly beyond") {
  for (int n = 1; n <= 2; ++n) {
    for (int d = 1; d <= 3; ++d) {
      const auto types = oracle::all_types(n, d);
      for (const auto& a : types)
        for (const auto& b : types) REQUIRE(is_compatible(a, b) == oracle::compatible(a, b));
    }
  }
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4), d = 1 + static_cast<int>(rng() % 4);
    const auto a = oracle::random_type(n, d, rng), b = oracle::random_type(n, d, rng);
    REQUIRE(is_compatible(a, b) == oracle::compatible(a, b));
    CHECK(is_compatible(a, b) == is_compatible(b, a));
  }
}

TEST_CASE("agreement") {
  const auto b = rows(9, {{9}, {9}, {1, 8}, {1}, {3, 4}, {2, 4}, {6, 7}, {2, 3}, {9}});
  CHECK_FALSE(agree_on(kExampleA, b, make_set(std::vector<int>{2, 3, 5, 7}), 8));
  CHECK(agree_on(kExampleA, kExampleA, full_set(9), 3));
  CHECK(agree_on(kExampleA, b, make_set(std::vector<int>{1}), 9));  // row 9 misses 1
  CHECK(agreement_lemma_check(kExampleA, kExampleA).empty());
  CHECK(agreement_lemma_check(rows(2, {{1}}), rows(2, {{2}})).empty());
}

TEST_CASE("agreement lemma holds for compatible pairs") {
  std::mt19937_64 rng(8);
  int compatible = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3), d = 2 + static_cast<int>(rng() % 3);
    const auto a = oracle::random_type(n, d, rng);
    auto r = all_refinements(a);
    const auto b = r[rng() % r.size()];
    if (!is_compatible(a, b)) continue;
    ++compatible;
    CHECK(agreement_lemma_check(a, b).empty());
  }
  CHECK(compatible > 100);
}

TEST_CASE("components") {
  const auto c = components(kExampleA);
  CHECK(c.components.size() == 1);
  CHECK(c.isolated_right == 0);
  const auto two = components(rows(2, {{1}, {2}}));
  REQUIRE(two.components.size() == 2);
  CHECK(two.components[0] == Component{1, 1});
  CHECK(two.components[1] == Component{2, 2});

  // positions 1, 2, 9 and right vertex 9 removed
  const auto sub = restrict(kExampleA, full_set(9) & ~make_set(std::vector<int>{1, 2, 9}), full_set(8));
  const auto parts = components(sub);
  std::size_t nonempty = 0;
  bool found = false;
  for (const auto& comp : parts.components) {
    if (comp.right == 0) continue;
    ++nonempty;
    found = found || ((comp.left & bit(3)) != 0 && (comp.right & make_set(std::vector<int>{1, 8})) == make_set(std::vector<int>{1, 8}));
  }
  CHECK(nonempty == 2);
  CHECK(found);
}

TEST_CASE("connectivity predicates agree with BFS") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4), d = 1 + static_cast<int>(rng() % 4);
    const auto a = oracle::random_type(n, d, rng);
    CHECK(is_connected(a) == oracle::connected_spanning(a));
    CHECK(is_spanning_tree(a) == (oracle::connected_spanning(a) && a.edge_count() == n + d - 1));
  }
}
