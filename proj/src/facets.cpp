#include "gtom/facets.hpp"

#include <algorithm>

namespace gtom {

CrossEdges cross_edges(const BipartiteType& g, const Split& s) {
  CrossEdges out;
  for (int i = 1; i <= g.n(); ++i) {
    if (contains(s.left1, i) && (g.row(i) & s.right2) != 0) out.left1_right2 = true;
    if (contains(s.left2, i) && (g.row(i) & s.right1) != 0) out.left2_right1 = true;
  }
  return out;
}

namespace {

// Whether positions × right induce a connected subgraph of g (a lone
// position or a lone right vertex counts as connected).
bool part_connected(const BipartiteType& g, PositionSet left, RightSet right) {
  if (left == 0) return set_size(right) == 1;
  PositionSet reached = bit(lowest(left));
  RightSet touched = g.row(lowest(left)) & right;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int i : elements(left & ~reached)) {
      if ((g.row(i) & touched) == 0) continue;
      reached |= bit(i);
      touched |= g.row(i) & right;
      grew = true;
    }
  }
  return reached == left && touched == right;
}

// All splits whose within-part subgraph has exactly the two parts as components.
template <class Keep>
std::vector<FacetSubgraph> two_component_splits(const BipartiteType& g, Keep&& keep) {
  if (!is_connected(g)) throw PreconditionError("facet enumeration needs a connected spanning graph");
  const PositionSet all_left = full_set(g.n());
  const RightSet all_right = full_set(g.d());
  std::vector<FacetSubgraph> out;
  // Position 1 is pinned to the first part so each unordered split appears once.
  for (PositionSet rest = 0; rest <= (all_left >> 1); ++rest) {
    const PositionSet left1 = 1u | (rest << 1);
    for (RightSet right1 = 0; right1 <= all_right; ++right1) {
      const Split s{left1, right1, all_left & ~left1, all_right & ~right1};
      if (s.left2 == 0 && s.right2 == 0) continue;
      if (!part_connected(g, s.left1, s.right1) || !part_connected(g, s.left2, s.right2)) continue;
      if (!keep(cross_edges(g, s))) continue;
      std::vector<RightSet> rows(g.rows());
      for (int i = 1; i <= g.n(); ++i) rows[static_cast<std::size_t>(i - 1)] &= contains(left1, i) ? s.right1 : s.right2;
      out.push_back({BipartiteType(g.n(), g.d(), std::move(rows)), s});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.graph < b.graph; });
  return out;
}

}  // namespace

std::vector<FacetSubgraph> facets_graphtheoretic(const BipartiteType& g) {
  return two_component_splits(g, [](CrossEdges c) { return c.left1_right2 != c.left2_right1; });
}

std::vector<FacetSubgraph> interior_splits(const BipartiteType& g) {
  return two_component_splits(g, [](CrossEdges c) { return c.left1_right2 && c.left2_right1; });
}

}  // namespace gtom
