#pragma once

#include <vector>

#include "gtom/types.hpp"

namespace gtom {

/// Two-part vertex partition I1 ⊔ J̄1, I2 ⊔ J̄2; position 1 is always in I1.
struct Split {
  PositionSet left1 = 0;
  RightSet right1 = 0;
  PositionSet left2 = 0;
  RightSet right2 = 0;
  friend bool operator==(const Split&, const Split&) = default;
};

struct FacetSubgraph {
  BipartiteType graph;  // may have empty rows
  Split split;
};

/// Edges of g running between the parts: I1 to J̄2 and I2 to J̄1.
struct CrossEdges {
  bool left1_right2 = false;
  bool left2_right1 = false;
};
CrossEdges cross_edges(const BipartiteType& g, const Split& s);

/// Maximal disconnected subgraphs of g with exactly two components whose
/// complement in g uses a single kind of cross edge; these give the facets
/// of the root polytope of g. Requires g connected and spanning.
std::vector<FacetSubgraph> facets_graphtheoretic(const BipartiteType& g);

/// The remaining two-component maximal disconnected subgraphs (both cross
/// edge kinds present), whose root polytopes cut through the interior.
std::vector<FacetSubgraph> interior_splits(const BipartiteType& g);

}  // namespace gtom
