#pragma once

#include <string>
#include <vector>

#include "gtom/facets.hpp"
#include "gtom/gtom.hpp"
#include "gtom/rational.hpp"
#include "gtom/types.hpp"

namespace gtom {

/// A polyhedral subdivision of the root polytope Q_G encoded by its cells,
/// each a connected spanning subgraph of the ambient graph.
class Subdivision {
 public:
  /// Sorts and checks the structural invariants (nonempty cell list, cells
  /// distinct, connected, spanning, inside the ambient graph).
  Subdivision(BipartiteType ambient, std::vector<BipartiteType> cells);

  const BipartiteType& ambient() const { return ambient_; }
  const std::vector<BipartiteType>& cells() const { return cells_; }

  friend bool operator==(const Subdivision&, const Subdivision&) = default;
  friend std::strong_ordering operator<=>(const Subdivision&, const Subdivision&) = default;

 private:
  BipartiteType ambient_;
  std::vector<BipartiteType> cells_;
};

struct UnsharedFacet {
  BipartiteType cell;
  BipartiteType facet;
  Split split;
};

struct SubdivisionCheck {
  bool valid = true;
  std::vector<std::pair<BipartiteType, BipartiteType>> incompatible_pairs;
  std::vector<UnsharedFacet> unshared_facets;
};

/// Compatibility of all cell pairs plus the facet-sharing condition.
SubdivisionCheck check_subdivision(const Subdivision& s);

/// Whether the facet subgraph h of some cell lies in a facet of the ambient
/// root polytope (edge containment in a graph-theoretic ambient facet).
bool on_ambient_boundary(const BipartiteType& ambient, const BipartiteType& h);

struct FacetPairing {
  BipartiteType facet;
  Split split;
  BipartiteType joins_left1_right2;  // cell with an edge between I1 and J̄2
  BipartiteType joins_left2_right1;  // cell with an edge between I2 and J̄1
};

/// Every internal facet with its two incident cells. Throws Error if some
/// internal facet is not flanked by exactly two cells with opposite
/// connection patterns.
std::vector<FacetPairing> internal_facet_pairing(const Subdivision& s);

bool is_triangulation(const Subdivision& s);

/// Refinement closure of the cells: the faces of the mixed subdivision.
std::vector<BipartiteType> faces_of_subdivision(const Subdivision& s);

/// Membership oracle for faces_of_subdivision without materializing it.
TypeOracle face_oracle(const Subdivision& s);

struct MixedCell {
  std::vector<RightSet> summands;        // summand i is the simplex face on row i
  std::vector<RationalVector> vertices;  // in R^d, sorted lexicographically
};

/// Minkowski cells of the mixed subdivision of P_G. Vertices come from the
/// slice of each root-polytope cell at x = (1/n)·1, dilated by n, and are
/// cross-checked against the direct Minkowski-sum vertices.
std::vector<MixedCell> cayley_to_mixed(const Subdivision& s);

/// Vertices of the Minkowski sum of simplex faces, computed directly.
std::vector<RationalVector> minkowski_vertices(const BipartiteType& cell);
/// Vertices of (n · (Q_cell ∩ {x = 1/n·1})) projected to the right coordinates.
std::vector<RationalVector> cayley_slice_vertices(const BipartiteType& cell);

/// Whether the Minkowski cell admits a proper full-dimensional Minkowski
/// sub-cell, i.e. whether it can be refined.
bool has_proper_minkowski_subcell(const BipartiteType& cell);

/// Euclidean (d-1)-volume of P_G in the chart dropping the last coordinate.
Rational permutohedron_volume(const BipartiteType& g);

struct CoveringCheck {
  bool holds = false;
  Rational total;
  Rational cells;
};
/// Sum of the mixed-cell volumes against the volume of P_G.
CoveringCheck covering_volume_check(const Subdivision& s);

Gtom subdiv_to_gtom(const Subdivision& s);
Subdivision gtom_to_subdiv(const Gtom& m);

}  // namespace gtom
