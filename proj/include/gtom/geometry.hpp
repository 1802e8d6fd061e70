#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "gtom/polytope.hpp"
#include "gtom/rational.hpp"
#include "gtom/subdivision.hpp"
#include "gtom/types.hpp"

namespace gtom {

using Edge = std::pair<int, int>;  // (position i, right vertex j), 1-based

/// Edges of g in row-major order; this is the canonical vertex order of Q_g.
std::vector<Edge> edge_list(const BipartiteType& g);
/// Subgraph of g spanned by the selected edge indices.
BipartiteType edges_to_graph(const BipartiteType& g, std::uint64_t edge_mask);

/// Vertices e_i + e_j̄ of the root polytope as columns in R^{n+d}, in
/// edge_list order.
RationalMatrix q_vertices(const BipartiteType& g);

/// Affine dimension of Q_g; n+d-2 whenever g is connected and spanning.
int dim_q(const BipartiteType& g);

struct SupportingFacet {
  RationalVector normal;  // normal . x >= offset on Q_G, in R^{n+d}
  Rational offset;
  BipartiteType vertex_set;  // edges of G whose vertices lie on the facet
};

/// Facets of Q_g by exact brute-force hyperplane enumeration.
std::vector<SupportingFacet> facets_geometric(const BipartiteType& g);

/// True iff conv(q_vertices(h)) is a face of conv(q_vertices(g)).
bool is_face_of_geometric(const BipartiteType& h, const BipartiteType& g);

class HeightFunction {
 public:
  /// Values in edge_list(g) order.
  HeightFunction(const BipartiteType& g, std::vector<Rational> values);
  /// Values keyed by explicit edges; the edge set must equal E(g).
  HeightFunction(const BipartiteType& g, const std::vector<Edge>& edges, std::vector<Rational> values);

  static HeightFunction zero(const BipartiteType& g);

  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& at(const Edge& e) const;

 private:
  std::vector<Edge> edges_;
  std::vector<Rational> values_;
};

/// Regular subdivisions of Q_g from lower hulls, with the affinely
/// independent vertex subsets and their interpolation maps precomputed.
class LiftingSystem {
 public:
  explicit LiftingSystem(const BipartiteType& g);

  const BipartiteType& graph() const { return graph_; }
  Subdivision subdivide(const HeightFunction& h) const;

 private:
  struct Simplex {
    std::uint64_t mask = 0;
    std::vector<int> members;
    RationalMatrix interpolation;  // residual = h - interpolation * h[members]
  };

  BipartiteType graph_;
  std::vector<Simplex> simplices_;
};

/// Cells are the maximal vertex sets on non-vertical lower supporting
/// hyperplanes of the lifted configuration {(q_e, h(e))}.
Subdivision regular_subdivision(const BipartiteType& g, const HeightFunction& h);

/// The same subdivision found by walking the dual potentials: cells are the
/// tight graphs of vertices of {(u,v) : u_i + v_j <= h(i,j)}. Scales to
/// graphs where the brute-force lower hull is out of reach.
Subdivision regular_subdivision_dual(const BipartiteType& g, const HeightFunction& h);

/// Uniform integer heights in [0, range] drawn from rng.
HeightFunction random_heights(const BipartiteType& g, std::uint64_t range, std::mt19937_64& rng);

/// Deduplicated regular subdivisions from `trials` seeded height functions;
/// the zero height function is always the first trial.
std::vector<Subdivision> sample_subdivisions(const BipartiteType& g, int trials, std::uint64_t seed);

/// Random connected spanning subgraph of K_{n,d} (rejection sampling).
BipartiteType random_connected_spanning(int n, int d, std::mt19937_64& rng);

}  // namespace gtom
