#include "gtom/subdivision.hpp"

#include <algorithm>
#include <map>

#include "gtom/geometry.hpp"
#include "gtom/polytope.hpp"

namespace gtom {

Subdivision::Subdivision(BipartiteType ambient, std::vector<BipartiteType> cells)
    : ambient_(std::move(ambient)), cells_(std::move(cells)) {
  if (!is_connected(ambient_)) throw PreconditionError("subdivision ambient graph must be connected and spanning");
  if (cells_.empty()) throw PreconditionError("subdivision needs at least one cell");
  for (const auto& c : cells_) {
    require_same_shape(c, ambient_);
    if (!is_subgraph(c, ambient_)) throw PreconditionError("cell " + to_string(c) + " is not inside the ambient graph");
    if (!is_connected(c)) throw PreconditionError("cell " + to_string(c) + " is not connected and spanning");
  }
  std::sort(cells_.begin(), cells_.end());
  if (std::adjacent_find(cells_.begin(), cells_.end()) != cells_.end()) {
    throw PreconditionError("subdivision has a repeated cell");
  }
}

namespace {

bool inside_some(const BipartiteType& h, const std::vector<FacetSubgraph>& facets) {
  return std::any_of(facets.begin(), facets.end(), [&](const FacetSubgraph& f) { return is_subgraph(h, f.graph); });
}

bool vector_less(const RationalVector& a, const RationalVector& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

std::vector<RationalVector> hull_vertices(const std::vector<RationalVector>& candidates, Eigen::Index dim) {
  const RationalMatrix pts = unique_columns(candidates, dim);
  const ConvexHull<Rational> hull(pts);
  std::vector<RationalVector> out;
  for (int p : hull.vertices()) out.emplace_back(pts.col(p));
  std::sort(out.begin(), out.end(), vector_less);
  return out;
}

RationalMatrix as_matrix(const std::vector<RationalVector>& cols, Eigen::Index rows) {
  RationalMatrix m(rows, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) m.col(static_cast<Eigen::Index>(c)) = cols[c];
  return m;
}

// Choice points sum_i e_{j_i}, one right vertex per row.
std::vector<RationalVector> choice_points(const BipartiteType& g) {
  std::vector<RationalVector> out;
  std::vector<int> pick(static_cast<std::size_t>(g.n()));
  auto rec = [&](auto&& self, int i) -> void {
    if (i > g.n()) {
      RationalVector p = RationalVector::Zero(g.d());
      for (int j : pick) p(j - 1) += 1;
      out.push_back(std::move(p));
      return;
    }
    for (int j : elements(g.row(i))) {
      pick[static_cast<std::size_t>(i - 1)] = j;
      self(self, i + 1);
    }
  };
  rec(rec, 1);
  return out;
}

}  // namespace

bool on_ambient_boundary(const BipartiteType& ambient, const BipartiteType& h) {
  return inside_some(h, facets_graphtheoretic(ambient));
}

SubdivisionCheck check_subdivision(const Subdivision& s) {
  SubdivisionCheck out;
  const auto& cells = s.cells();
  for (std::size_t a = 0; a < cells.size(); ++a) {
    for (std::size_t b = a + 1; b < cells.size(); ++b) {
      if (!is_compatible(cells[a], cells[b])) out.incompatible_pairs.emplace_back(cells[a], cells[b]);
    }
  }
  const auto boundary = facets_graphtheoretic(s.ambient());
  for (std::size_t a = 0; a < cells.size(); ++a) {
    for (const auto& f : facets_graphtheoretic(cells[a])) {
      if (inside_some(f.graph, boundary)) continue;
      bool shared = false;
      for (std::size_t b = 0; b < cells.size() && !shared; ++b) shared = b != a && is_subgraph(f.graph, cells[b]);
      if (!shared) out.unshared_facets.push_back({cells[a], f.graph, f.split});
    }
  }
  out.valid = out.incompatible_pairs.empty() && out.unshared_facets.empty();
  return out;
}

std::vector<FacetPairing> internal_facet_pairing(const Subdivision& s) {
  const auto boundary = facets_graphtheoretic(s.ambient());
  std::map<BipartiteType, FacetPairing> found;
  for (const auto& cell : s.cells()) {
    for (const auto& f : facets_graphtheoretic(cell)) {
      if (inside_some(f.graph, boundary) || found.count(f.graph) != 0) continue;
      std::vector<const BipartiteType*> flank;
      for (const auto& other : s.cells()) {
        if (is_subgraph(f.graph, other)) flank.push_back(&other);
      }
      if (flank.size() != 2) {
        throw Error("internal facet " + to_string(f.graph) + " lies in " + std::to_string(flank.size()) + " cells");
      }
      const CrossEdges first = cross_edges(*flank[0], f.split);
      const CrossEdges second = cross_edges(*flank[1], f.split);
      if (first.left1_right2 == first.left2_right1 || second.left1_right2 == second.left2_right1 ||
          first.left1_right2 == second.left1_right2) {
        throw Error("cells around internal facet " + to_string(f.graph) + " do not lie on opposite sides");
      }
      const bool first_left1 = first.left1_right2;
      found.emplace(f.graph, FacetPairing{f.graph, f.split, first_left1 ? *flank[0] : *flank[1],
                                          first_left1 ? *flank[1] : *flank[0]});
    }
  }
  std::vector<FacetPairing> out;
  for (auto& [key, p] : found) out.push_back(std::move(p));
  return out;
}

bool is_triangulation(const Subdivision& s) {
  return std::all_of(s.cells().begin(), s.cells().end(), [](const BipartiteType& c) { return is_spanning_tree(c); });
}

std::vector<BipartiteType> faces_of_subdivision(const Subdivision& s) {
  std::vector<BipartiteType> out;
  for (const auto& c : s.cells()) {
    auto r = all_refinements(c);
    out.insert(out.end(), r.begin(), r.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TypeOracle face_oracle(const Subdivision& s) {
  auto cells = s.cells();
  return TypeOracle(s.ambient(), [cells = std::move(cells)](const BipartiteType& t) {
    return std::any_of(cells.begin(), cells.end(), [&](const BipartiteType& c) { return is_refinement_of(t, c); });
  });
}

std::vector<RationalVector> minkowski_vertices(const BipartiteType& cell) {
  require_type(cell, "minkowski_vertices");
  return hull_vertices(choice_points(cell), cell.d());
}

std::vector<RationalVector> cayley_slice_vertices(const BipartiteType& cell) {
  require_type(cell, "cayley_slice_vertices");
  const int n = cell.n();
  const int d = cell.d();
  const auto edges = edge_list(cell);
  const RationalMatrix q = q_vertices(cell);
  RationalVector target(n + 1);
  for (int i = 0; i < n; ++i) target(i) = Rational(1, n);
  target(n) = 1;
  // A vertex of the slice lies in the relative interior of a face meeting the
  // slice in a point, so it is a convex combination of at most n points of Q.
  std::vector<RationalVector> candidates;
  const std::size_t m = edges.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    if (std::popcount(mask) > n) continue;
    std::vector<int> members;
    for (std::size_t e = 0; e < m; ++e) {
      if ((mask >> e) & 1u) members.push_back(static_cast<int>(e));
    }
    RationalMatrix sys(n + 1, static_cast<Eigen::Index>(members.size()));
    for (std::size_t c = 0; c < members.size(); ++c) {
      sys.col(static_cast<Eigen::Index>(c)).head(n) = q.col(members[c]).head(n);
      sys(n, static_cast<Eigen::Index>(c)) = 1;
    }
    const auto lambda = linalg::solve_unique(sys, target);
    if (!lambda || (lambda->array() < Rational(0)).any()) continue;
    RationalVector p = RationalVector::Zero(d);
    for (std::size_t c = 0; c < members.size(); ++c) {
      p += (*lambda)(static_cast<Eigen::Index>(c)) * q.col(members[c]).tail(d);
    }
    candidates.push_back(p * Rational(n));
  }
  if (candidates.empty()) throw Error("slice of the root polytope is empty");
  return hull_vertices(candidates, d);
}

std::vector<MixedCell> cayley_to_mixed(const Subdivision& s) {
  std::vector<MixedCell> out;
  for (const auto& c : s.cells()) {
    auto sliced = cayley_slice_vertices(c);
    if (sliced != minkowski_vertices(c)) throw Error("Cayley slice disagrees with the Minkowski sum for " + to_string(c));
    out.push_back({c.rows(), std::move(sliced)});
  }
  return out;
}

bool has_proper_minkowski_subcell(const BipartiteType& cell) {
  require_type(cell, "has_proper_minkowski_subcell");
  const auto edges = edge_list(cell);
  const std::size_t m = edges.size();
  if (m >= 64) throw PreconditionError("has_proper_minkowski_subcell limited to 63 edges");
  const std::uint64_t all = (std::uint64_t{1} << m) - 1;
  for (std::uint64_t mask = 1; mask < all; ++mask) {
    const BipartiteType h = edges_to_graph(cell, mask);
    if (!h.is_type()) continue;
    const auto pts = choice_points(h);
    RationalMatrix diffs(cell.d(), static_cast<Eigen::Index>(pts.size()));
    for (std::size_t p = 0; p < pts.size(); ++p) diffs.col(static_cast<Eigen::Index>(p)) = pts[p] - pts[0];
    if (linalg::rank(diffs) == cell.d() - 1) return true;
  }
  return false;
}

Rational permutohedron_volume(const BipartiteType& g) {
  const auto verts = minkowski_vertices(g);
  const RationalMatrix pts = as_matrix(verts, g.d());
  return volume<Rational>(RationalMatrix(pts.topRows(g.d() - 1)));
}

CoveringCheck covering_volume_check(const Subdivision& s) {
  CoveringCheck out;
  out.total = permutohedron_volume(s.ambient());
  out.cells = 0;
  for (const auto& c : s.cells()) out.cells += permutohedron_volume(c);
  out.holds = out.total == out.cells;
  return out;
}

Gtom subdiv_to_gtom(const Subdivision& s) {
  const SubdivisionCheck check = check_subdivision(s);
  if (!check.valid) throw PreconditionError("subdiv_to_gtom needs a valid subdivision");
  return Gtom(s.ambient(), faces_of_subdivision(s));
}

Subdivision gtom_to_subdiv(const Gtom& m) {
  std::vector<BipartiteType> cells;
  for (const auto& t : m.types()) {
    if (is_connected(t)) cells.push_back(t);
  }
  if (cells.empty()) throw PreconditionError("collection has no connected spanning type");
  Subdivision s(m.ambient(), std::move(cells));
  if (!check_subdivision(s).valid) throw Error("connected spanning types do not form a subdivision");
  return s;
}

}  // namespace gtom
