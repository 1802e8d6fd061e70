#include "gtom/geometry.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <set>

#include "gtom/facets.hpp"

namespace gtom {

std::vector<Edge> edge_list(const BipartiteType& g) {
  std::vector<Edge> out;
  for (int i = 1; i <= g.n(); ++i) {
    for (int j : elements(g.row(i))) out.emplace_back(i, j);
  }
  return out;
}

BipartiteType edges_to_graph(const BipartiteType& g, std::uint64_t edge_mask) {
  std::vector<RightSet> rows(static_cast<std::size_t>(g.n()), 0);
  const auto edges = edge_list(g);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if ((edge_mask >> e) & 1u) rows[static_cast<std::size_t>(edges[e].first - 1)] |= bit(edges[e].second);
  }
  return BipartiteType(g.n(), g.d(), std::move(rows));
}

RationalMatrix q_vertices(const BipartiteType& g) {
  const auto edges = edge_list(g);
  RationalMatrix pts = RationalMatrix::Zero(g.n() + g.d(), static_cast<Eigen::Index>(edges.size()));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto col = static_cast<Eigen::Index>(e);
    pts(edges[e].first - 1, col) = 1;
    pts(g.n() + edges[e].second - 1, col) = 1;
  }
  return pts;
}

int dim_q(const BipartiteType& g) {
  const RationalMatrix pts = q_vertices(g);
  if (pts.cols() <= 1) return 0;
  RationalMatrix diffs(pts.rows(), pts.cols() - 1);
  for (Eigen::Index q = 1; q < pts.cols(); ++q) diffs.col(q - 1) = pts.col(q) - pts.col(0);
  const int dim = static_cast<int>(linalg::rank(diffs));
  if (g.is_type() && is_connected(g) && dim != g.n() + g.d() - 2) {
    throw Error("root polytope of a connected spanning graph has unexpected dimension");
  }
  return dim;
}

std::vector<SupportingFacet> facets_geometric(const BipartiteType& g) {
  if (!is_connected(g)) throw PreconditionError("facets_geometric needs a connected spanning graph");
  const ConvexHull<Rational> hull(q_vertices(g));
  std::vector<SupportingFacet> out;
  for (const auto& f : hull.facets()) {
    std::uint64_t mask = 0;
    for (int p : f.points) mask |= std::uint64_t{1} << p;
    out.push_back({f.normal, f.offset, edges_to_graph(g, mask)});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.vertex_set < b.vertex_set; });
  return out;
}

bool is_face_of_geometric(const BipartiteType& h, const BipartiteType& g) {
  require_same_shape(h, g);
  if (!is_subgraph(h, g)) throw PreconditionError("is_face_of_geometric needs h inside g");
  if (h.edge_count() == 0) return false;
  const auto edges = edge_list(g);
  std::vector<int> subset;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (h.has_edge(edges[e].first, edges[e].second)) subset.push_back(static_cast<int>(e));
  }
  return ConvexHull<Rational>(q_vertices(g)).is_face(subset);
}

HeightFunction::HeightFunction(const BipartiteType& g, std::vector<Rational> values)
    : edges_(edge_list(g)), values_(std::move(values)) {
  if (values_.size() != edges_.size()) throw PreconditionError("height function needs one value per edge");
}

HeightFunction::HeightFunction(const BipartiteType& g, const std::vector<Edge>& edges, std::vector<Rational> values)
    : edges_(edge_list(g)), values_(edges_.size()) {
  if (edges.size() != values.size()) throw PreconditionError("heights: edges and values differ in length");
  std::map<Edge, Rational> by_edge;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!by_edge.emplace(edges[e], values[e]).second) throw PreconditionError("heights: repeated edge");
  }
  if (by_edge.size() != edges_.size()) throw PreconditionError("heights: edge set differs from the ambient graph");
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    auto it = by_edge.find(edges_[e]);
    if (it == by_edge.end()) throw PreconditionError("heights: edge set differs from the ambient graph");
    values_[e] = it->second;
  }
}

HeightFunction HeightFunction::zero(const BipartiteType& g) {
  return HeightFunction(g, std::vector<Rational>(edge_list(g).size(), Rational(0)));
}

const Rational& HeightFunction::at(const Edge& e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) throw PreconditionError("heights: edge not in the domain");
  return values_[static_cast<std::size_t>(it - edges_.begin())];
}

LiftingSystem::LiftingSystem(const BipartiteType& g) : graph_(g) {
  if (!is_connected(g)) throw PreconditionError("regular subdivision needs a connected spanning graph");
  const ConvexHull<Rational> frame(q_vertices(g));
  const RationalMatrix& local = frame.local();
  const int k = frame.dim();
  const int m = frame.size();
  RationalMatrix homogeneous(m, k + 1);
  homogeneous.leftCols(k) = local.transpose();
  homogeneous.col(k).setOnes();
  std::vector<int> pick(static_cast<std::size_t>(k + 1));
  for (int t = 0; t <= k; ++t) pick[static_cast<std::size_t>(t)] = t;
  while (true) {
    RationalMatrix square(k + 1, k + 1);
    for (int r = 0; r <= k; ++r) square.row(r) = homogeneous.row(pick[static_cast<std::size_t>(r)]);
    if (auto inv = linalg::inverse(square)) {
      Simplex s;
      s.members = pick;
      for (int p : pick) s.mask |= std::uint64_t{1} << p;
      s.interpolation = homogeneous * *inv;
      simplices_.push_back(std::move(s));
    }
    int t = k;
    while (t >= 0 && pick[static_cast<std::size_t>(t)] == m - (k + 1) + t) --t;
    if (t < 0) break;
    ++pick[static_cast<std::size_t>(t)];
    for (int u = t + 1; u <= k; ++u) pick[static_cast<std::size_t>(u)] = pick[static_cast<std::size_t>(u - 1)] + 1;
  }
}

Subdivision LiftingSystem::subdivide(const HeightFunction& h) const {
  const auto& values = h.values();
  if (h.edges() != edge_list(graph_)) throw PreconditionError("height function belongs to a different graph");
  const auto m = static_cast<Eigen::Index>(values.size());
  RationalVector heights(m);
  for (Eigen::Index e = 0; e < m; ++e) heights(e) = values[static_cast<std::size_t>(e)];
  std::vector<std::uint64_t> cells;
  for (const Simplex& s : simplices_) {
    if (std::any_of(cells.begin(), cells.end(), [&](std::uint64_t c) { return (s.mask & ~c) == 0; })) continue;
    RationalVector sub(static_cast<Eigen::Index>(s.members.size()));
    for (std::size_t t = 0; t < s.members.size(); ++t) sub(static_cast<Eigen::Index>(t)) = heights(s.members[t]);
    const RationalVector residual = heights - s.interpolation * sub;
    std::uint64_t tight = 0;
    bool lower = true;
    for (Eigen::Index e = 0; e < m && lower; ++e) {
      if (residual(e) < 0) lower = false;
      if (residual(e) == 0) tight |= std::uint64_t{1} << e;
    }
    if (lower) cells.push_back(tight);
  }
  std::vector<BipartiteType> graphs;
  graphs.reserve(cells.size());
  for (std::uint64_t c : cells) graphs.push_back(edges_to_graph(graph_, c));
  return Subdivision(graph_, std::move(graphs));
}

Subdivision regular_subdivision(const BipartiteType& g, const HeightFunction& h) {
  return LiftingSystem(g).subdivide(h);
}

namespace {

struct Potentials {
  std::vector<Rational> u;  // per position
  std::vector<Rational> v;  // per right vertex
};

class DualWalk {
 public:
  DualWalk(const BipartiteType& g, const HeightFunction& h) : g_(g), h_(static_cast<std::size_t>(g.n())) {
    for (int i = 1; i <= g.n(); ++i) {
      h_[static_cast<std::size_t>(i - 1)].resize(static_cast<std::size_t>(g.d()));
      for (int j : elements(g.row(i))) h_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = h.at({i, j});
    }
  }

  Rational slack(const Potentials& p, int i, int j) const {
    return h_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] - p.u[static_cast<std::size_t>(i - 1)] -
           p.v[static_cast<std::size_t>(j - 1)];
  }

  BipartiteType tight(const Potentials& p) const {
    std::vector<RightSet> rows(static_cast<std::size_t>(g_.n()), 0);
    for (int i = 1; i <= g_.n(); ++i) {
      for (int j : elements(g_.row(i))) {
        if (slack(p, i, j) == 0) rows[static_cast<std::size_t>(i - 1)] |= bit(j);
      }
    }
    return BipartiteType(g_.n(), g_.d(), std::move(rows));
  }

  // Smallest slack over G-edges from `left` to `right`, if any.
  std::optional<Rational> min_slack(const Potentials& p, PositionSet left, RightSet right) const {
    std::optional<Rational> best;
    for (int i : elements(left)) {
      for (int j : elements(g_.row(i) & right)) {
        Rational s = slack(p, i, j);
        if (!best || s < *best) best = std::move(s);
      }
    }
    return best;
  }

  static void shift(Potentials& p, PositionSet left, RightSet right, const Rational& t) {
    for (int i : elements(left)) p.u[static_cast<std::size_t>(i - 1)] += t;
    for (int j : elements(right)) p.v[static_cast<std::size_t>(j - 1)] -= t;
  }

  // A vertex of the potential polyhedron: raise potentials until tight edges span.
  Potentials initial() const {
    Potentials p{std::vector<Rational>(static_cast<std::size_t>(g_.n())),
                 std::vector<Rational>(static_cast<std::size_t>(g_.d()), Rational(0))};
    for (int i = 1; i <= g_.n(); ++i) {
      Rational best = h_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(lowest(g_.row(i)) - 1)];
      for (int j : elements(g_.row(i))) best = std::min(best, h_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]);
      p.u[static_cast<std::size_t>(i - 1)] = best;
    }
    const PositionSet all_left = full_set(g_.n());
    const RightSet all_right = full_set(g_.d());
    while (true) {
      const BipartiteType t = tight(p);
      const ComponentDecomposition comps = components(t);
      if (comps.components.size() == 1 && comps.isolated_right == 0) return p;
      Component x = comps.components.front();
      if (comps.components.size() == 1) x = Component{0, bit(lowest(comps.isolated_right))};
      if (auto up = min_slack(p, x.left, all_right & ~x.right)) {
        shift(p, x.left, x.right, *up);
      } else {
        const auto down = min_slack(p, all_left & ~x.left, x.right);
        if (!down) throw Error("dual walk: ambient graph is disconnected");
        shift(p, x.left, x.right, -*down);
      }
    }
  }

  // Potentials of the cell across the given facet, or nullopt on the boundary.
  std::optional<Potentials> cross(const Potentials& p, const BipartiteType& cell, const FacetSubgraph& f) const {
    const Split& s = f.split;
    const CrossEdges inside = cross_edges(cell, s);
    Potentials q = p;
    if (inside.left1_right2) {
      const auto step = min_slack(p, s.left2, s.right1);
      if (!step) return std::nullopt;
      shift(q, s.left1, s.right1, -*step);
    } else {
      const auto step = min_slack(p, s.left1, s.right2);
      if (!step) return std::nullopt;
      shift(q, s.left2, s.right2, -*step);
    }
    return q;
  }

 private:
  const BipartiteType& g_;
  std::vector<std::vector<Rational>> h_;
};

}  // namespace

Subdivision regular_subdivision_dual(const BipartiteType& g, const HeightFunction& h) {
  if (!is_connected(g)) throw PreconditionError("regular subdivision needs a connected spanning graph");
  const DualWalk walk(g, h);
  std::set<BipartiteType> seen;
  std::deque<Potentials> queue{walk.initial()};
  seen.insert(walk.tight(queue.front()));
  while (!queue.empty()) {
    const Potentials p = std::move(queue.front());
    queue.pop_front();
    const BipartiteType cell = walk.tight(p);
    for (const FacetSubgraph& f : facets_graphtheoretic(cell)) {
      auto next = walk.cross(p, cell, f);
      if (!next) continue;
      BipartiteType neighbor = walk.tight(*next);
      if (!is_connected(neighbor)) throw Error("dual walk reached a degenerate vertex");
      if (seen.insert(neighbor).second) queue.push_back(std::move(*next));
    }
  }
  return Subdivision(g, {seen.begin(), seen.end()});
}

HeightFunction random_heights(const BipartiteType& g, std::uint64_t range, std::mt19937_64& rng) {
  std::vector<Rational> values;
  for (std::size_t e = 0, m = edge_list(g).size(); e < m; ++e) {
    values.emplace_back(static_cast<unsigned long>(rng() % (range + 1)));
  }
  return HeightFunction(g, std::move(values));
}

std::vector<Subdivision> sample_subdivisions(const BipartiteType& g, int trials, std::uint64_t seed) {
  if (trials < 1) throw PreconditionError("sample_subdivisions needs at least one trial");
  const LiftingSystem lifting(g);
  std::set<Subdivision> found{lifting.subdivide(HeightFunction::zero(g))};
  std::mt19937_64 rng(seed);
  // Ranges cycle through powers of two so both coarse and fine subdivisions show up.
  const int scales = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(trials))));
  for (int t = 1; t < trials; ++t) {
    const std::uint64_t range = std::uint64_t{1} << (1 + (t - 1) % scales);
    found.insert(lifting.subdivide(random_heights(g, range, rng)));
  }
  return {found.begin(), found.end()};
}

BipartiteType random_connected_spanning(int n, int d, std::mt19937_64& rng) {
  while (true) {
    std::vector<RightSet> rows(static_cast<std::size_t>(n));
    for (RightSet& r : rows) r = static_cast<RightSet>(rng()) & full_set(d);
    BipartiteType g(n, d, std::move(rows));
    if (g.is_type() && is_connected(g)) return g;
  }
}

}  // namespace gtom
