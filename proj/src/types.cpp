#include "gtom/types.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_set>

namespace gtom {

std::vector<int> elements(RightSet s) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(set_size(s)));
  while (s != 0) {
    out.push_back(lowest(s));
    s &= s - 1;
  }
  return out;
}

RightSet make_set(std::span<const int> one_based) {
  RightSet s = 0;
  for (int j : one_based) s |= bit(j);
  return s;
}

std::string set_to_string(RightSet s) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (int j : elements(s)) {
    if (!first) out << ',';
    out << j;
    first = false;
  }
  out << '}';
  return out.str();
}

BipartiteType::BipartiteType(int n, int d, std::vector<RightSet> rows)
    : n_(n), d_(d), rows_(std::move(rows)) {
  if (n < 1 || d < 1 || n > kMaxSide || d > kMaxSide) {
    throw PreconditionError("type dimensions out of range: n=" + std::to_string(n) +
                            " d=" + std::to_string(d));
  }
  if (static_cast<int>(rows_.size()) != n) {
    throw PreconditionError("type has " + std::to_string(rows_.size()) + " rows, expected " +
                            std::to_string(n));
  }
  for (RightSet r : rows_) {
    if ((r & ~full_set(d)) != 0) throw PreconditionError("right vertex outside 1.." + std::to_string(d));
  }
}

BipartiteType BipartiteType::from_lists(int d, const std::vector<std::vector<int>>& rows) {
  std::vector<RightSet> masks;
  masks.reserve(rows.size());
  for (const auto& r : rows) {
    for (int j : r) {
      if (j < 1 || j > d) throw PreconditionError("right vertex " + std::to_string(j) + " outside 1.." + std::to_string(d));
    }
    masks.push_back(make_set(r));
  }
  return BipartiteType(static_cast<int>(rows.size()), d, std::move(masks));
}

bool BipartiteType::is_type() const {
  return std::none_of(rows_.begin(), rows_.end(), [](RightSet r) { return r == 0; });
}

int BipartiteType::edge_count() const {
  int total = 0;
  for (RightSet r : rows_) total += set_size(r);
  return total;
}

RightSet BipartiteType::covered() const {
  RightSet s = 0;
  for (RightSet r : rows_) s |= r;
  return s;
}

std::strong_ordering operator<=>(const BipartiteType& a, const BipartiteType& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  if (auto c = a.d_ <=> b.d_; c != 0) return c;
  return a.rows_ <=> b.rows_;
}

void require_type(const BipartiteType& a, const char* what) {
  if (!a.is_type()) throw PreconditionError(std::string(what) + " has an empty row: " + to_string(a));
}

void require_same_shape(const BipartiteType& a, const BipartiteType& b) {
  if (a.n() != b.n() || a.d() != b.d()) {
    throw DimensionMismatch("dimension mismatch: (" + std::to_string(a.n()) + "," + std::to_string(a.d()) +
                            ") vs (" + std::to_string(b.n()) + "," + std::to_string(b.d()) + ")");
  }
}

std::string to_string(const BipartiteType& a) {
  std::ostringstream out;
  out << '(';
  for (int i = 1; i <= a.n(); ++i) {
    if (i > 1) out << " | ";
    bool first = true;
    for (int j : elements(a.row(i))) {
      if (!first) out << ' ';
      out << j;
      first = false;
    }
  }
  out << ')';
  return out.str();
}

std::size_t TypeHash::operator()(const BipartiteType& a) const noexcept {
  std::size_t h = static_cast<std::size_t>(a.n()) * 1315423911u + static_cast<std::size_t>(a.d());
  for (RightSet r : a.rows()) h = h * 0x9E3779B97F4A7C15ull + r + (h >> 29);
  return h;
}

OrderedPartition::OrderedPartition(int d, std::vector<RightSet> blocks) : d_(d), blocks_(std::move(blocks)) {
  RightSet seen = 0;
  for (RightSet b : blocks_) {
    if (b == 0) throw PreconditionError("ordered partition has an empty block");
    if ((b & seen) != 0) throw PreconditionError("ordered partition blocks overlap");
    seen |= b;
  }
  if (seen != full_set(d)) throw PreconditionError("ordered partition does not cover 1.." + std::to_string(d));
}

OrderedPartition OrderedPartition::from_order(int d, std::span<const int> order) {
  std::vector<RightSet> blocks;
  blocks.reserve(order.size());
  for (int j : order) blocks.push_back(bit(j));
  return OrderedPartition(d, std::move(blocks));
}

OrderedPartition OrderedPartition::coarse(int d, RightSet first) {
  return OrderedPartition(d, {first, full_set(d) & ~first});
}

BipartiteType refine(const BipartiteType& a, const OrderedPartition& p) {
  if (a.d() != p.d()) throw DimensionMismatch("partition and type disagree on d");
  std::vector<RightSet> rows(a.rows());
  for (RightSet& r : rows) {
    for (RightSet block : p.blocks()) {
      if ((r & block) != 0) {
        r &= block;
        break;
      }
    }
  }
  return BipartiteType(a.n(), a.d(), std::move(rows));
}

BipartiteType refine_by_order(const BipartiteType& a, std::span<const int> order) {
  std::vector<RightSet> rows(a.rows());
  for (RightSet& r : rows) {
    for (int j : order) {
      if (contains(r, j)) {
        r = bit(j);
        break;
      }
    }
  }
  return BipartiteType(a.n(), a.d(), std::move(rows));
}

std::vector<BipartiteType> total_refinements(const BipartiteType& g) {
  std::vector<int> order(static_cast<std::size_t>(g.d()));
  std::iota(order.begin(), order.end(), 1);
  std::set<BipartiteType> out;
  do {
    out.insert(refine_by_order(g, order));
  } while (std::next_permutation(order.begin(), order.end()));
  return {out.begin(), out.end()};
}

void for_each_coarse_partition(int d, const std::function<void(const OrderedPartition&)>& fn) {
  const RightSet all = full_set(d);
  for (RightSet first = 1; first < all; ++first) fn(OrderedPartition::coarse(d, first));
}

namespace {

void ordered_partitions_rec(int d, RightSet remaining, std::vector<RightSet>& blocks,
                            const std::function<void(const OrderedPartition&)>& fn) {
  if (remaining == 0) {
    fn(OrderedPartition(d, blocks));
    return;
  }
  // Every nonempty subset of the remaining vertices may come next.
  for (RightSet sub = remaining; sub != 0; sub = (sub - 1) & remaining) {
    blocks.push_back(sub);
    ordered_partitions_rec(d, remaining & ~sub, blocks, fn);
    blocks.pop_back();
  }
}

}  // namespace

void for_each_ordered_partition(int d, const std::function<void(const OrderedPartition&)>& fn) {
  std::vector<RightSet> blocks;
  ordered_partitions_rec(d, full_set(d), blocks, fn);
}

std::vector<BipartiteType> all_refinements(const BipartiteType& a) {
  std::unordered_set<BipartiteType, TypeHash> seen{a};
  std::vector<BipartiteType> frontier{a};
  const RightSet all = full_set(a.d());
  while (!frontier.empty()) {
    BipartiteType t = std::move(frontier.back());
    frontier.pop_back();
    for (RightSet first = 1; first < all; ++first) {
      BipartiteType r = refine(t, OrderedPartition::coarse(a.d(), first));
      if (seen.insert(r).second) frontier.push_back(std::move(r));
    }
  }
  std::vector<BipartiteType> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool is_refinement_of(const BipartiteType& t, const BipartiteType& c) {
  if (t.n() != c.n() || t.d() != c.d()) return false;
  const int d = c.d();
  // Union-find over right vertices: each t-row must sit inside one block.
  std::vector<int> parent(static_cast<std::size_t>(d));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (int i = 1; i <= t.n(); ++i) {
    const RightSet tr = t.row(i);
    if (tr == 0 || (tr & ~c.row(i)) != 0) return false;
    const int root = lowest(tr) - 1;
    for (int j : elements(tr)) parent[static_cast<std::size_t>(find(j - 1))] = find(root);
  }
  // Precedence: the block of t_i strictly before every vertex of c_i \ t_i.
  std::vector<std::vector<int>> succ(static_cast<std::size_t>(d));
  std::vector<int> indeg(static_cast<std::size_t>(d), 0);
  for (int i = 1; i <= t.n(); ++i) {
    const int from = find(lowest(t.row(i)) - 1);
    for (int j : elements(c.row(i) & ~t.row(i))) {
      const int to = find(j - 1);
      if (to == from) return false;
      succ[static_cast<std::size_t>(from)].push_back(to);
      ++indeg[static_cast<std::size_t>(to)];
    }
  }
  std::vector<int> ready;
  int classes = 0;
  for (int v = 0; v < d; ++v) {
    if (find(v) != v) continue;
    ++classes;
    if (indeg[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
  }
  int done = 0;
  while (!ready.empty()) {
    const int v = ready.back();
    ready.pop_back();
    ++done;
    for (int w : succ[static_cast<std::size_t>(v)]) {
      if (--indeg[static_cast<std::size_t>(w)] == 0) ready.push_back(w);
    }
  }
  return done == classes;
}

namespace {

// Vertex ids: positions 0..n-1, right vertex j at n + j - 1.
struct AlternatingDigraph {
  int n;
  int d;
  std::vector<std::vector<int>> succ;
  // Arcs coming from an edge in exactly one of the two graphs.
  std::vector<std::pair<int, int>> strict_arcs;
};

AlternatingDigraph build_alternating_digraph(const BipartiteType& a, const BipartiteType& b) {
  AlternatingDigraph g{a.n(), a.d(), std::vector<std::vector<int>>(static_cast<std::size_t>(a.n() + a.d())), {}};
  for (int i = 1; i <= a.n(); ++i) {
    const int left = i - 1;
    for (int j : elements(a.row(i))) {
      const int right = a.n() + j - 1;
      g.succ[static_cast<std::size_t>(left)].push_back(right);
      if (!b.has_edge(i, j)) g.strict_arcs.emplace_back(left, right);
    }
    for (int j : elements(b.row(i))) {
      const int right = a.n() + j - 1;
      g.succ[static_cast<std::size_t>(right)].push_back(left);
      if (!a.has_edge(i, j)) g.strict_arcs.emplace_back(right, left);
    }
  }
  return g;
}

class Tarjan {
 public:
  explicit Tarjan(const std::vector<std::vector<int>>& succ)
      : succ_(succ), index_(succ.size(), -1), low_(succ.size(), 0), on_stack_(succ.size(), false),
        component_(succ.size(), -1) {
    for (std::size_t v = 0; v < succ.size(); ++v) {
      if (index_[v] == -1) visit(static_cast<int>(v));
    }
  }
  int component(int v) const { return component_[static_cast<std::size_t>(v)]; }

 private:
  void visit(int v) {
    const auto vs = static_cast<std::size_t>(v);
    index_[vs] = low_[vs] = counter_++;
    stack_.push_back(v);
    on_stack_[vs] = true;
    for (int w : succ_[vs]) {
      const auto ws = static_cast<std::size_t>(w);
      if (index_[ws] == -1) {
        visit(w);
        low_[vs] = std::min(low_[vs], low_[ws]);
      } else if (on_stack_[ws]) {
        low_[vs] = std::min(low_[vs], index_[ws]);
      }
    }
    if (low_[vs] == index_[vs]) {
      int w;
      do {
        w = stack_.back();
        stack_.pop_back();
        on_stack_[static_cast<std::size_t>(w)] = false;
        component_[static_cast<std::size_t>(w)] = components_;
      } while (w != v);
      ++components_;
    }
  }

  const std::vector<std::vector<int>>& succ_;
  std::vector<int> index_;
  std::vector<int> low_;
  std::vector<bool> on_stack_;
  std::vector<int> component_;
  std::vector<int> stack_;
  int counter_ = 0;
  int components_ = 0;
};

}  // namespace

bool is_compatible(const BipartiteType& a, const BipartiteType& b) {
  require_same_shape(a, b);
  const AlternatingDigraph g = build_alternating_digraph(a, b);
  if (g.strict_arcs.empty()) return true;
  const Tarjan scc(g.succ);
  return std::none_of(g.strict_arcs.begin(), g.strict_arcs.end(),
                      [&](const auto& arc) { return scc.component(arc.first) == scc.component(arc.second); });
}

std::vector<int> incompatibility_witness(const BipartiteType& a, const BipartiteType& b) {
  require_same_shape(a, b);
  const AlternatingDigraph g = build_alternating_digraph(a, b);
  const Tarjan scc(g.succ);
  for (const auto& [from, to] : g.strict_arcs) {
    if (scc.component(from) != scc.component(to)) continue;
    // Shortest path back from `to` to `from` closes the walk.
    std::vector<int> prev(g.succ.size(), -2);
    std::queue<int> q;
    q.push(to);
    prev[static_cast<std::size_t>(to)] = -1;
    while (!q.empty() && prev[static_cast<std::size_t>(from)] == -2) {
      const int v = q.front();
      q.pop();
      for (int w : g.succ[static_cast<std::size_t>(v)]) {
        if (prev[static_cast<std::size_t>(w)] == -2) {
          prev[static_cast<std::size_t>(w)] = v;
          q.push(w);
        }
      }
    }
    std::vector<int> path;
    for (int v = from; v != -1; v = prev[static_cast<std::size_t>(v)]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    std::vector<int> walk{from};
    walk.insert(walk.end(), path.begin(), path.end());
    for (int& v : walk) v = v < g.n ? v + 1 : -(v - g.n + 1);
    return walk;
  }
  return {};
}

bool agree_on(const BipartiteType& a, const BipartiteType& b, RightSet j_set, int i) {
  require_same_shape(a, b);
  if (i < 1 || i > a.n()) throw PreconditionError("position " + std::to_string(i) + " out of range");
  const RightSet x = a.row(i) & j_set;
  const RightSet y = b.row(i) & j_set;
  return x == y || x == 0 || y == 0;
}

std::vector<AgreementViolation> agreement_lemma_check(const BipartiteType& a, const BipartiteType& b) {
  if (!is_compatible(a, b)) throw PreconditionError("agreement check needs compatible types");
  std::vector<AgreementViolation> out;
  for (const Component& comp : components(intersection(a, b)).components) {
    if (comp.right == 0) continue;
    for (int i = 1; i <= a.n(); ++i) {
      if (!agree_on(a, b, comp.right, i)) {
        out.push_back({comp.right, i, a.row(i) & comp.right, b.row(i) & comp.right});
      }
    }
  }
  return out;
}

ComponentDecomposition components(const BipartiteType& a) {
  const int n = a.n();
  std::vector<bool> seen_left(static_cast<std::size_t>(n), false);
  RightSet seen_right = 0;
  ComponentDecomposition out;
  std::vector<RightSet> column(static_cast<std::size_t>(a.d()), 0);
  for (int i = 1; i <= n; ++i) {
    for (int j : elements(a.row(i))) column[static_cast<std::size_t>(j - 1)] |= bit(i);
  }
  for (int start = 1; start <= n; ++start) {
    if (seen_left[static_cast<std::size_t>(start - 1)]) continue;
    Component comp;
    PositionSet pending = bit(start);
    while (pending != 0) {
      const int i = lowest(pending);
      pending &= pending - 1;
      if (seen_left[static_cast<std::size_t>(i - 1)]) continue;
      seen_left[static_cast<std::size_t>(i - 1)] = true;
      comp.left |= bit(i);
      for (int j : elements(a.row(i) & ~seen_right)) {
        seen_right |= bit(j);
        comp.right |= bit(j);
        pending |= column[static_cast<std::size_t>(j - 1)] & ~comp.left;
      }
    }
    out.components.push_back(comp);
  }
  out.isolated_right = full_set(a.d()) & ~seen_right;
  return out;
}

BipartiteType union_type(const BipartiteType& a, const BipartiteType& b) {
  require_same_shape(a, b);
  std::vector<RightSet> rows(a.rows());
  for (std::size_t k = 0; k < rows.size(); ++k) rows[k] |= b.rows()[k];
  return BipartiteType(a.n(), a.d(), std::move(rows));
}

BipartiteType intersection(const BipartiteType& a, const BipartiteType& b) {
  require_same_shape(a, b);
  std::vector<RightSet> rows(a.rows());
  for (std::size_t k = 0; k < rows.size(); ++k) rows[k] &= b.rows()[k];
  return BipartiteType(a.n(), a.d(), std::move(rows));
}

bool is_subgraph(const BipartiteType& a, const BipartiteType& b) {
  require_same_shape(a, b);
  for (std::size_t k = 0; k < a.rows().size(); ++k) {
    if ((a.rows()[k] & ~b.rows()[k]) != 0) return false;
  }
  return true;
}

bool is_spanning(const BipartiteType& a) { return a.covered() == full_set(a.d()); }

bool is_connected(const BipartiteType& a) {
  const ComponentDecomposition c = components(a);
  return c.components.size() == 1 && c.isolated_right == 0;
}

bool is_spanning_tree(const BipartiteType& a) { return is_connected(a) && a.edge_count() == a.n() + a.d() - 1; }

BipartiteType restrict(const BipartiteType& a, PositionSet positions, RightSet right) {
  std::vector<RightSet> rows(a.rows());
  for (int i = 1; i <= a.n(); ++i) {
    rows[static_cast<std::size_t>(i - 1)] = contains(positions, i) ? (rows[static_cast<std::size_t>(i - 1)] & right) : 0;
  }
  return BipartiteType(a.n(), a.d(), std::move(rows));
}

}  // namespace gtom
