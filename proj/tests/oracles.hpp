#pragma once
// Slow, definition-level reference implementations. Nothing here calls the
// library routine it is used to check.

#include <algorithm>
#include <deque>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "gtom/types.hpp"

namespace oracle {

using gtom::BipartiteType;
using gtom::RightSet;

inline BipartiteType complete(int n, int d) {
  return BipartiteType(n, d, std::vector<RightSet>(static_cast<std::size_t>(n), gtom::full_set(d)));
}

inline BipartiteType rows(int d, std::vector<std::vector<int>> r) { return BipartiteType::from_lists(d, r); }

// Every (n,d)-type: each row a nonempty subset.
inline std::vector<BipartiteType> all_types(int n, int d) {
  std::vector<BipartiteType> out;
  std::vector<RightSet> r(static_cast<std::size_t>(n), 1);
  const RightSet top = gtom::full_set(d);
  while (true) {
    out.emplace_back(n, d, r);
    std::size_t k = 0;
    while (k < r.size() && r[k] == top) r[k++] = 1;
    if (k == r.size()) break;
    ++r[k];
  }
  return out;
}

// Every subgraph of g (rows may be empty), by edge subsets.
inline std::vector<BipartiteType> all_subgraphs(const BipartiteType& g) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= g.n(); ++i)
    for (int j = 1; j <= g.d(); ++j)
      if (g.has_edge(i, j)) edges.emplace_back(i, j);
  std::vector<BipartiteType> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size()); ++mask) {
    std::vector<RightSet> r(static_cast<std::size_t>(g.n()), 0);
    for (std::size_t e = 0; e < edges.size(); ++e)
      if ((mask >> e) & 1u) r[static_cast<std::size_t>(edges[e].first - 1)] |= gtom::bit(edges[e].second);
    out.emplace_back(g.n(), g.d(), r);
  }
  return out;
}

// Plain BFS over all n + d vertices.
inline bool connected_spanning(const BipartiteType& g) {
  const int n = g.n(), d = g.d();
  std::vector<bool> seen(static_cast<std::size_t>(n + d), false);
  std::deque<int> q{0};
  seen[0] = true;
  while (!q.empty()) {
    const int v = q.front();
    q.pop_front();
    for (int w = 0; w < n + d; ++w) {
      if (seen[static_cast<std::size_t>(w)]) continue;
      const bool adj = v < n ? (w >= n && g.has_edge(v + 1, w - n + 1)) : (w < n && g.has_edge(w + 1, v - n + 1));
      if (adj) {
        seen[static_cast<std::size_t>(w)] = true;
        q.push_back(w);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

// Is there a closed walk alternating between a-edges and b-edges that uses
// an edge outside a ∩ b? Searches walks starting with each exclusive edge,
// in either direction and either role, over states (vertex, role of next edge).
inline bool compatible(const BipartiteType& a, const BipartiteType& b) {
  const int n = a.n(), d = a.d();
  auto in = [&](int role, int i, int j) { return role == 0 ? a.has_edge(i, j) : b.has_edge(i, j); };
  // vertex encoding: positions 0..n-1, right vertices n..n+d-1
  auto step = [&](int v, int role, const std::function<void(int)>& visit) {
    if (v < n) {
      for (int j = 1; j <= d; ++j)
        if (in(role, v + 1, j)) visit(n + j - 1);
    } else {
      for (int i = 1; i <= n; ++i)
        if (in(role, i, v - n + 1)) visit(i - 1);
    }
  };
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= d; ++j) {
      const bool ina = a.has_edge(i, j), inb = b.has_edge(i, j);
      if (ina == inb) continue;
      const int role = ina ? 0 : 1;
      for (int dir = 0; dir < 2; ++dir) {
        const int from = dir == 0 ? i - 1 : n + j - 1;
        const int to = dir == 0 ? n + j - 1 : i - 1;
        // after traversing the first edge we stand at `to`, needing role^1
        std::vector<std::vector<bool>> seen(static_cast<std::size_t>(n + d), std::vector<bool>(2, false));
        std::deque<std::pair<int, int>> q{{to, role ^ 1}};
        seen[static_cast<std::size_t>(to)][static_cast<std::size_t>(role ^ 1)] = true;
        while (!q.empty()) {
          const auto [v, r] = q.front();
          q.pop_front();
          if (v == from && r == role) return false;
          step(v, r, [&](int w) {
            if (!seen[static_cast<std::size_t>(w)][static_cast<std::size_t>(r ^ 1)]) {
              seen[static_cast<std::size_t>(w)][static_cast<std::size_t>(r ^ 1)] = true;
              q.push_back({w, r ^ 1});
            }
          });
        }
      }
    }
  }
  return true;
}

// Ordered partitions as block labels: label[j-1] = block index, surjective.
inline void ordered_partitions(int d, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> label(static_cast<std::size_t>(d), 0);
  while (true) {
    const int blocks = *std::max_element(label.begin(), label.end()) + 1;
    std::vector<bool> used(static_cast<std::size_t>(blocks), false);
    for (int l : label) used[static_cast<std::size_t>(l)] = true;
    if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) fn(label);
    std::size_t k = 0;
    while (k < label.size() && label[k] == d - 1) label[k++] = 0;
    if (k == label.size()) break;
    ++label[k];
  }
}

// Each row keeps its elements in the earliest block it meets.
inline BipartiteType refine(const BipartiteType& a, const std::vector<int>& label) {
  std::vector<RightSet> out;
  for (int i = 1; i <= a.n(); ++i) {
    int best = a.d();
    for (int j = 1; j <= a.d(); ++j)
      if (a.has_edge(i, j)) best = std::min(best, label[static_cast<std::size_t>(j - 1)]);
    RightSet r = 0;
    for (int j = 1; j <= a.d(); ++j)
      if (a.has_edge(i, j) && label[static_cast<std::size_t>(j - 1)] == best) r |= gtom::bit(j);
    out.push_back(r);
  }
  return BipartiteType(a.n(), a.d(), out);
}

inline std::set<BipartiteType> refinements(const BipartiteType& a) {
  std::set<BipartiteType> out;
  ordered_partitions(a.d(), [&](const std::vector<int>& label) { out.insert(refine(a, label)); });
  return out;
}

inline BipartiteType random_type(int n, int d, std::mt19937_64& rng) {
  std::uniform_int_distribution<RightSet> pick(1, gtom::full_set(d));
  std::vector<RightSet> r;
  for (int i = 0; i < n; ++i) r.push_back(pick(rng));
  return BipartiteType(n, d, r);
}

}  // namespace oracle
