// End-to-end acceptance run. One PASS/FAIL line per criterion; exits
// nonzero if any criterion fails. Budgets are wall-clock seconds.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gtom/generation.hpp"
#include "gtom/geometry.hpp"
#include "gtom/subdivision.hpp"
#include "oracles.hpp"

using namespace gtom;
using oracle::rows;

namespace {

constexpr double kBudget1 = 1.0;
constexpr double kBudget2 = 30.0;
constexpr double kBudget3 = 120.0;
constexpr double kBudget4 = 300.0;
constexpr double kBudget5 = 1.0;
constexpr double kBudget6 = 600.0;
constexpr double kBudget7 = 600.0;
constexpr double kBudget8 = 1800.0;
constexpr double kBudget9 = 120.0;

constexpr int kPipelineGraphs = 50;
constexpr int kPipelineHeights = 100;
constexpr int kFacetSamples = 100;
constexpr int kStretchTrials = 20000;
constexpr int kCompatPairs = 10000;
constexpr std::size_t kSimplexTriangulations = 108;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget) {
    out.pass = false;
    out.detail += " (over budget)";
  }
  if (!out.pass) ++failures;
  std::printf("%s criterion %d: %s | %s | %.2fs of %.0fs\n", out.pass ? "PASS" : "FAIL", id, name, out.detail.c_str(),
              secs, budget);
  std::fflush(stdout);
}

std::vector<BipartiteType> spanning_trees(const BipartiteType& g) {
  std::vector<BipartiteType> out;
  for (const auto& h : oracle::all_subgraphs(g))
    if (oracle::connected_spanning(h) && h.edge_count() == g.n() + g.d() - 1) out.push_back(h);
  return out;
}

// A cell is a simplex iff its vertices are affinely independent.
bool all_cells_simplices(const Subdivision& s) {
  for (const auto& c : s.cells())
    if (dim_q(c) + 1 != c.edge_count()) return false;
  return true;
}

std::set<std::vector<BipartiteType>> triangulation_cells(const std::vector<Subdivision>& subs) {
  std::set<std::vector<BipartiteType>> out;
  for (const auto& s : subs)
    if (is_triangulation(s)) out.insert(s.cells());
  return out;
}

// Subdivisions shared by criteria 4, 6 and 7.
std::vector<Subdivision> g_pipeline;

Outcome square_baseline() {
  const auto g = oracle::complete(2, 2);
  std::vector<BipartiteType> candidates;
  for (const auto& h : oracle::all_subgraphs(g))
    if (oracle::connected_spanning(h)) candidates.push_back(h);
  int valid = 0, triangulations = 0, trivial = 0;
  bool ok = true;
  for (std::uint32_t mask = 1; mask < (1u << candidates.size()); ++mask) {
    std::vector<BipartiteType> cells;
    for (std::size_t k = 0; k < candidates.size(); ++k)
      if ((mask >> k) & 1u) cells.push_back(candidates[k]);
    const Subdivision s(g, cells);
    if (!check_subdivision(s).valid) continue;
    ++valid;
    triangulations += is_triangulation(s) ? 1 : 0;
    trivial += s.cells() == std::vector<BipartiteType>{g} ? 1 : 0;
    ok = ok && covering_volume_check(s).holds;
    const Gtom m = subdiv_to_gtom(s);
    ok = ok && is_gtom(m).holds && gtom_to_subdiv(m) == s;
  }
  const bool pass = ok && valid == 3 && triangulations == 2 && trivial == 1;
  return {pass, std::to_string(candidates.size()) + " candidate cells, " + std::to_string(valid) + " subdivisions, " +
                    std::to_string(triangulations) + " triangulations, " + std::to_string(trivial) +
                    " trivial; GTOM and round trip " + (ok ? "ok" : "broken")};
}

Outcome prism() {
  const auto g = oracle::complete(2, 3);
  const auto trees = spanning_trees(g);
  std::set<std::vector<BipartiteType>> exhaustive;
  for (std::uint32_t mask = 1; mask < (1u << trees.size()); ++mask) {
    std::vector<BipartiteType> cells;
    for (std::size_t k = 0; k < trees.size(); ++k)
      if ((mask >> k) & 1u) cells.push_back(trees[k]);
    const Subdivision s(g, cells);
    if (check_subdivision(s).valid) exhaustive.insert(s.cells());
  }
  const auto sampled = triangulation_cells(sample_subdivisions(g, 2000, 1));
  const bool pass = exhaustive.size() == 6 && sampled == exhaustive;
  return {pass, std::to_string(trees.size()) + " spanning trees, " + std::to_string(exhaustive.size()) +
                    " exhaustive triangulations, " + std::to_string(sampled.size()) + " sampled, sets " +
                    (sampled == exhaustive ? "equal" : "differ")};
}

Outcome facet_equivalence() {
  auto agree = [](const BipartiteType& g) {
    std::vector<BipartiteType> a, b;
    for (const auto& f : facets_graphtheoretic(g)) a.push_back(f.graph);
    for (const auto& f : facets_geometric(g)) b.push_back(f.vertex_set);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  };
  int checked = 0, bad = 0;
  for (const auto& g : oracle::all_subgraphs(oracle::complete(2, 3))) {
    if (!oracle::connected_spanning(g)) continue;
    ++checked;
    bad += agree(g) ? 0 : 1;
  }
  const int exhaustive = checked;
  std::mt19937_64 rng(303);
  for (auto [n, d] : {std::pair{3, 3}, std::pair{3, 4}}) {
    for (int k = 0; k < kFacetSamples; ++k) {
      ++checked;
      bad += agree(random_connected_spanning(n, d, rng)) ? 0 : 1;
    }
  }
  return {bad == 0, std::to_string(exhaustive) + " graphs in K_{2,3} plus " + std::to_string(checked - exhaustive) +
                        " sampled in K_{3,3} and K_{3,4}, " + std::to_string(bad) + " disagreements"};
}

Outcome pipeline() {
  std::mt19937_64 rng(404);
  std::set<BipartiteType> graphs;
  while (static_cast<int>(graphs.size()) < kPipelineGraphs) graphs.insert(random_connected_spanning(3, 3, rng));
  int heights = 0, bad_check = 0, bad_gtom = 0, bad_trip = 0, bad_tri = 0, bad_cover = 0;
  for (const auto& g : graphs) {
    const LiftingSystem lifting(g);
    std::set<Subdivision> distinct;
    for (int k = 0; k < kPipelineHeights; ++k, ++heights)
      distinct.insert(lifting.subdivide(random_heights(g, std::uint64_t{1} << (1 + k % 5), rng)));
    for (const auto& s : distinct) {
      g_pipeline.push_back(s);
      if (!check_subdivision(s).valid) {
        ++bad_check;
        continue;
      }
      const Gtom m = subdiv_to_gtom(s);
      bad_gtom += is_gtom(m).holds ? 0 : 1;
      bad_trip += gtom_to_subdiv(m) == s ? 0 : 1;
      bad_tri += is_triangulation(s) == all_cells_simplices(s) ? 0 : 1;
      bad_cover += covering_volume_check(s).holds ? 0 : 1;
    }
  }
  const int bad = bad_check + bad_gtom + bad_trip + bad_tri + bad_cover;
  return {bad == 0, std::to_string(graphs.size()) + " graphs, " + std::to_string(heights) + " heights, " +
                        std::to_string(g_pipeline.size()) + " distinct subdivisions; failures: check " +
                        std::to_string(bad_check) + ", axioms " + std::to_string(bad_gtom) + ", round trip " +
                        std::to_string(bad_trip) + ", triangulation " + std::to_string(bad_tri) + ", volume " +
                        std::to_string(bad_cover)};
}

Outcome worked_example() {
  const auto g = rows(9, {{2, 9}, {1, 2, 3, 9}, {1, 2, 8}, {1, 2, 4, 6, 8}, {3, 4, 7}, {2, 4, 5}, {6, 7},
                          {2, 3, 5, 7}, {4, 5, 9}});
  const auto a = rows(9, {{2, 9}, {1, 2}, {1, 8}, {2, 4, 6}, {3, 4}, {2, 4}, {6, 7}, {5, 7}, {5}});
  const std::vector<int> identity{1, 2, 3, 4, 5, 6, 7, 8, 9};
  auto s = [](std::vector<int> v) { return make_set(v); };
  const Labeling lab = label_positions(g, a, identity, 9);
  bool ok = lab.levels.size() == 4;
  if (ok) {
    ok = lab.levels[0].opposing == s({1, 2, 9}) && lab.levels[0].agreeing == 0 &&
         lab.levels[1].agreeing == s({3}) && lab.levels[1].right == s({1, 8}) && lab.levels[1].opposing == s({4}) &&
         lab.levels[2].agreeing == s({5, 6}) && lab.levels[2].right == s({2, 3, 4}) &&
         lab.levels[2].opposing == s({8}) && lab.levels[3].agreeing == s({7}) && lab.levels[3].right == s({6, 7}) &&
         lab.uncovered == s({5});
  }
  const int permutation[] = {9, 1, 8, 2, 3, 4, 6, 7, 5};
  const bool refined =
      refine_by_order(g, permutation) == rows(9, {{9}, {9}, {1}, {1}, {3}, {2}, {6}, {2}, {9}});
  return {ok && refined, std::string("labeling ") + (ok ? "matches" : "differs") + ", boundary type " +
                             (refined ? "matches" : "differs")};
}

Outcome generation() {
  long connected = 0, disconnected = 0, bad = 0;
  std::string first_problem;
  auto fail = [&](const std::string& why) {
    if (bad++ == 0) first_problem = why;
  };
  for (const auto& s : g_pipeline) {
    const Gtom m = subdiv_to_gtom(s);
    const TypeOracle o(m);
    for (const auto& a : m.types()) {
      if (is_connected(a)) {
        ++connected;
        const auto cert = generate_type(o, a);
        const auto replay = replay_certificate(o, cert);
        if (!replay.sound) fail(to_string(a) + ": " + replay.problem);
        continue;
      }
      ++disconnected;
      std::vector<ExtensionStep> trace;
      const auto c = extend_to_connected(o, a, &trace);
      if (!(is_subgraph(a, c) && a != c && m.contains(c) && is_connected(c))) fail(to_string(a) + ": bad extension");
      for (const auto& st : trace) {
        for (std::size_t k = 1; k < st.bad_counts.size(); ++k)
          if (st.bad_counts[k] >= st.bad_counts[k - 1]) fail(to_string(a) + ": bad count did not drop");
      }
    }
  }
  return {bad == 0 && connected > 0 && disconnected > 0,
          std::to_string(connected) + " generated, " + std::to_string(disconnected) + " extended, " +
              std::to_string(bad) + " failures" + (first_problem.empty() ? "" : " (" + first_problem + ")")};
}

Outcome facet_pairing() {
  long facets = 0, bad = 0;
  for (const auto& s : g_pipeline) {
    const auto boundary = facets_graphtheoretic(s.ambient());
    std::set<BipartiteType> internal;
    for (const auto& c : s.cells())
      for (const auto& f : facets_graphtheoretic(c)) {
        const bool outer = std::any_of(boundary.begin(), boundary.end(),
                                       [&](const FacetSubgraph& b) { return is_subgraph(f.graph, b.graph); });
        if (!outer) internal.insert(f.graph);
      }
    const auto pairs = internal_facet_pairing(s);
    if (pairs.size() != internal.size()) ++bad;
    const TypeOracle o = face_oracle(s);
    for (const auto& p : pairs) {
      ++facets;
      const auto flank = std::count_if(s.cells().begin(), s.cells().end(),
                                       [&](const BipartiteType& c) { return is_subgraph(p.facet, c); });
      const auto x = cross_edges(p.joins_left1_right2, p.split);
      const auto y = cross_edges(p.joins_left2_right1, p.split);
      const bool opposite = x.left1_right2 && !x.left2_right1 && y.left2_right1 && !y.left1_right2;
      const auto w = facet_sharing_witnesses(o, p.facet, p.split);
      const bool witnessed = w.first == p.joins_left1_right2 && w.second == p.joins_left2_right1;
      if (flank != 2 || p.joins_left1_right2 == p.joins_left2_right1 || !opposite || !witnessed) ++bad;
    }
  }
  return {bad == 0 && facets > 0, std::to_string(facets) + " internal facets, " + std::to_string(bad) + " failures"};
}

// Triangulations of Δ²×Δ² as sets of six pairwise compatible spanning trees
// (each tree is a unimodular simplex and the product has normalized volume 6).
std::set<std::vector<BipartiteType>> clique_triangulations(const BipartiteType& g) {
  const auto trees = spanning_trees(g);
  const std::size_t t = trees.size();
  std::vector<std::vector<bool>> ok(t, std::vector<bool>(t, false));
  for (std::size_t a = 0; a < t; ++a)
    for (std::size_t b = 0; b < t; ++b) ok[a][b] = a != b && oracle::compatible(trees[a], trees[b]);
  std::set<std::vector<BipartiteType>> out;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    if (pick.size() == 6) {
      std::vector<BipartiteType> cells;
      for (std::size_t k : pick) cells.push_back(trees[k]);
      const Subdivision s(g, cells);
      if (check_subdivision(s).valid && covering_volume_check(s).holds) out.insert(s.cells());
      return;
    }
    for (std::size_t k = from; k < t; ++k) {
      if (!std::all_of(pick.begin(), pick.end(), [&](std::size_t p) { return ok[p][k]; })) continue;
      pick.push_back(k);
      grow(k + 1);
      pick.pop_back();
    }
  };
  grow(0);
  return out;
}

Outcome stretch() {
  const auto g = oracle::complete(3, 3);
  const auto full = triangulation_cells(sample_subdivisions(g, kStretchTrials, 808));
  const auto half = triangulation_cells(sample_subdivisions(g, kStretchTrials / 2, 909));
  const auto cliques = clique_triangulations(g);
  const bool pass = full.size() == kSimplexTriangulations && half == full && cliques == full;
  return {pass, std::to_string(full.size()) + " sampled from " + std::to_string(kStretchTrials) + " heights, " +
                    std::to_string(half.size()) + " from an independent half run, " + std::to_string(cliques.size()) +
                    " by exhaustive clique search"};
}

Outcome compatibility() {
  long pairs = 0, bad = 0;
  for (int n = 1; n <= 3; ++n)
    for (int d = 1; d <= 3; ++d) {
      const auto types = oracle::all_types(n, d);
      for (const auto& a : types)
        for (const auto& b : types) {
          ++pairs;
          bad += is_compatible(a, b) == oracle::compatible(a, b) ? 0 : 1;
        }
    }
  const long exhaustive = pairs;
  std::mt19937_64 rng(909);
  for (int k = 0; k < kCompatPairs; ++k) {
    const int n = 1 + static_cast<int>(rng() % 5), d = 1 + static_cast<int>(rng() % 5);
    const auto a = oracle::random_type(n, d, rng);
    // half the pairs share structure so both verdicts occur often
    const auto b = k % 2 == 0 ? oracle::random_type(n, d, rng) : [&] {
      const auto r = all_refinements(union_type(a, oracle::random_type(n, d, rng)));
      return r[rng() % r.size()];
    }();
    ++pairs;
    bad += is_compatible(a, b) == oracle::compatible(a, b) ? 0 : 1;
  }
  return {bad == 0, std::to_string(exhaustive) + " exhaustive and " + std::to_string(pairs - exhaustive) +
                        " random pairs, " + std::to_string(bad) + " disagreements"};
}

}  // namespace

int main() {
  criterion(1, "square baseline", kBudget1, square_baseline);
  criterion(2, "prism triangulations", kBudget2, prism);
  criterion(3, "facet equivalence", kBudget3, facet_equivalence);
  criterion(4, "oracle pipeline", kBudget4, pipeline);
  criterion(5, "worked example", kBudget5, worked_example);
  criterion(6, "generation and extension", kBudget6, generation);
  criterion(7, "facet-sharing witnesses", kBudget7, facet_pairing);
  criterion(8, "triangulations of the product of two triangles", kBudget8, stretch);
  criterion(9, "compatibility against walk search", kBudget9, compatibility);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
