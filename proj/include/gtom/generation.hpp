#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gtom/facets.hpp"
#include "gtom/gtom.hpp"
#include "gtom/types.hpp"

namespace gtom {

/// Orders the right vertices so every prefix is connected in a once the
/// later right vertices are deleted (positions left without edges are
/// ignored). Greedy reverse deletion, removing the largest removable index
/// first. Throws PreconditionError if a is not connected and spanning.
std::vector<int> component_coherent_order(const BipartiteType& a);
bool is_component_coherent(const BipartiteType& a, std::span<const int> order);

struct LabelLevel {
  PositionSet agreeing = 0;  // always empty on level 0 for a single new vertex
  PositionSet opposing = 0;
  RightSet right = 0;
};

struct Labeling {
  int root = 0;  // 0 when labeling around a whole component
  std::vector<LabelLevel> levels;
  RightSet uncovered = 0;          // right vertices of the prefix no level reached
  std::vector<int> position_order;  // active positions, root first
  bool fallback = false;  // some level had no component reachable from the earlier ones
};

/// Labels the active positions for the round that adds order[t-1] to the
/// prefix order[0..t). Throws Error when the prefix is not coherent.
Labeling label_positions(const BipartiteType& g, const BipartiteType& a, std::span<const int> order, int t);

/// Checks the ordering constraints and prefix connectivity of
/// labeling.position_order; returns a description of the first violation.
std::optional<std::string> position_order_violation(const BipartiteType& a, const Labeling& labeling,
                                                    RightSet prefix);

struct EliminationStep {
  BipartiteType left;
  BipartiteType right;
  int position = 0;
  BipartiteType result;
};

struct GenerationRound {
  int vertex = 0;  // right vertex added this round
  Labeling labeling;
  BipartiteType b;       // the auxiliary type
  BipartiteType result;  // the type after eliminating at the root
};

struct EliminationCertificate {
  BipartiteType target;
  std::vector<int> order;               // right-vertex order used
  std::vector<BipartiteType> leaves;    // boundary types in order of first use
  std::vector<EliminationStep> steps;   // in execution order
  std::vector<GenerationRound> rounds;  // outermost rounds only
};

/// Builds the auxiliary type of one generation round: agreeing rows copy a,
/// opposing rows on level k are nonempty subsets of that level's right set.
/// Steps and leaves used are appended to `cert` when given.
BipartiteType build_B(const TypeOracle& m, const BipartiteType& a, const Labeling& labeling,
                      std::span<const int> order, int t, EliminationCertificate* cert = nullptr);

/// Generates the connected type a from boundary types by eliminations.
EliminationCertificate generate_type(const TypeOracle& m, const BipartiteType& a);
EliminationCertificate generate_type(const TypeOracle& m, const BipartiteType& a, std::span<const int> order);
EliminationCertificate generate_type(const Gtom& m, const BipartiteType& a);

struct ReplayResult {
  bool sound = true;
  std::string problem;
};
/// Replays a certificate: leaves must be total refinements of the ambient
/// graph inside m, every step must use available types and produce an
/// eliminant inside m, and the last result must be the target.
ReplayResult replay_certificate(const TypeOracle& m, const EliminationCertificate& cert);

struct ExtensionStep {
  BipartiteType result;
  Component component;      // the component (I, J̄) extended from
  Labeling labeling;        // labeling of the remaining positions
  BipartiteType b;          // auxiliary type before the good/bad loop
  std::vector<int> bad_counts;  // bad positions before each elimination, then after the last
  bool joins_component = false;  // result has an edge from outside the component into it
};

/// The component extended by default: the first component of a (positions
/// first, then isolated right vertices) with an ambient edge from outside
/// its positions into its right vertices.
Component default_extension_component(const BipartiteType& g, const BipartiteType& a);

/// One extension: a type of m strictly containing a with an edge between the
/// positions outside `component` and its right vertices.
ExtensionStep extend_once(const TypeOracle& m, const BipartiteType& a, std::optional<Component> component = {});

/// A connected type of m containing a. Types of each step are recorded in
/// `trace` when given.
BipartiteType extend_to_connected(const TypeOracle& m, const BipartiteType& a,
                                  std::vector<ExtensionStep>* trace = nullptr);
BipartiteType extend_to_connected(const Gtom& m, const BipartiteType& a, std::vector<ExtensionStep>* trace = nullptr);

/// Two connected types of m containing the internal facet subgraph h: the
/// first joins I1 to J̄2, the second joins I2 to J̄1.
std::pair<BipartiteType, BipartiteType> facet_sharing_witnesses(const TypeOracle& m, const BipartiteType& h,
                                                                const Split& split);

}  // namespace gtom
