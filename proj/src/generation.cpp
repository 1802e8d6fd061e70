#include "gtom/generation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace gtom {

namespace {

// Whether the right vertices in `right` lie in one component of a restricted
// to positions × right.
bool rights_connected(const BipartiteType& a, PositionSet positions, RightSet right) {
  if (set_size(right) <= 1) return true;
  const ComponentDecomposition comps = components(restrict(a, positions, right));
  const int first = lowest(right);
  for (const Component& c : comps.components) {
    if (contains(c.right, first)) return (right & ~c.right) == 0;
  }
  return false;
}

std::vector<int> coherent_order(const BipartiteType& a, PositionSet positions, RightSet right) {
  if (!rights_connected(a, positions, right)) throw PreconditionError("type is not connected on its block");
  std::vector<int> reversed;
  RightSet rest = right;
  while (rest != 0) {
    auto vs = elements(rest);
    int removed = 0;
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) {
      if (rights_connected(a, positions, rest & ~bit(*it))) {
        removed = *it;
        break;
      }
    }
    if (removed == 0) throw Error("no removable right vertex");  // cannot happen for connected input
    reversed.push_back(removed);
    rest &= ~bit(removed);
  }
  return {reversed.rbegin(), reversed.rend()};
}

RightSet prefix_set(std::span<const int> order, int t) {
  RightSet s = 0;
  for (int k = 0; k < t; ++k) s |= bit(order[static_cast<std::size_t>(k)]);
  return s;
}

// Right vertices reachable from `sources` along a-edges whose positions are all labeled.
RightSet reach_through(const BipartiteType& a, PositionSet labeled, RightSet seen, RightSet sources) {
  RightSet reach = sources;
  PositionSet used = 0;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int i : elements(labeled & ~used)) {
      const RightSet row = a.row(i) & seen;
      if ((row & reach) == 0) continue;
      used |= bit(i);
      if ((row & ~reach) != 0) reach |= row;
      grew = true;
    }
  }
  return reach;
}

Labeling label_levels(const BipartiteType& g, const BipartiteType& a, PositionSet active, RightSet seen,
                      RightSet first, int root, bool extension) {
  Labeling lab;
  lab.root = root;
  LabelLevel level0;
  level0.right = first;
  for (int i : elements(active)) {
    if ((g.row(i) & first) != 0) level0.opposing |= bit(i);
  }
  lab.levels.push_back(level0);
  PositionSet labeled = level0.opposing;
  RightSet removed = first;
  while (labeled != active) {
    const PositionSet remaining = active & ~labeled;
    const ComponentDecomposition comps = components(restrict(a, remaining, seen & ~removed));
    // Around a whole component the level-0 positions reach it through ambient
    // edges only, so their own rows count as reached.
    RightSet sources = removed;
    if (extension) {
      for (int i : elements(lab.levels[0].opposing)) sources |= a.row(i) & seen;
    }
    const RightSet reach = reach_through(a, labeled, seen, sources);
    const Component* pick = nullptr;
    for (const Component& c : comps.components) {
      if ((c.left & remaining) != 0 && (c.right & reach) != 0) {
        pick = &c;
        break;
      }
    }
    if (pick == nullptr && extension) {
      lab.fallback = true;
      for (const Component& c : comps.components) {
        if ((c.left & remaining) != 0) {
          pick = &c;
          break;
        }
      }
    }
    if (pick == nullptr || pick->right == 0) throw Error("labeling found no component reachable from the new vertices");
    LabelLevel level;
    level.agreeing = pick->left;
    level.right = pick->right;
    for (int i : elements(remaining & ~pick->left)) {
      if ((g.row(i) & pick->right) != 0) level.opposing |= bit(i);
    }
    labeled |= level.agreeing | level.opposing;
    removed |= level.right;
    lab.levels.push_back(level);
  }
  lab.uncovered = seen & ~removed;
  return lab;
}

// Greedy order: root first, then the connectable position of smallest level key.
std::vector<int> order_positions(const BipartiteType& a, const Labeling& lab, PositionSet active, RightSet seen) {
  std::map<int, int> key;
  for (std::size_t k = 0; k < lab.levels.size(); ++k) {
    for (int i : elements(lab.levels[k].agreeing)) key[i] = static_cast<int>(k);
    for (int i : elements(lab.levels[k].opposing)) key[i] = k == 0 ? 0 : static_cast<int>(k) + 1;
  }
  std::vector<int> out{lab.root};
  PositionSet placed = bit(lab.root);
  RightSet touched = a.row(lab.root) & seen;
  while (placed != active) {
    int best = 0;
    for (int i : elements(active & ~placed)) {
      if ((a.row(i) & touched) == 0) continue;
      if (best == 0 || key[i] < key[best]) best = i;
    }
    if (best == 0) throw Error("active positions are not connected");
    out.push_back(best);
    placed |= bit(best);
    touched |= a.row(best) & seen;
  }
  return out;
}

Labeling label_round(const BipartiteType& g, const BipartiteType& a, PositionSet positions, RightSet seen, int vertex) {
  PositionSet active = 0;
  for (int i : elements(positions)) {
    if ((a.row(i) & seen) != 0) active |= bit(i);
  }
  int root = 0;
  for (int i : elements(active)) {
    if (contains(a.row(i), vertex) && (a.row(i) & seen & ~bit(vertex)) != 0) {
      root = i;
      break;
    }
  }
  if (root == 0) throw Error("no root position: the vertex order is not coherent");
  Labeling lab = label_levels(g, a, active, seen, bit(vertex), root, false);
  lab.position_order = order_positions(a, lab, active, seen);
  return lab;
}

struct Block {
  PositionSet positions = 0;
  RightSet right = 0;
};

using Leaf = std::function<BipartiteType(const std::vector<int>&)>;

class Engine {
 public:
  Engine(const TypeOracle& m, EliminationCertificate* cert) : m_(m), g_(m.ambient()), cert_(cert) {}

  BipartiteType boundary(const std::vector<int>& order) {
    auto it = leaves_.find(order);
    if (it == leaves_.end()) {
      BipartiteType t = refine_by_order(g_, order);
      if (!m_.contains(t)) throw Error("required boundary type " + to_string(t) + " is absent");
      it = leaves_.emplace(order, std::move(t)).first;
      if (cert_ != nullptr) cert_->leaves.push_back(it->second);
    }
    return it->second;
  }

  Leaf boundary_leaf() {
    return [this](const std::vector<int>& order) { return boundary(order); };
  }

  BipartiteType eliminate(const BipartiteType& x, const BipartiteType& y, int i) {
    auto c = smallest_eliminant(m_, x, y, i);
    if (!c) {
      throw Error("no eliminant of " + to_string(x) + " and " + to_string(y) + " at position " + std::to_string(i));
    }
    if (cert_ != nullptr) cert_->steps.push_back({x, y, i, *c});
    return *c;
  }

  // Generates target on positions × right from leaves ordered by permutations of right.
  BipartiteType generate(PositionSet positions, RightSet right, const BipartiteType& target,
                         const std::vector<int>& sigma, const Leaf& leaf, std::vector<GenerationRound>* rounds) {
    BipartiteType cur = leaf(sigma);
    if (positions == 0) return cur;
    check_rows(cur, target, positions, right, sigma, 1);
    for (int t = 2; t <= static_cast<int>(sigma.size()); ++t) {
      const RightSet seen = prefix_set(sigma, t);
      const int vertex = sigma[static_cast<std::size_t>(t - 1)];
      Labeling lab = label_round(g_, target, positions, seen, vertex);
      // Agreeing blocks aim at the type as seen so far.
      const BipartiteType partial = restrict(target, full_set(target.n()), seen);
      BipartiteType b = build_round(partial, lab, sigma, t, leaf);
      check_round_b(b, cur, partial, lab, vertex);
      BipartiteType next = eliminate(cur, b, lab.root);
      check_rows(next, target, positions, right, sigma, t);
      if (rounds != nullptr) rounds->push_back({vertex, std::move(lab), std::move(b), next});
      cur = std::move(next);
    }
    return cur;
  }

  BipartiteType build_round(const BipartiteType& target, const Labeling& lab, const std::vector<int>& sigma, int t,
                            const Leaf& leaf) {
    std::vector<Block> blocks;
    for (const LabelLevel& level : lab.levels) blocks.push_back({level.agreeing, level.right});
    std::vector<int> tail;
    for (int j : sigma) {
      if (contains(lab.uncovered, j)) tail.push_back(j);
    }
    for (std::size_t k = static_cast<std::size_t>(t); k < sigma.size(); ++k) tail.push_back(sigma[k]);
    return build(target, blocks, tail, leaf);
  }

  // Combines independent generations on each block; later blocks feed the
  // leaves of earlier ones.
  BipartiteType build(const BipartiteType& target, const std::vector<Block>& blocks, const std::vector<int>& tail,
                      const Leaf& leaf) {
    std::map<std::vector<int>, BipartiteType> memo;
    std::function<BipartiteType(std::size_t, const std::vector<int>&)> nest = [&](std::size_t k,
                                                                                   const std::vector<int>& prefix) {
      if (auto it = memo.find(prefix); it != memo.end()) return it->second;
      BipartiteType out;
      if (k == blocks.size()) {
        std::vector<int> order = prefix;
        order.insert(order.end(), tail.begin(), tail.end());
        out = leaf(order);
      } else {
        const Block& blk = blocks[k];
        const std::vector<int> sigma =
            blk.positions == 0 ? elements(blk.right) : coherent_order(target, blk.positions, blk.right);
        out = generate(blk.positions, blk.right, target, sigma,
                       [&, k](const std::vector<int>& pi) {
                         std::vector<int> longer = prefix;
                         longer.insert(longer.end(), pi.begin(), pi.end());
                         return nest(k + 1, longer);
                       },
                       nullptr);
      }
      memo.emplace(prefix, out);
      return out;
    };
    return nest(0, {});
  }

 private:
  void check_rows(const BipartiteType& cur, const BipartiteType& target, PositionSet positions, RightSet right,
                  const std::vector<int>& sigma, int t) const {
    const RightSet seen = prefix_set(sigma, t);
    for (int i : elements(positions)) {
      const RightSet gi = g_.row(i) & right;
      const RightSet want = target.row(i) & seen;
      const RightSet got = cur.row(i);
      bool ok;
      if ((gi & seen) == 0) {
        const auto first = std::find_if(sigma.begin(), sigma.end(), [&](int j) { return contains(gi, j); });
        ok = first != sigma.end() && got == bit(*first);
      } else if (want == 0) {
        ok = got != 0 && (got & ~seen) == 0;
      } else {
        ok = got == want;
      }
      if (!ok) {
        throw Error("generated type " + to_string(cur) + " breaks the row invariant at position " + std::to_string(i) +
                    " after " + std::to_string(t) + " vertices");
      }
    }
  }

  void check_round_b(const BipartiteType& b, const BipartiteType& prior, const BipartiteType& target,
                     const Labeling& lab, int vertex) const {
    for (const LabelLevel& level : lab.levels) {
      for (int i : elements(level.agreeing)) {
        if (b.row(i) != target.row(i)) throw Error("auxiliary type " + to_string(b) + " differs on an agreeing position");
      }
      for (int i : elements(level.opposing)) {
        if (b.row(i) == 0 || (b.row(i) & ~level.right) != 0) {
          throw Error("auxiliary type " + to_string(b) + " leaves its level on position " + std::to_string(i));
        }
        const bool both_new = b.row(i) == bit(vertex) && prior.row(i) == bit(vertex);
        if (!both_new && (b.row(i) & prior.row(i)) != 0) {
          throw Error("auxiliary type " + to_string(b) + " meets the prior type on opposing position " +
                      std::to_string(i));
        }
      }
    }
  }

  const TypeOracle& m_;
  const BipartiteType& g_;
  EliminationCertificate* cert_;
  std::map<std::vector<int>, BipartiteType> leaves_;
};

}  // namespace

std::vector<int> component_coherent_order(const BipartiteType& a) {
  if (!is_connected(a)) throw PreconditionError("component_coherent_order needs a connected spanning type");
  return coherent_order(a, full_set(a.n()), full_set(a.d()));
}

bool is_component_coherent(const BipartiteType& a, std::span<const int> order) {
  if (static_cast<int>(order.size()) != a.d() || prefix_set(order, a.d()) != full_set(a.d())) return false;
  for (int t = 1; t <= a.d(); ++t) {
    if (!rights_connected(a, full_set(a.n()), prefix_set(order, t))) return false;
  }
  return true;
}

Labeling label_positions(const BipartiteType& g, const BipartiteType& a, std::span<const int> order, int t) {
  require_same_shape(g, a);
  if (t < 2 || t > static_cast<int>(order.size())) throw PreconditionError("label_positions needs 2 <= t <= d");
  if (!rights_connected(a, full_set(a.n()), prefix_set(order, t))) {
    throw Error("prefix of the vertex order is not connected in the type");
  }
  return label_round(g, a, full_set(a.n()), prefix_set(order, t), order[static_cast<std::size_t>(t - 1)]);
}

std::optional<std::string> position_order_violation(const BipartiteType& a, const Labeling& labeling,
                                                    RightSet prefix) {
  const auto& order = labeling.position_order;
  if (order.empty() || order.front() != labeling.root) return "order does not start at the root";
  std::map<int, std::pair<int, bool>> level;  // position -> (level, agreeing)
  for (std::size_t k = 0; k < labeling.levels.size(); ++k) {
    for (int i : elements(labeling.levels[k].agreeing)) level[i] = {static_cast<int>(k), true};
    for (int i : elements(labeling.levels[k].opposing)) level[i] = {static_cast<int>(k), false};
  }
  if (level.size() != order.size()) return "order does not list every labeled position once";
  RightSet touched = 0;
  for (std::size_t p = 0; p < order.size(); ++p) {
    const int i = order[p];
    if (level.count(i) == 0) return "position " + std::to_string(i) + " is not labeled";
    if (p > 0 && (a.row(i) & prefix & touched) == 0) return "prefix ending at position " + std::to_string(i) + " is disconnected";
    touched |= a.row(i) & prefix;
    for (std::size_t q = p + 1; q < order.size(); ++q) {
      const auto [lk, agree] = level[order[q]];
      const auto [pk, pagree] = level[i];
      // Every level-k agreeing position precedes level-k opposing and level-(k+1) agreeing ones.
      if (lk >= 1 && agree && ((!pagree && pk == lk && pk >= 1) || (pagree && pk == lk + 1))) {
        return "position " + std::to_string(i) + " precedes agreeing position " + std::to_string(order[q]);
      }
    }
  }
  return std::nullopt;
}

BipartiteType build_B(const TypeOracle& m, const BipartiteType& a, const Labeling& labeling,
                      std::span<const int> order, int t, EliminationCertificate* cert) {
  Engine engine(m, cert);
  const std::vector<int> sigma(order.begin(), order.end());
  return engine.build_round(a, labeling, sigma, t, engine.boundary_leaf());
}

namespace {

bool is_boundary_type(const BipartiteType& g, const BipartiteType& a) {
  return a.is_type() && std::all_of(a.rows().begin(), a.rows().end(), [](RightSet r) { return set_size(r) == 1; }) &&
         is_refinement_of(a, g);
}

}  // namespace

EliminationCertificate generate_type(const TypeOracle& m, const BipartiteType& a, std::span<const int> order) {
  require_same_shape(m.ambient(), a);
  if (!m.contains(a)) throw PreconditionError("generate_type: " + to_string(a) + " is not in the collection");
  if (is_boundary_type(m.ambient(), a)) {
    // nothing to eliminate
    EliminationCertificate cert;
    cert.target = a;
    cert.order.assign(order.begin(), order.end());
    cert.leaves = {a};
    return cert;
  }
  if (!is_connected(a)) throw PreconditionError("generate_type needs a connected type");
  if (!is_component_coherent(a, order)) throw PreconditionError("vertex order is not coherent for the type");
  EliminationCertificate cert;
  cert.target = a;
  cert.order.assign(order.begin(), order.end());
  Engine engine(m, &cert);
  BipartiteType out =
      engine.generate(full_set(a.n()), full_set(a.d()), a, cert.order, engine.boundary_leaf(), &cert.rounds);
  if (out != a) throw Error("generation ended at " + to_string(out) + " instead of " + to_string(a));
  return cert;
}

EliminationCertificate generate_type(const TypeOracle& m, const BipartiteType& a) {
  std::vector<int> order(static_cast<std::size_t>(a.d()));
  std::iota(order.begin(), order.end(), 1);
  if (!is_boundary_type(m.ambient(), a)) order = component_coherent_order(a);
  return generate_type(m, a, order);
}

EliminationCertificate generate_type(const Gtom& m, const BipartiteType& a) { return generate_type(TypeOracle(m), a); }

ReplayResult replay_certificate(const TypeOracle& m, const EliminationCertificate& cert) {
  const BipartiteType& g = m.ambient();
  std::vector<BipartiteType> available;
  auto have = [&](const BipartiteType& t) { return std::find(available.begin(), available.end(), t) != available.end(); };
  for (const BipartiteType& leaf : cert.leaves) {
    const bool total = leaf.is_type() && std::all_of(leaf.rows().begin(), leaf.rows().end(),
                                                     [](RightSet r) { return set_size(r) == 1; });
    if (!total || !is_refinement_of(leaf, g)) return {false, "leaf " + to_string(leaf) + " is not a boundary type"};
    if (!m.contains(leaf)) return {false, "leaf " + to_string(leaf) + " is not in the collection"};
    available.push_back(leaf);
  }
  for (std::size_t s = 0; s < cert.steps.size(); ++s) {
    const EliminationStep& step = cert.steps[s];
    const std::string where = "step " + std::to_string(s + 1) + ": ";
    if (!have(step.left) || !have(step.right)) return {false, where + "uses a type not derived yet"};
    if (!is_eliminant(step.result, step.left, step.right, step.position)) return {false, where + "not an eliminant"};
    if (!m.contains(step.result)) return {false, where + "result is not in the collection"};
    if (!have(step.result)) available.push_back(step.result);
  }
  const BipartiteType& last = cert.steps.empty() ? (cert.leaves.empty() ? BipartiteType() : cert.leaves.back())
                                                 : cert.steps.back().result;
  if (last != cert.target) return {false, "final type differs from the target"};
  return {};
}

Component default_extension_component(const BipartiteType& g, const BipartiteType& a) {
  const ComponentDecomposition comps = components(a);
  std::vector<Component> candidates = comps.components;
  for (int j : elements(comps.isolated_right)) candidates.push_back({0, bit(j)});
  for (const Component& c : candidates) {
    for (int i : elements(full_set(a.n()) & ~c.left)) {
      if ((g.row(i) & c.right) != 0) return c;
    }
  }
  throw PreconditionError("type " + to_string(a) + " has no component to extend from");
}

ExtensionStep extend_once(const TypeOracle& m, const BipartiteType& a, std::optional<Component> component) {
  const BipartiteType& g = m.ambient();
  require_same_shape(g, a);
  if (!m.contains(a)) throw PreconditionError("extend: " + to_string(a) + " is not in the collection");
  if (is_connected(a)) throw PreconditionError("extend: " + to_string(a) + " is already connected");
  ExtensionStep out;
  out.component = component ? *component : default_extension_component(g, a);
  const Component& comp = out.component;
  const ComponentDecomposition comps = components(a);
  const bool listed = std::find(comps.components.begin(), comps.components.end(), comp) != comps.components.end() ||
                      (comp.left == 0 && set_size(comp.right) == 1 && (comps.isolated_right & comp.right) != 0);
  if (!listed) throw PreconditionError("extend: the given vertex sets are not a component of the type");
  const PositionSet others = full_set(a.n()) & ~comp.left;
  bool bridged = false;
  for (int i : elements(others)) bridged = bridged || (g.row(i) & comp.right) != 0;
  if (!bridged) throw PreconditionError("extend: no ambient edge leaves the chosen component");

  out.labeling = label_levels(g, a, others, full_set(a.d()), comp.right, 0, true);
  out.labeling.levels[0].agreeing = comp.left;

  Engine engine(m, nullptr);
  std::vector<Block> blocks;
  for (const LabelLevel& level : out.labeling.levels) blocks.push_back({level.agreeing, level.right});
  out.b = engine.build(a, blocks, elements(out.labeling.uncovered), engine.boundary_leaf());

  for (const LabelLevel& level : out.labeling.levels) {
    for (int i : elements(level.agreeing)) {
      if (out.b.row(i) != a.row(i)) throw Error("extend: auxiliary type differs on an agreeing position");
    }
    for (int i : elements(level.opposing)) {
      if ((out.b.row(i) & ~level.right) != 0 || (out.b.row(i) & a.row(i)) != 0) {
        throw Error("extend: auxiliary type is not disjoint on opposing position " + std::to_string(i));
      }
    }
  }

  auto bad_positions = [&](const BipartiteType& x) {
    PositionSet bad = 0;
    for (int i = 1; i <= a.n(); ++i) {
      const RightSet ai = a.row(i), xi = x.row(i);
      if ((ai & xi) == 0) {
        bad |= bit(i);
      } else if ((ai & ~xi) != 0) {
        throw Error("extend: position " + std::to_string(i) + " is neither good nor bad");
      }
    }
    return bad;
  };
  BipartiteType cur = out.b;
  PositionSet bad = bad_positions(cur);
  if (bad == 0) throw Error("extend: auxiliary type has no bad position");
  while (bad != 0) {
    out.bad_counts.push_back(set_size(bad));
    BipartiteType next = engine.eliminate(a, cur, lowest(bad));
    const PositionSet next_bad = bad_positions(next);
    if (set_size(next_bad) >= set_size(bad)) throw Error("extend: bad positions did not decrease");
    cur = std::move(next);
    bad = next_bad;
  }
  out.bad_counts.push_back(0);
  if (cur == a || !is_subgraph(a, cur)) throw Error("extend: result does not strictly contain the type");
  for (int i : elements(others)) out.joins_component = out.joins_component || (cur.row(i) & comp.right) != 0;
  // With a single other component the new edges can only run into the chosen one.
  if (!out.joins_component && comps.components.size() + set_size(comps.isolated_right) == 2) {
    throw Error("extend: result has no edge into the extended component");
  }
  out.result = std::move(cur);
  return out;
}

BipartiteType extend_to_connected(const TypeOracle& m, const BipartiteType& a, std::vector<ExtensionStep>* trace) {
  if (!m.contains(a)) throw PreconditionError("extend: " + to_string(a) + " is not in the collection");
  BipartiteType cur = a;
  while (!is_connected(cur)) {
    ExtensionStep step = extend_once(m, cur);
    cur = step.result;
    if (trace != nullptr) trace->push_back(std::move(step));
  }
  return cur;
}

BipartiteType extend_to_connected(const Gtom& m, const BipartiteType& a, std::vector<ExtensionStep>* trace) {
  return extend_to_connected(TypeOracle(m), a, trace);
}

std::pair<BipartiteType, BipartiteType> facet_sharing_witnesses(const TypeOracle& m, const BipartiteType& h,
                                                                const Split& split) {
  const BipartiteType& g = m.ambient();
  const Component first{split.left1, split.right1};
  const Component second{split.left2, split.right2};
  const ComponentDecomposition comps = components(h);
  const bool two = comps.isolated_right == 0 && comps.components.size() == 2 &&
                   ((comps.components[0] == first && comps.components[1] == second) ||
                    (comps.components[0] == second && comps.components[1] == first));
  if (!two) throw PreconditionError("facet witnesses: split does not match the two components");
  const CrossEdges ambient = cross_edges(g, split);
  if (!ambient.left1_right2 || !ambient.left2_right1) {
    throw PreconditionError("facet witnesses: the facet lies on the boundary");
  }
  // Extending from (I1, J̄1) adds an I2–J̄1 edge, and vice versa.
  const BipartiteType joins21 = extend_to_connected(m, extend_once(m, h, first).result);
  const BipartiteType joins12 = extend_to_connected(m, extend_once(m, h, second).result);
  const CrossEdges c12 = cross_edges(joins12, split);
  const CrossEdges c21 = cross_edges(joins21, split);
  if (joins12 == joins21 || !c12.left1_right2 || c12.left2_right1 || !c21.left2_right1 || c21.left1_right2) {
    throw Error("facet witnesses: extensions do not flank the facet from opposite sides");
  }
  return {joins12, joins21};
}

}  // namespace gtom
