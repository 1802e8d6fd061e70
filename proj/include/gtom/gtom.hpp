#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "gtom/types.hpp"

namespace gtom {

/// An ambient graph G together with a finite set of (n,d)-types.
///
/// Types are stored sorted and deduplicated. Construction checks only the
/// structural invariants (G connected and spanning, shapes agree, rows
/// nonempty); the axioms are checked separately.
class Gtom {
 public:
  Gtom(BipartiteType ambient, std::vector<BipartiteType> types);

  const BipartiteType& ambient() const { return ambient_; }
  const std::vector<BipartiteType>& types() const { return types_; }
  std::size_t size() const { return types_.size(); }
  bool contains(const BipartiteType& t) const { return index_.count(t) != 0; }

 private:
  BipartiteType ambient_;
  std::vector<BipartiteType> types_;
  std::unordered_set<BipartiteType, TypeHash> index_;
};

/// Membership view used by the elimination search and the generation
/// algorithms. Either backed by an explicit Gtom or by a predicate (for
/// type sets too large to materialize, e.g. the faces of a subdivision).
class TypeOracle {
 public:
  using Membership = std::function<bool(const BipartiteType&)>;

  explicit TypeOracle(const Gtom& m);
  TypeOracle(BipartiteType ambient, Membership contains);

  const BipartiteType& ambient() const { return ambient_; }
  bool contains(const BipartiteType& t) const { return contains_(t); }
  const std::vector<BipartiteType>* explicit_types() const { return explicit_; }

 private:
  BipartiteType ambient_;
  Membership contains_;
  const std::vector<BipartiteType>* explicit_ = nullptr;
};

struct Witness {
  std::vector<BipartiteType> types;
  int position = 0;
  std::optional<BipartiteType> missing;
  std::vector<int> walk;  // alternating closed walk, positions as i, right vertices as -j
  std::string note;
};

struct AxiomReport {
  std::string axiom;
  bool holds = true;
  std::vector<Witness> witnesses;
};

enum class CheckMode { kCollectAll, kFast };
enum class SurroundingMode { kCoarse, kExhaustive };

struct CheckOptions {
  CheckMode mode = CheckMode::kCollectAll;
  SurroundingMode surrounding = SurroundingMode::kCoarse;
};

AxiomReport check_subgraph(const Gtom& m, CheckOptions opt = {});
AxiomReport check_generalized_boundary(const Gtom& m, CheckOptions opt = {});
AxiomReport check_surrounding(const Gtom& m, CheckOptions opt = {});
AxiomReport check_comparability(const Gtom& m, CheckOptions opt = {});
AxiomReport check_elimination(const Gtom& m, CheckOptions opt = {});

struct GtomVerdict {
  bool holds = true;
  std::vector<AxiomReport> reports;
};
GtomVerdict is_gtom(const Gtom& m, CheckOptions opt = {});

bool is_eliminant(const BipartiteType& c, const BipartiteType& a, const BipartiteType& b, int i);

/// All C in the collection obtained by eliminating between a and b at
/// position i (1-based), sorted ascending.
std::vector<BipartiteType> eliminants(const TypeOracle& m, const BipartiteType& a, const BipartiteType& b, int i);
/// Same, but a and b must belong to m (PreconditionError otherwise).
std::vector<BipartiteType> eliminants(const Gtom& m, const BipartiteType& a, const BipartiteType& b, int i);
/// Canonically smallest eliminant, or nullopt if none exists.
std::optional<BipartiteType> smallest_eliminant(const TypeOracle& m, const BipartiteType& a, const BipartiteType& b,
                                                int i);

}  // namespace gtom
