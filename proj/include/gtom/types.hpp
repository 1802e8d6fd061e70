#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gtom {

// Right vertices 1..d live in bit (j-1); positions 1..n likewise.
using RightSet = std::uint32_t;
using PositionSet = std::uint32_t;

inline constexpr int kMaxSide = 30;

constexpr RightSet bit(int one_based) { return RightSet{1} << (one_based - 1); }
constexpr RightSet full_set(int size) { return size >= 32 ? ~RightSet{0} : (RightSet{1} << size) - 1; }
constexpr int set_size(RightSet s) { return std::popcount(s); }
constexpr bool contains(RightSet s, int one_based) { return (s & bit(one_based)) != 0; }
constexpr int lowest(RightSet s) { return std::countr_zero(s) + 1; }

std::vector<int> elements(RightSet s);
RightSet make_set(std::span<const int> one_based);
std::string set_to_string(RightSet s);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A subgraph of K_{n,d} stored as one bitmask row per left position.
///
/// Rows may be empty for intermediate graphs (intersections, facet
/// subgraphs); a proper (n,d)-type has every row nonempty, see is_type().
class BipartiteType {
 public:
  BipartiteType() = default;
  BipartiteType(int n, int d, std::vector<RightSet> rows);
  static BipartiteType from_lists(int d, const std::vector<std::vector<int>>& rows);

  int n() const { return n_; }
  int d() const { return d_; }
  // 1-based position.
  RightSet row(int i) const { return rows_.at(static_cast<std::size_t>(i - 1)); }
  const std::vector<RightSet>& rows() const { return rows_; }

  bool is_type() const;
  bool has_edge(int i, int j) const { return contains(row(i), j); }
  int edge_count() const;
  RightSet covered() const;

  friend bool operator==(const BipartiteType&, const BipartiteType&) = default;
  friend std::strong_ordering operator<=>(const BipartiteType& a, const BipartiteType& b);

 private:
  int n_ = 0;
  int d_ = 0;
  std::vector<RightSet> rows_;
};

/// Throws PreconditionError unless every row is nonempty.
void require_type(const BipartiteType& a, const char* what);
void require_same_shape(const BipartiteType& a, const BipartiteType& b);

std::string to_string(const BipartiteType& a);

struct TypeHash {
  std::size_t operator()(const BipartiteType& a) const noexcept;
};

class OrderedPartition {
 public:
  OrderedPartition(int d, std::vector<RightSet> blocks);

  static OrderedPartition from_order(int d, std::span<const int> order);
  static OrderedPartition coarse(int d, RightSet first);

  int d() const { return d_; }
  const std::vector<RightSet>& blocks() const { return blocks_; }
  bool is_total() const { return static_cast<int>(blocks_.size()) == d_; }
  bool is_coarse() const { return blocks_.size() == 2; }

 private:
  int d_;
  std::vector<RightSet> blocks_;
};

struct Component {
  PositionSet left = 0;
  RightSet right = 0;
  friend bool operator==(const Component&, const Component&) = default;
};

struct ComponentDecomposition {
  std::vector<Component> components;  // sorted by smallest position
  RightSet isolated_right = 0;
};

BipartiteType refine(const BipartiteType& a, const OrderedPartition& p);
BipartiteType refine_by_order(const BipartiteType& a, std::span<const int> order);

std::vector<BipartiteType> total_refinements(const BipartiteType& g);
/// Closure of {a} under refinement (all ordered partitions), sorted.
std::vector<BipartiteType> all_refinements(const BipartiteType& a);
/// True iff t == refine(c, P) for some ordered partition P.
bool is_refinement_of(const BipartiteType& t, const BipartiteType& c);

void for_each_ordered_partition(int d, const std::function<void(const OrderedPartition&)>& fn);
void for_each_coarse_partition(int d, const std::function<void(const OrderedPartition&)>& fn);

bool is_compatible(const BipartiteType& a, const BipartiteType& b);
/// A closed walk alternating between a-edges and b-edges that is not
/// contained in a ∩ b, as a vertex sequence (positions as i, right vertices
/// as -j). Empty when the pair is compatible.
std::vector<int> incompatibility_witness(const BipartiteType& a, const BipartiteType& b);

bool agree_on(const BipartiteType& a, const BipartiteType& b, RightSet j_set, int i);

struct AgreementViolation {
  RightSet component_right = 0;
  int position = 0;
  RightSet a_part = 0;
  RightSet b_part = 0;
};
std::vector<AgreementViolation> agreement_lemma_check(const BipartiteType& a, const BipartiteType& b);

ComponentDecomposition components(const BipartiteType& a);

BipartiteType union_type(const BipartiteType& a, const BipartiteType& b);
BipartiteType intersection(const BipartiteType& a, const BipartiteType& b);
bool is_subgraph(const BipartiteType& a, const BipartiteType& b);
bool is_spanning(const BipartiteType& a);
bool is_connected(const BipartiteType& a);
bool is_spanning_tree(const BipartiteType& a);

/// Restriction to the given positions/right vertices; other rows become empty.
BipartiteType restrict(const BipartiteType& a, PositionSet positions, RightSet right);

}  // namespace gtom
