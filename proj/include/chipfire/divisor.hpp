#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chipfire/multigraph.hpp"

namespace chipfire {

/// Integer chip count per node.
class Divisor {
 public:
  Divisor() = default;
  explicit Divisor(std::size_t node_count) : values_(node_count, 0) {}
  explicit Divisor(std::vector<Count> values) : values_(std::move(values)) {}

  static Divisor all_ones(std::size_t node_count) { return Divisor(std::vector<Count>(node_count, 1)); }
  /// One chip at v.
  static Divisor unit(std::size_t node_count, NodeId v);

  std::size_t size() const noexcept { return values_.size(); }
  Count operator[](NodeId v) const { return values_[v]; }
  Count& operator[](NodeId v) { return values_[v]; }
  const std::vector<Count>& values() const noexcept { return values_; }

  Count degree() const noexcept;
  bool is_effective() const noexcept;

  Divisor& operator+=(const Divisor& other);
  Divisor& operator-=(const Divisor& other);
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }

  friend bool operator==(const Divisor&, const Divisor&) = default;
  friend auto operator<=>(const Divisor&, const Divisor&) = default;

 private:
  std::vector<Count> values_;
};

/// Integer vector x; applying it maps D to D - Q x.
class FiringScript {
 public:
  FiringScript() = default;
  explicit FiringScript(std::size_t node_count) : x_(node_count, 0) {}
  explicit FiringScript(std::vector<Count> x) : x_(std::move(x)) {}

  /// 1_U.
  static FiringScript indicator(std::size_t node_count, std::span<const NodeId> nodes);

  std::size_t size() const noexcept { return x_.size(); }
  Count operator[](NodeId v) const { return x_[v]; }
  Count& operator[](NodeId v) { return x_[v]; }
  const std::vector<Count>& values() const noexcept { return x_; }

  bool is_zero() const noexcept;
  /// Shifts by a constant so the minimum entry is 0. Q annihilates constants.
  void normalize();

  friend bool operator==(const FiringScript&, const FiringScript&) = default;

 private:
  std::vector<Count> x_;
};

struct ReductionResult {
  Divisor reduced;
  /// reduced = input - Q * script, normalized to min 0.
  FiringScript script;
  NodeId q = 0;
};

struct ChainDecomposition {
  /// U_1 ⊆ U_2 ⊆ ... ⊆ U_k, each sorted.
  std::vector<NodeSet> sets;
  /// D_t after firing U_1..U_t.
  std::vector<Divisor> intermediates;
};

/// Partition of V under ≡_D together with the D-blocking edges.
struct EquivalenceClasses {
  std::vector<NodeSet> cells;
  std::vector<std::size_t> cell_of;
  EdgeSet blocking_edges;

  bool same_cell(NodeId u, NodeId v) const { return cell_of[u] == cell_of[v]; }
};

struct ComponentChips {
  NodeSet nodes;
  Count chips = 0;
};

/// Default cap on the number of candidate divisors the exact ≡_D routine
/// is willing to scan.
inline constexpr std::size_t kDefaultClassCap = 1'000'000;

/// D - Q 1_U. Requires D effective and every v in U able to pay its
/// outgoing cut edges; throws NotEffective / InsufficientChips otherwise.
Divisor fire_set(const MultiGraph& g, const Divisor& d, std::span<const NodeId> nodes);

/// D - Q x, no effectiveness requirement.
Divisor apply_script(const MultiGraph& g, const Divisor& d, const FiringScript& x);

/// The unique q-reduced divisor equivalent to D, with the producing script.
///
/// Phase one clears debt off q by firing BFS balls around q, outermost
/// level first. Phase two runs Dhar's burning algorithm from q and fires the
/// unburnt set (as many times at once as stays legal) until everything
/// burns. Throws Disconnected when g is not connected.
ReductionResult reduce(const MultiGraph& g, const Divisor& d, NodeId q);

/// Nodes left unburnt by Dhar's algorithm started at `start`: for an
/// effective D this is the largest set avoiding `start` that can fire.
NodeSet dhar_unburnt(const MultiGraph& g, const Divisor& d, NodeId start);

bool equivalent(const MultiGraph& g, const Divisor& a, const Divisor& b, NodeId q = 0);
bool effective_equivalent(const MultiGraph& g, const Divisor& d, NodeId q = 0);

/// Baker-Norine rank, -1 when D has no effective equivalent. Subtracted
/// divisors E range over effective divisors of exactly k chips, k = 0, 1, ...
Count rank(const MultiGraph& g, const Divisor& d);

/// rank(D) >= 1, decided by one reduction per node.
bool positive_rank(const MultiGraph& g, const Divisor& d);

/// Nested firing sets turning D into D' through effective divisors. Empty
/// when D == D'. Throws NotEffective, NotEquivalent, or InvariantViolation.
ChainDecomposition chain_decompose(const MultiGraph& g, const Divisor& from, const Divisor& to);

/// Exact ≡_D for effective D. Scans every effective divisor of degree
/// deg(D), keeps the members of D's class, and for each member and each
/// node v separates v from the largest set that can fire while avoiding v.
/// Throws ClassTooLarge when the scan would exceed `cap` divisors.
EquivalenceClasses equivalence_classes(const MultiGraph& g, const Divisor& d,
                                       std::size_t cap = kDefaultClassCap);

/// Sufficient test for u ≡_D v: every u-v cut has more than deg(D) edges.
bool equivalent_by_cut(const MultiGraph& g, const Divisor& d, NodeId u, NodeId v);

/// Chip totals on the components of (V, E \ F), F the blocking edges.
std::vector<ComponentChips> component_chip_counts(const MultiGraph& g, const Divisor& d,
                                                  const EquivalenceClasses& classes);

/// Accepts "name:count,..." (missing nodes get 0) or a bare comma-separated
/// vector in node order. Throws BadDivisorLiteral.
Divisor parse_divisor(const MultiGraph& g, std::string_view literal);

std::string format_divisor(const Divisor& d);

}  // namespace chipfire
