#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "chipfire/divisor.hpp"
#include "chipfire/multigraph.hpp"

// Brute-force reference implementations. Nothing in here touches the
// reduction or burning code; they decide the same questions from the
// definitions so the solver can be checked against them.
namespace chipfire::oracle {

inline constexpr std::size_t kClassCap = 1'000'000;
inline constexpr std::size_t kMaxAlphaNodes = 40;
inline constexpr std::size_t kMaxSubsetNodes = 20;

struct IndependentSet {
  Count alpha = 0;
  NodeSet witness;
};

/// Maximum independent set by branch and bound. Throws OracleTooLarge
/// above kMaxAlphaNodes nodes.
IndependentSet alpha_bruteforce(const MultiGraph& g);

/// True when no edge has both ends in `nodes`.
bool is_independent(const MultiGraph& g, std::span<const NodeId> nodes);

struct EffectiveClass {
  std::vector<Divisor> members;
  /// moves[i]: every proper nonempty subset that can fire from members[i].
  std::vector<std::vector<NodeSet>> moves;
};

/// Closure of {D} under legal set-firings, breadth first, trying all
/// 2^|V| - 2 proper subsets at each member.
EffectiveClass effective_class_enumerate(const MultiGraph& g, const Divisor& d, std::size_t cap = kClassCap);

/// Decides D ~ D' exactly by testing whether D - D' lies in the integer
/// column lattice of Q. With the reduced Laplacian L (row and column 0
/// removed), that holds iff adj(L) w ≡ 0 (mod det L) for w the tail of
/// D - D'. Needs a connected graph.
class Lattice {
 public:
  explicit Lattice(const MultiGraph& g);

  bool equivalent(const Divisor& a, const Divisor& b) const;
  /// Some effective divisor of the same degree lies in D's class. Scans all
  /// effective divisors of that degree once per degree and caches their
  /// class invariants.
  bool effective_equivalent(const Divisor& d, std::size_t cap = kClassCap);

  /// |Jac(G)|, the number of spanning trees.
  Count determinant() const { return det_; }

 private:
  std::vector<Count> invariant(const Divisor& d) const;

  std::size_t n_;
  Count det_ = 1;
  std::vector<Count> adj_;
  std::map<Count, std::set<std::vector<Count>>> effective_invariants_;
};

Count rank_bruteforce(const MultiGraph& g, const Divisor& d);
Count rank_bruteforce(const MultiGraph& g, Lattice& lattice, const Divisor& d);

/// rank >= 1 from the definition: D - v has an effective equivalent for all v.
bool positive_rank_bruteforce(const MultiGraph& g, Lattice& lattice, const Divisor& d);

struct GonalityWitness {
  Count gonality = 0;
  Divisor witness;
};

/// Scans every effective divisor of degree 1, 2, ..., |V|.
GonalityWitness gonality_bruteforce(const MultiGraph& g, std::size_t cap = kClassCap);

/// ≡_D straight from the effective class: u and v are split iff some member
/// can fire a set containing exactly one of them.
EquivalenceClasses equivalence_exact(const MultiGraph& g, const Divisor& d, std::size_t cap = kClassCap);

}  // namespace chipfire::oracle
