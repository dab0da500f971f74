#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "chipfire/divisor.hpp"
#include "chipfire/multigraph.hpp"

namespace chipfire {

struct SearchConfig {
  NodeId base_point = 0;
  /// Defaults to |V|, which always admits the all-ones divisor.
  std::optional<Count> max_degree;
  std::size_t worker_count = 1;
  /// Start at ceil of the spectral lower bound. Off by default.
  bool spectral_pruning = false;
};

struct GonalityResult {
  Count gonality = 0;
  Divisor witness;
  /// Candidates tested, in canonical order, up to and including the witness.
  std::size_t candidates_examined = 0;
  std::vector<Count> degree_schedule;
};

/// Visits the q-reduced effective divisors of degree d with at least one
/// chip on q, in lexicographic order of the off-q entries. The visitor
/// returns false to stop.
void for_each_reduced_candidate(const MultiGraph& g, NodeId q, Count d,
                                const std::function<bool(const Divisor&)>& visit);

std::vector<Divisor> enumerate_reduced_candidates(const MultiGraph& g, NodeId q, Count d);

struct DegreeSearch {
  std::optional<Divisor> witness;
  std::size_t candidates_examined = 0;
};

/// First positive-rank candidate of degree d in canonical order. The answer
/// and the examined count do not depend on `workers`.
DegreeSearch search_degree(const MultiGraph& g, NodeId q, Count d, std::size_t workers);

/// Smallest degree of a positive-rank divisor. Throws Disconnected,
/// InvalidArgument for an empty graph, or SearchCapped.
GonalityResult gonality(const MultiGraph& g, const SearchConfig& cfg = {});

}  // namespace chipfire
