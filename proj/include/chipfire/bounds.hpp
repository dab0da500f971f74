#pragma once

#include "chipfire/multigraph.hpp"

namespace chipfire {

struct BoundsReport {
  Count trivial_lower = 1;
  Count trivial_upper = 0;
  double algebraic_connectivity = 0.0;
  Count max_degree = 0;
  double spectral_lower = 0.0;
  /// Conjectural; never used for pruning or correctness.
  Count brill_noether_conjecture = 0;
};

/// Second-smallest Laplacian eigenvalue. Throws Disconnected.
double algebraic_connectivity(const MultiGraph& g);

/// |V| λ1 / (24 Δ), with λ1 the smallest nonzero Laplacian eigenvalue and
/// Δ the maximum degree. A single node gives 0. Throws Disconnected.
double spectral_lower_bound(const MultiGraph& g);

/// floor((|E| - |V| + 4) / 2); a conjectured upper bound on gonality.
Count conjectured_upper_bound(const MultiGraph& g);

BoundsReport bounds_report(const MultiGraph& g);

}  // namespace chipfire
