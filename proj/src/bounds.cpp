#include "chipfire/bounds.hpp"

#include <Eigen/Dense>

#include "chipfire/error.hpp"

namespace chipfire {

double algebraic_connectivity(const MultiGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "graph has no nodes");
  if (!g.is_connected()) throw Error(ErrorKind::Disconnected, "spectral bound needs a connected graph");
  if (n == 1) return 0.0;

  const IntMatrix q = laplacian(g);
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = static_cast<double>(q(r, c));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  // Ascending; index 0 is the kernel (constants) of a connected graph.
  return solver.eigenvalues()(1);
}

double spectral_lower_bound(const MultiGraph& g) {
  const double lambda1 = algebraic_connectivity(g);
  if (g.node_count() == 1) return 0.0;
  return static_cast<double>(g.node_count()) * lambda1 / (24.0 * static_cast<double>(g.max_degree()));
}

Count conjectured_upper_bound(const MultiGraph& g) {
  const Count numerator = g.edge_count() - static_cast<Count>(g.node_count()) + 4;
  // Floor division; numerator is negative only for a forest with many components.
  return numerator >= 0 ? numerator / 2 : -((-numerator + 1) / 2);
}

BoundsReport bounds_report(const MultiGraph& g) {
  BoundsReport r;
  r.trivial_upper = static_cast<Count>(g.node_count());
  r.algebraic_connectivity = algebraic_connectivity(g);
  r.max_degree = g.max_degree();
  r.spectral_lower = spectral_lower_bound(g);
  r.brill_noether_conjecture = conjectured_upper_bound(g);
  return r;
}

}  // namespace chipfire
