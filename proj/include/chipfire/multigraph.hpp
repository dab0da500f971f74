#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace chipfire {

/// Dense node index, 0..n-1 in declaration order.
using NodeId = std::size_t;
/// Edge counts and chip counts share one integer type.
using Count = std::int64_t;

/// A multigraph edge bundle: `multiplicity` parallel edges between u and v.
struct EdgeBundle {
  NodeId u = 0;
  NodeId v = 0;
  Count multiplicity = 0;

  friend bool operator==(const EdgeBundle&, const EdgeBundle&) = default;
};

/// Node pairs (u < v) standing for every parallel edge between them.
using EdgeSet = std::set<std::pair<NodeId, NodeId>>;

/// Sorted list of nodes.
using NodeSet = std::vector<NodeId>;

/// Row-major dense integer matrix.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Count> data;

  Count operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  Count& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

struct Neighbor {
  NodeId node;
  Count multiplicity;
};

/// Loop-free multigraph stored as a symmetric multiplicity table. Immutable
/// once built.
class MultiGraph {
 public:
  MultiGraph() = default;

  /// Nodes get default names "0", "1", ... unless `names` is given.
  /// Repeated bundles between the same pair accumulate.
  /// Throws LoopRejected, BadMultiplicity, UnknownNode or DuplicateNode.
  MultiGraph(std::size_t node_count, std::span<const EdgeBundle> bundles,
             std::vector<std::string> names = {});

  std::size_t node_count() const noexcept { return n_; }
  /// |E| counted with multiplicity.
  Count edge_count() const noexcept { return edge_count_; }

  Count multiplicity(NodeId u, NodeId v) const { return mult_[u * n_ + v]; }
  Count degree(NodeId u) const { return degree_[u]; }
  Count max_degree() const noexcept;

  const std::vector<Neighbor>& neighbors(NodeId u) const { return adjacency_[u]; }

  const std::string& name(NodeId u) const { return names_[u]; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<NodeId> find(const std::string& name) const;

  /// Bundles with u < v in lexicographic order.
  std::vector<EdgeBundle> bundles() const;

  bool is_connected() const;

  friend bool operator==(const MultiGraph& a, const MultiGraph& b) {
    return a.n_ == b.n_ && a.mult_ == b.mult_;
  }

 private:
  std::size_t n_ = 0;
  Count edge_count_ = 0;
  std::vector<Count> mult_;
  std::vector<Count> degree_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<std::string> names_;
};

/// Q(G): degree on the diagonal, minus the multiplicity elsewhere.
IntMatrix laplacian(const MultiGraph& g);

/// Number of edges (with multiplicity) leaving `side`. Throws DegenerateCut
/// when `side` is empty or the whole node set.
Count cut_size(const MultiGraph& g, std::span<const NodeId> side);

/// Number of edges joining `a` to `b` for disjoint node sets.
Count edges_between(const MultiGraph& g, std::span<const NodeId> a, std::span<const NodeId> b);

/// |E[A]|: edges with both ends inside `a`.
Count edges_within(const MultiGraph& g, std::span<const NodeId> a);

struct MinCut {
  Count value = 0;
  /// Nodes reachable from the source in the final residual network.
  NodeSet source_side;
};

/// Minimum u-v cut by max-flow with capacities equal to multiplicities.
/// Throws DegenerateCut when u == v.
MinCut min_cut_certified(const MultiGraph& g, NodeId u, NodeId v);
Count min_cut(const MultiGraph& g, NodeId u, NodeId v);

/// Components of (V, E \ removed), each sorted, ordered by smallest member.
std::vector<NodeSet> connected_components(const MultiGraph& g, const EdgeSet& removed = {});

}  // namespace chipfire
