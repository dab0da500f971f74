#include "chipfire/multigraph.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <unordered_set>

#include "chipfire/error.hpp"

namespace chipfire {

MultiGraph::MultiGraph(std::size_t node_count, std::span<const EdgeBundle> bundles,
                       std::vector<std::string> names)
    : n_(node_count), mult_(node_count * node_count, 0), degree_(node_count, 0),
      adjacency_(node_count), names_(std::move(names)) {
  if (names_.empty()) {
    names_.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) names_.push_back(std::to_string(i));
  } else if (names_.size() != n_) {
    throw Error(ErrorKind::InvalidArgument, "name list does not match node count");
  }
  std::unordered_set<std::string> seen;
  for (const auto& name : names_) {
    if (!seen.insert(name).second) throw Error(ErrorKind::DuplicateNode, "duplicate node '" + name + "'");
  }

  for (const auto& b : bundles) {
    if (b.u >= n_ || b.v >= n_) throw Error(ErrorKind::UnknownNode, "edge endpoint out of range");
    if (b.u == b.v) throw Error(ErrorKind::LoopRejected, "loop at node '" + names_[b.u] + "'");
    if (b.multiplicity < 1) {
      throw Error(ErrorKind::BadMultiplicity, "multiplicity " + std::to_string(b.multiplicity) + " < 1");
    }
    mult_[b.u * n_ + b.v] += b.multiplicity;
    mult_[b.v * n_ + b.u] += b.multiplicity;
    degree_[b.u] += b.multiplicity;
    degree_[b.v] += b.multiplicity;
    edge_count_ += b.multiplicity;
  }

  for (NodeId u = 0; u < n_; ++u) {
    for (NodeId v = 0; v < n_; ++v) {
      if (Count m = mult_[u * n_ + v]; m > 0) adjacency_[u].push_back({v, m});
    }
  }
}

Count MultiGraph::max_degree() const noexcept {
  return degree_.empty() ? 0 : *std::max_element(degree_.begin(), degree_.end());
}

std::optional<NodeId> MultiGraph::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<NodeId>(it - names_.begin());
}

std::vector<EdgeBundle> MultiGraph::bundles() const {
  std::vector<EdgeBundle> out;
  for (NodeId u = 0; u < n_; ++u) {
    for (const auto& nb : adjacency_[u]) {
      if (nb.node > u) out.push_back({u, nb.node, nb.multiplicity});
    }
  }
  return out;
}

bool MultiGraph::is_connected() const {
  return n_ <= 1 || connected_components(*this).size() == 1;
}

IntMatrix laplacian(const MultiGraph& g) {
  const std::size_t n = g.node_count();
  IntMatrix q{n, n, std::vector<Count>(n * n, 0)};
  for (NodeId u = 0; u < n; ++u) {
    q(u, u) = g.degree(u);
    for (const auto& nb : g.neighbors(u)) q(u, nb.node) = -nb.multiplicity;
  }
  return q;
}

namespace {

std::vector<char> membership(const MultiGraph& g, std::span<const NodeId> nodes) {
  std::vector<char> in(g.node_count(), 0);
  for (NodeId v : nodes) {
    if (v >= g.node_count()) throw Error(ErrorKind::UnknownNode, "node index out of range");
    in[v] = 1;
  }
  return in;
}

}  // namespace

Count cut_size(const MultiGraph& g, std::span<const NodeId> side) {
  auto in = membership(g, side);
  const auto members = std::count(in.begin(), in.end(), 1);
  if (members == 0 || static_cast<std::size_t>(members) == g.node_count()) {
    throw Error(ErrorKind::DegenerateCut, "cut side must be a proper nonempty subset");
  }
  Count total = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (!in[u]) continue;
    for (const auto& nb : g.neighbors(u)) {
      if (!in[nb.node]) total += nb.multiplicity;
    }
  }
  return total;
}

Count edges_between(const MultiGraph& g, std::span<const NodeId> a, std::span<const NodeId> b) {
  auto in_b = membership(g, b);
  Count total = 0;
  for (NodeId u : a) {
    for (const auto& nb : g.neighbors(u)) {
      if (in_b[nb.node]) total += nb.multiplicity;
    }
  }
  return total;
}

Count edges_within(const MultiGraph& g, std::span<const NodeId> a) {
  auto in = membership(g, a);
  Count total = 0;
  for (NodeId u : a) {
    for (const auto& nb : g.neighbors(u)) {
      if (in[nb.node] && nb.node > u) total += nb.multiplicity;
    }
  }
  return total;
}

MinCut min_cut_certified(const MultiGraph& g, NodeId source, NodeId sink) {
  const std::size_t n = g.node_count();
  if (source >= n || sink >= n) throw Error(ErrorKind::UnknownNode, "node index out of range");
  if (source == sink) throw Error(ErrorKind::DegenerateCut, "source and sink coincide");

  // Edmonds-Karp on the dense residual table; undirected edges give
  // capacity in both directions.
  std::vector<Count> residual(n * n, 0);
  for (NodeId u = 0; u < n; ++u) {
    for (const auto& nb : g.neighbors(u)) residual[u * n + nb.node] = nb.multiplicity;
  }

  Count flow = 0;
  std::vector<NodeId> parent(n);
  std::vector<char> seen(n);
  for (;;) {
    std::fill(seen.begin(), seen.end(), 0);
    std::queue<NodeId> frontier;
    frontier.push(source);
    seen[source] = 1;
    while (!frontier.empty() && !seen[sink]) {
      NodeId u = frontier.front();
      frontier.pop();
      for (NodeId v = 0; v < n; ++v) {
        if (!seen[v] && residual[u * n + v] > 0) {
          seen[v] = 1;
          parent[v] = u;
          frontier.push(v);
        }
      }
    }
    if (!seen[sink]) break;

    Count bottleneck = std::numeric_limits<Count>::max();
    for (NodeId v = sink; v != source; v = parent[v]) {
      bottleneck = std::min(bottleneck, residual[parent[v] * n + v]);
    }
    for (NodeId v = sink; v != source; v = parent[v]) {
      residual[parent[v] * n + v] -= bottleneck;
      residual[v * n + parent[v]] += bottleneck;
    }
    flow += bottleneck;
  }

  MinCut cut{flow, {}};
  for (NodeId v = 0; v < n; ++v) {
    if (seen[v]) cut.source_side.push_back(v);
  }
  return cut;
}

Count min_cut(const MultiGraph& g, NodeId u, NodeId v) { return min_cut_certified(g, u, v).value; }

std::vector<NodeSet> connected_components(const MultiGraph& g, const EdgeSet& removed) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> label(n, n);
  std::vector<NodeSet> components;
  for (NodeId start = 0; start < n; ++start) {
    if (label[start] != n) continue;
    const std::size_t id = components.size();
    NodeSet members{start};
    label[start] = id;
    for (std::size_t i = 0; i < members.size(); ++i) {
      const NodeId u = members[i];
      for (const auto& nb : g.neighbors(u)) {
        if (label[nb.node] != n) continue;
        if (removed.contains({std::min(u, nb.node), std::max(u, nb.node)})) continue;
        label[nb.node] = id;
        members.push_back(nb.node);
      }
    }
    std::sort(members.begin(), members.end());
    components.push_back(std::move(members));
  }
  return components;
}

}  // namespace chipfire
