#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "chipfire/divisor.hpp"
#include "chipfire/graph_io.hpp"
#include "chipfire/multigraph.hpp"
#include "chipfire/oracles.hpp"

namespace chipfire::testing {

inline MultiGraph make_graph(std::size_t n, std::vector<EdgeBundle> bundles) {
  return MultiGraph(n, bundles);
}

inline MultiGraph edgeless(std::size_t n) { return MultiGraph(n, std::vector<EdgeBundle>{}); }

inline MultiGraph complete(std::size_t n) {
  std::vector<EdgeBundle> b;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) b.push_back({u, v, 1});
  }
  return MultiGraph(n, b);
}

inline MultiGraph cycle(std::size_t n) {
  std::vector<EdgeBundle> b;
  for (NodeId u = 0; u < n; ++u) b.push_back({u, (u + 1) % n, 1});
  return MultiGraph(n, b);
}

inline MultiGraph path(std::size_t n) {
  std::vector<EdgeBundle> b;
  for (NodeId u = 0; u + 1 < n; ++u) b.push_back({u, u + 1, 1});
  return MultiGraph(n, b);
}

/// Two nodes joined by m parallel edges.
inline MultiGraph banana(Count m) { return MultiGraph(2, std::vector<EdgeBundle>{{0, 1, m}}); }

/// Four nodes, four edges: a triangle with a pendant node.
inline MultiGraph paw() { return MultiGraph(4, std::vector<EdgeBundle>{{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {2, 3, 1}}); }

/// Random loop-free multigraph: each pair gets 0..max_mult edges with
/// probability `density` of being nonzero.
inline MultiGraph random_multigraph(std::mt19937_64& rng, std::size_t n, Count max_mult, double density) {
  std::bernoulli_distribution present(density);
  std::uniform_int_distribution<Count> mult(1, std::max<Count>(1, max_mult));
  std::vector<EdgeBundle> b;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (present(rng)) b.push_back({u, v, mult(rng)});
    }
  }
  return MultiGraph(n, b);
}

/// Random connected multigraph: a random spanning tree plus extra bundles.
inline MultiGraph random_connected(std::mt19937_64& rng, std::size_t n, Count max_mult, double density) {
  std::uniform_int_distribution<Count> mult(1, std::max<Count>(1, max_mult));
  std::bernoulli_distribution extra(density);
  std::vector<EdgeBundle> b;
  for (NodeId v = 1; v < n; ++v) {
    std::uniform_int_distribution<NodeId> parent(0, v - 1);
    b.push_back({parent(rng), v, mult(rng)});
  }
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (extra(rng)) b.push_back({u, v, mult(rng)});
    }
  }
  return MultiGraph(n, b);
}

inline Divisor random_effective(std::mt19937_64& rng, std::size_t n, Count degree) {
  Divisor d(n);
  std::uniform_int_distribution<NodeId> pick(0, n - 1);
  for (Count i = 0; i < degree; ++i) d[pick(rng)] += 1;
  return d;
}

inline Divisor random_divisor(std::mt19937_64& rng, std::size_t n, Count lo, Count hi) {
  Divisor d(n);
  std::uniform_int_distribution<Count> value(lo, hi);
  for (NodeId v = 0; v < n; ++v) d[v] = value(rng);
  return d;
}

/// Every connected multigraph on n nodes with pair multiplicities 0..max_mult.
inline void for_each_connected_multigraph(std::size_t n, Count max_mult, const std::function<void(const MultiGraph&)>& f) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  std::vector<Count> mult(pairs.size(), 0);
  for (;;) {
    std::vector<EdgeBundle> b;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (mult[i] > 0) b.push_back({pairs[i].first, pairs[i].second, mult[i]});
    }
    MultiGraph g(n, b);
    if (g.is_connected()) f(g);
    std::size_t i = 0;
    while (i < mult.size() && mult[i] == max_mult) mult[i++] = 0;
    if (i == mult.size()) break;
    ++mult[i];
  }
}

/// The q-reduced representative found by brute force: the member of the
/// effective class from which no set avoiding q can fire.
inline Divisor reduced_by_class(const MultiGraph& g, const Divisor& d, NodeId q) {
  const auto cls = oracle::effective_class_enumerate(g, d);
  std::vector<Divisor> found;
  for (std::size_t i = 0; i < cls.members.size(); ++i) {
    bool avoids = false;
    for (const auto& set : cls.moves[i]) {
      if (std::find(set.begin(), set.end(), q) == set.end()) avoids = true;
    }
    if (!avoids) found.push_back(cls.members[i]);
  }
  if (found.size() != 1) throw std::logic_error("class has " + std::to_string(found.size()) + " q-reduced members");
  return found.front();
}

}  // namespace chipfire::testing
