#include "chipfire/oracles.hpp"

#include <algorithm>
#include <bit>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <deque>
#include <limits>

#include "chipfire/compositions.hpp"
#include "chipfire/error.hpp"

namespace chipfire::oracle {

namespace {

using Mask = std::uint64_t;

void check_size(const MultiGraph& g, const Divisor& d) {
  if (d.size() != g.node_count()) throw Error(ErrorKind::InvalidArgument, "divisor size mismatch");
}

struct AlphaSearch {
  std::vector<Mask> closed_neighborhood;
  std::size_t best = 0;
  Mask best_set = 0;

  void run(Mask candidates, Mask chosen, std::size_t size) {
    if (candidates == 0) {
      if (size > best) {
        best = size;
        best_set = chosen;
      }
      return;
    }
    if (size + static_cast<std::size_t>(std::popcount(candidates)) <= best) return;
    const int v = std::countr_zero(candidates);
    run(candidates & ~closed_neighborhood[v], chosen | (Mask{1} << v), size + 1);
    run(candidates & ~(Mask{1} << v), chosen, size);
  }
};

}  // namespace

IndependentSet alpha_bruteforce(const MultiGraph& g) {
  const std::size_t n = g.node_count();
  if (n > kMaxAlphaNodes) {
    throw Error(ErrorKind::OracleTooLarge, "independence oracle is limited to " + std::to_string(kMaxAlphaNodes) +
                                               " nodes");
  }
  AlphaSearch search;
  search.closed_neighborhood.assign(n, 0);
  for (NodeId u = 0; u < n; ++u) {
    search.closed_neighborhood[u] |= Mask{1} << u;
    for (const auto& nb : g.neighbors(u)) search.closed_neighborhood[u] |= Mask{1} << nb.node;
  }
  const Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  search.run(all, 0, 0);

  IndependentSet out;
  out.alpha = static_cast<Count>(search.best);
  for (NodeId v = 0; v < n; ++v) {
    if (search.best_set >> v & 1) out.witness.push_back(v);
  }
  return out;
}

bool is_independent(const MultiGraph& g, std::span<const NodeId> nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (nodes[i] == nodes[j] || g.multiplicity(nodes[i], nodes[j]) > 0) return false;
    }
  }
  return true;
}

EffectiveClass effective_class_enumerate(const MultiGraph& g, const Divisor& d, std::size_t cap) {
  check_size(g, d);
  if (!d.is_effective()) throw Error(ErrorKind::NotEffective, "class enumeration starts from an effective divisor");
  const std::size_t n = g.node_count();
  if (n > kMaxSubsetNodes) {
    throw Error(ErrorKind::OracleTooLarge, "subset enumeration is limited to " + std::to_string(kMaxSubsetNodes) +
                                               " nodes");
  }

  EffectiveClass cls;
  std::map<std::vector<Count>, std::size_t> index;
  index.emplace(d.values(), 0);
  cls.members.push_back(d);

  const Mask full = (Mask{1} << n) - 1;
  for (std::size_t i = 0; i < cls.members.size(); ++i) {
    const Divisor current = cls.members[i];
    std::vector<NodeSet> moves;
    for (Mask set = 1; set < full; ++set) {
      std::vector<Count> next = current.values();
      bool legal = true;
      for (NodeId v = 0; v < n && legal; ++v) {
        if (!(set >> v & 1)) continue;
        for (const auto& nb : g.neighbors(v)) {
          if (set >> nb.node & 1) continue;
          next[v] -= nb.multiplicity;
          next[nb.node] += nb.multiplicity;
        }
        legal = next[v] >= 0;
      }
      // Every node of the set has been charged once its turn came, and
      // later nodes only send chips outward, so a non-negative balance at
      // each charge point is the legality test.
      if (!legal) continue;
      NodeSet members;
      for (NodeId v = 0; v < n; ++v) {
        if (set >> v & 1) members.push_back(v);
      }
      moves.push_back(std::move(members));
      if (!index.contains(next)) {
        if (cls.members.size() >= cap) {
          throw Error(ErrorKind::OracleTooLarge, "effective class exceeds " + std::to_string(cap) + " members");
        }
        index.emplace(next, cls.members.size());
        cls.members.emplace_back(std::move(next));
      }
    }
    cls.moves.push_back(std::move(moves));
  }
  return cls;
}

Lattice::Lattice(const MultiGraph& g) : n_(g.node_count()) {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  if (n_ == 0) throw Error(ErrorKind::InvalidArgument, "graph has no nodes");
  if (n_ == 1) return;

  const std::size_t m = n_ - 1;
  const IntMatrix q = laplacian(g);
  // Gauss-Jordan on [L | I] over the rationals.
  std::vector<std::vector<cpp_rational>> a(m, std::vector<cpp_rational>(2 * m));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) a[r][c] = q(r + 1, c + 1);
    a[r][m + r] = 1;
  }
  cpp_rational det = 1;
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    while (pivot < m && a[pivot][col] == 0) ++pivot;
    if (pivot == m) throw Error(ErrorKind::Disconnected, "reduced Laplacian is singular");
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    const cpp_rational p = a[col][col];
    det *= p;
    for (auto& x : a[col]) x /= p;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const cpp_rational f = a[r][col];
      for (std::size_t c = 0; c < 2 * m; ++c) a[r][c] -= f * a[col][c];
    }
  }

  const cpp_int limit = cpp_int(1) << 62;
  auto to_count = [&](const cpp_rational& x) {
    if (denominator(x) != 1) throw Error(ErrorKind::InvariantViolation, "adjugate entry is not integral");
    const cpp_int v = numerator(x);
    if (abs(v) >= limit) throw Error(ErrorKind::OracleTooLarge, "lattice determinant too large");
    return static_cast<Count>(v);
  };
  det_ = to_count(det);
  if (det_ < 0) throw Error(ErrorKind::InvariantViolation, "reduced Laplacian has negative determinant");
  adj_.resize(m * m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) adj_[r * m + c] = to_count(a[r][m + c] * det);
  }
}

std::vector<Count> Lattice::invariant(const Divisor& d) const {
  if (d.size() != n_) throw Error(ErrorKind::InvalidArgument, "divisor size mismatch");
  std::vector<Count> out{d.degree()};
  const std::size_t m = n_ - 1;
  for (std::size_t r = 0; r < m; ++r) {
    __int128 acc = 0;
    for (std::size_t c = 0; c < m; ++c) acc += static_cast<__int128>(adj_[r * m + c]) * d[c + 1];
    acc %= det_;
    if (acc < 0) acc += det_;
    out.push_back(static_cast<Count>(acc));
  }
  return out;
}

bool Lattice::equivalent(const Divisor& a, const Divisor& b) const { return invariant(a) == invariant(b); }

bool Lattice::effective_equivalent(const Divisor& d, std::size_t cap) {
  const Count deg = d.degree();
  if (deg < 0) return false;
  auto it = effective_invariants_.find(deg);
  if (it == effective_invariants_.end()) {
    if (composition_count_capped(n_, deg, cap) > cap) {
      throw Error(ErrorKind::OracleTooLarge, "too many effective divisors of degree " + std::to_string(deg));
    }
    std::set<std::vector<Count>> seen;
    for_each_composition(n_, deg, [&](const std::vector<Count>& values) {
      seen.insert(invariant(Divisor(values)));
      return true;
    });
    it = effective_invariants_.emplace(deg, std::move(seen)).first;
  }
  return it->second.contains(invariant(d));
}

Count rank_bruteforce(const MultiGraph& g, const Divisor& d) {
  Lattice lattice(g);
  return rank_bruteforce(g, lattice, d);
}

Count rank_bruteforce(const MultiGraph& g, Lattice& lattice, const Divisor& d) {
  check_size(g, d);
  // k = 0 is E = 0.
  if (!lattice.effective_equivalent(d)) return -1;
  for (Count k = 1;; ++k) {
    const bool all_ok = for_each_composition(g.node_count(), k, [&](const std::vector<Count>& e) {
      return lattice.effective_equivalent(d - Divisor(e));
    });
    if (!all_ok) return k - 1;
  }
}

bool positive_rank_bruteforce(const MultiGraph& g, Lattice& lattice, const Divisor& d) {
  check_size(g, d);
  if (!lattice.effective_equivalent(d)) return false;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!lattice.effective_equivalent(d - Divisor::unit(g.node_count(), v))) return false;
  }
  return g.node_count() > 0;
}

GonalityWitness gonality_bruteforce(const MultiGraph& g, std::size_t cap) {
  if (!g.is_connected()) throw Error(ErrorKind::Disconnected, "gonality needs a connected graph");
  Lattice lattice(g);
  const std::size_t n = g.node_count();
  for (Count d = 1; d <= static_cast<Count>(n); ++d) {
    if (composition_count_capped(n, d, cap) > cap) {
      throw Error(ErrorKind::OracleTooLarge, "too many divisors of degree " + std::to_string(d));
    }
    GonalityWitness found;
    const bool exhausted = for_each_composition(n, d, [&](const std::vector<Count>& values) {
      Divisor candidate(values);
      if (!positive_rank_bruteforce(g, lattice, candidate)) return true;
      found = {d, std::move(candidate)};
      return false;
    });
    if (!exhausted) return found;
  }
  throw Error(ErrorKind::InvariantViolation, "all-ones divisor failed to have positive rank");
}

EquivalenceClasses equivalence_exact(const MultiGraph& g, const Divisor& d, std::size_t cap) {
  const auto cls = effective_class_enumerate(g, d, cap);
  const std::size_t n = g.node_count();
  std::vector<char> split(n * n, 0);
  for (const auto& moves : cls.moves) {
    for (const auto& set : moves) {
      std::vector<char> in(n, 0);
      for (NodeId v : set) in[v] = 1;
      for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = 0; v < n; ++v) {
          if (in[u] && !in[v]) split[u * n + v] = split[v * n + u] = 1;
        }
      }
    }
  }

  EquivalenceClasses out;
  out.cell_of.assign(n, n);
  for (NodeId u = 0; u < n; ++u) {
    if (out.cell_of[u] != n) continue;
    NodeSet cell;
    for (NodeId v = u; v < n; ++v) {
      if (out.cell_of[v] == n && !split[u * n + v]) {
        out.cell_of[v] = out.cells.size();
        cell.push_back(v);
      }
    }
    out.cells.push_back(std::move(cell));
  }
  for (const auto& b : g.bundles()) {
    if (out.same_cell(b.u, b.v)) out.blocking_edges.insert({b.u, b.v});
  }
  return out;
}

}  // namespace chipfire::oracle
