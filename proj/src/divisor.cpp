#include "chipfire/divisor.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <sstream>

#include "chipfire/compositions.hpp"
#include "chipfire/error.hpp"

namespace chipfire {

Divisor Divisor::unit(std::size_t node_count, NodeId v) {
  Divisor d(node_count);
  d[v] = 1;
  return d;
}

Count Divisor::degree() const noexcept { return std::accumulate(values_.begin(), values_.end(), Count{0}); }

bool Divisor::is_effective() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](Count c) { return c >= 0; });
}

Divisor& Divisor::operator+=(const Divisor& other) {
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Divisor& Divisor::operator-=(const Divisor& other) {
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

FiringScript FiringScript::indicator(std::size_t node_count, std::span<const NodeId> nodes) {
  FiringScript x(node_count);
  for (NodeId v : nodes) x[v] = 1;
  return x;
}

bool FiringScript::is_zero() const noexcept {
  return std::all_of(x_.begin(), x_.end(), [](Count c) { return c == 0; });
}

void FiringScript::normalize() {
  if (x_.empty()) return;
  const Count lo = *std::min_element(x_.begin(), x_.end());
  for (auto& c : x_) c -= lo;
}

namespace {

void check_size(const MultiGraph& g, const Divisor& d) {
  if (d.size() != g.node_count()) {
    throw Error(ErrorKind::InvalidArgument, "divisor has " + std::to_string(d.size()) + " entries, graph has " +
                                                std::to_string(g.node_count()) + " nodes");
  }
}

// Fires the marked set `times` times: chips cross every cut edge outward.
void fire_marked(const MultiGraph& g, std::vector<Count>& chips, const std::vector<char>& marked, Count times,
                 std::vector<Count>* script) {
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (!marked[u]) continue;
    for (const auto& nb : g.neighbors(u)) {
      if (marked[nb.node]) continue;
      chips[u] -= times * nb.multiplicity;
      chips[nb.node] += times * nb.multiplicity;
    }
    if (script) (*script)[u] += times;
  }
}

// Dhar burning from `start`. On return, burnt[v] says whether v burnt and
// pressure[v] holds the number of edges from v into the burnt set.
void burn(const MultiGraph& g, const std::vector<Count>& chips, NodeId start, std::vector<char>& burnt,
          std::vector<Count>& pressure, std::vector<NodeId>& stack) {
  const std::size_t n = g.node_count();
  burnt.assign(n, 0);
  pressure.assign(n, 0);
  stack.clear();
  burnt[start] = 1;
  stack.push_back(start);
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (const auto& nb : g.neighbors(u)) {
      const NodeId w = nb.node;
      if (burnt[w]) continue;
      pressure[w] += nb.multiplicity;
      if (pressure[w] > chips[w]) {
        burnt[w] = 1;
        stack.push_back(w);
      }
    }
  }
}

std::vector<std::size_t> bfs_distances(const MultiGraph& g, NodeId q) {
  const std::size_t n = g.node_count();
  const auto unreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(n, unreached);
  std::vector<NodeId> order{q};
  dist[q] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const auto& nb : g.neighbors(order[i])) {
      if (dist[nb.node] == unreached) {
        dist[nb.node] = dist[order[i]] + 1;
        order.push_back(nb.node);
      }
    }
  }
  if (order.size() != n) throw Error(ErrorKind::Disconnected, "graph is not connected");
  return dist;
}

Count ceil_div(Count a, Count b) { return (a + b - 1) / b; }

}  // namespace

Divisor fire_set(const MultiGraph& g, const Divisor& d, std::span<const NodeId> nodes) {
  check_size(g, d);
  if (!d.is_effective()) throw Error(ErrorKind::NotEffective, "firing requires an effective divisor");
  std::vector<char> marked(g.node_count(), 0);
  for (NodeId v : nodes) {
    if (v >= g.node_count()) throw Error(ErrorKind::UnknownNode, "node index out of range");
    marked[v] = 1;
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!marked[v]) continue;
    Count outgoing = 0;
    for (const auto& nb : g.neighbors(v)) {
      if (!marked[nb.node]) outgoing += nb.multiplicity;
    }
    if (d[v] < outgoing) {
      throw Error(ErrorKind::InsufficientChips, "node '" + g.name(v) + "' holds " + std::to_string(d[v]) +
                                                    " chips but must send " + std::to_string(outgoing));
    }
  }
  std::vector<Count> chips = d.values();
  fire_marked(g, chips, marked, 1, nullptr);
  return Divisor(std::move(chips));
}

Divisor apply_script(const MultiGraph& g, const Divisor& d, const FiringScript& x) {
  check_size(g, d);
  if (x.size() != g.node_count()) throw Error(ErrorKind::InvalidArgument, "script size mismatch");
  std::vector<Count> chips = d.values();
  for (NodeId u = 0; u < g.node_count(); ++u) {
    chips[u] -= g.degree(u) * x[u];
    for (const auto& nb : g.neighbors(u)) chips[u] += nb.multiplicity * x[nb.node];
  }
  return Divisor(std::move(chips));
}

ReductionResult reduce(const MultiGraph& g, const Divisor& d, NodeId q) {
  check_size(g, d);
  const std::size_t n = g.node_count();
  if (q >= n) throw Error(ErrorKind::UnknownNode, "base point out of range");

  std::vector<Count> chips = d.values();
  std::vector<Count> script(n, 0);
  std::vector<char> marked(n, 0);

  // Phase one: no debt off q. Firing the ball {dist < j} feeds every node at
  // distance j and only touches nodes at distance j - 1 and j.
  bool in_debt = false;
  for (NodeId v = 0; v < n; ++v) in_debt |= (v != q && chips[v] < 0);
  if (in_debt) {
    const auto dist = bfs_distances(g, q);
    const std::size_t depth = *std::max_element(dist.begin(), dist.end());
    for (std::size_t j = depth; j >= 1; --j) {
      Count times = 0;
      for (NodeId v = 0; v < n; ++v) {
        if (dist[v] != j || chips[v] >= 0) continue;
        Count inward = 0;
        for (const auto& nb : g.neighbors(v)) {
          if (dist[nb.node] + 1 == j) inward += nb.multiplicity;
        }
        times = std::max(times, ceil_div(-chips[v], inward));
      }
      if (times == 0) continue;
      for (NodeId v = 0; v < n; ++v) marked[v] = dist[v] < j;
      fire_marked(g, chips, marked, times, &script);
    }
  }

  // Phase two: Dhar burning from q.
  std::vector<char> burnt;
  std::vector<Count> pressure;
  std::vector<NodeId> stack;
  for (;;) {
    burn(g, chips, q, burnt, pressure, stack);
    Count times = std::numeric_limits<Count>::max();
    bool any_unburnt = false;
    for (NodeId v = 0; v < n; ++v) {
      if (burnt[v]) continue;
      any_unburnt = true;
      if (pressure[v] > 0) times = std::min(times, chips[v] / pressure[v]);
    }
    if (!any_unburnt) break;
    if (times == std::numeric_limits<Count>::max()) {
      throw Error(ErrorKind::Disconnected, "graph is not connected");
    }
    for (NodeId v = 0; v < n; ++v) marked[v] = !burnt[v];
    fire_marked(g, chips, marked, times, &script);
  }

  ReductionResult result{Divisor(std::move(chips)), FiringScript(std::move(script)), q};
  result.script.normalize();
  return result;
}

NodeSet dhar_unburnt(const MultiGraph& g, const Divisor& d, NodeId start) {
  check_size(g, d);
  std::vector<char> burnt;
  std::vector<Count> pressure;
  std::vector<NodeId> stack;
  burn(g, d.values(), start, burnt, pressure, stack);
  NodeSet out;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!burnt[v]) out.push_back(v);
  }
  return out;
}

bool equivalent(const MultiGraph& g, const Divisor& a, const Divisor& b, NodeId q) {
  check_size(g, a);
  check_size(g, b);
  if (a.degree() != b.degree()) return false;
  return reduce(g, a, q).reduced == reduce(g, b, q).reduced;
}

bool effective_equivalent(const MultiGraph& g, const Divisor& d, NodeId q) {
  check_size(g, d);
  if (d.degree() < 0) return false;
  return reduce(g, d, q).reduced[q] >= 0;
}

Count rank(const MultiGraph& g, const Divisor& d) {
  check_size(g, d);
  if (!effective_equivalent(g, d)) return -1;
  const Divisor base = reduce(g, d, 0).reduced;
  const Count deg = base.degree();
  for (Count k = 1; k <= deg; ++k) {
    const bool all_ok = for_each_composition(g.node_count(), k, [&](const std::vector<Count>& e) {
      Divisor rest = base;
      for (NodeId v = 0; v < rest.size(); ++v) rest[v] -= e[v];
      return effective_equivalent(g, rest);
    });
    if (!all_ok) return k - 1;
  }
  return deg;
}

bool positive_rank(const MultiGraph& g, const Divisor& d) {
  check_size(g, d);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (reduce(g, d, v).reduced[v] < 1) return false;
  }
  return g.node_count() > 0;
}

ChainDecomposition chain_decompose(const MultiGraph& g, const Divisor& from, const Divisor& to) {
  check_size(g, from);
  check_size(g, to);
  if (!from.is_effective() || !to.is_effective()) {
    throw Error(ErrorKind::NotEffective, "chain decomposition needs effective endpoints");
  }
  ChainDecomposition chain;
  if (from == to) return chain;

  const auto r_from = reduce(g, from, 0);
  const auto r_to = reduce(g, to, 0);
  if (from.degree() != to.degree() || r_from.reduced != r_to.reduced) {
    throw Error(ErrorKind::NotEquivalent, "divisors are not equivalent");
  }
  // from - Q x1 = to - Q x2, so to = from - Q (x1 - x2).
  FiringScript x(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) x[v] = r_from.script[v] - r_to.script[v];
  x.normalize();
  if (apply_script(g, from, x) != to) throw Error(ErrorKind::InvariantViolation, "recovered script is wrong");

  const Count levels = *std::max_element(x.values().begin(), x.values().end());
  Divisor current = from;
  for (Count i = 1; i <= levels; ++i) {
    NodeSet level;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (x[v] >= levels + 1 - i) level.push_back(v);
    }
    try {
      current = fire_set(g, current, level);
    } catch (const Error& e) {
      throw Error(ErrorKind::InvariantViolation, "chain step " + std::to_string(i) + " not legal: " + e.what());
    }
    chain.sets.push_back(std::move(level));
    chain.intermediates.push_back(current);
  }
  if (current != to) throw Error(ErrorKind::InvariantViolation, "chain does not reach the target");
  return chain;
}

EquivalenceClasses equivalence_classes(const MultiGraph& g, const Divisor& d, std::size_t cap) {
  check_size(g, d);
  if (!d.is_effective()) throw Error(ErrorKind::NotEffective, "≡_D is defined for effective D");
  const std::size_t n = g.node_count();
  if (composition_count_capped(n, d.degree(), cap) > cap) {
    throw Error(ErrorKind::ClassTooLarge, "more than " + std::to_string(cap) + " divisors of degree " +
                                              std::to_string(d.degree()) + " to scan");
  }

  const Divisor target = reduce(g, d, 0).reduced;
  std::vector<char> separated(n * n, 0);
  for_each_composition(n, d.degree(), [&](const std::vector<Count>& values) {
    Divisor member(values);
    if (reduce(g, member, 0).reduced != target) return true;
    for (NodeId s = 0; s < n; ++s) {
      for (NodeId u : dhar_unburnt(g, member, s)) {
        separated[u * n + s] = 1;
        separated[s * n + u] = 1;
      }
    }
    return true;
  });

  EquivalenceClasses classes;
  classes.cell_of.assign(n, n);
  for (NodeId u = 0; u < n; ++u) {
    if (classes.cell_of[u] != n) continue;
    NodeSet cell;
    for (NodeId v = u; v < n; ++v) {
      if (classes.cell_of[v] == n && !separated[u * n + v]) {
        classes.cell_of[v] = classes.cells.size();
        cell.push_back(v);
      }
    }
    classes.cells.push_back(std::move(cell));
  }
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (classes.same_cell(u, v) == static_cast<bool>(separated[u * n + v])) {
        throw Error(ErrorKind::InvariantViolation, "separation relation is not transitive");
      }
    }
  }
  for (const auto& b : g.bundles()) {
    if (classes.same_cell(b.u, b.v)) classes.blocking_edges.insert({b.u, b.v});
  }
  return classes;
}

bool equivalent_by_cut(const MultiGraph& g, const Divisor& d, NodeId u, NodeId v) {
  check_size(g, d);
  return min_cut(g, u, v) > d.degree();
}

std::vector<ComponentChips> component_chip_counts(const MultiGraph& g, const Divisor& d,
                                                  const EquivalenceClasses& classes) {
  check_size(g, d);
  std::vector<ComponentChips> out;
  for (auto& comp : connected_components(g, classes.blocking_edges)) {
    Count chips = 0;
    for (NodeId v : comp) chips += d[v];
    out.push_back({std::move(comp), chips});
  }
  return out;
}

namespace {

std::string normalize_minus(std::string_view text) {
  // Accept U+2212 MINUS SIGN alongside ASCII '-'.
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i + 2 < text.size() + 0 && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 && static_cast<unsigned char>(text[i + 2]) == 0x92) {
      out.push_back('-');
      i += 2;
    } else if (text[i] != ' ' && text[i] != '\t') {
      out.push_back(text[i]);
    }
  }
  return out;
}

Count parse_count(std::string_view token, std::string_view literal) {
  Count value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw Error(ErrorKind::BadDivisorLiteral, "bad chip count '" + std::string(token) + "' in '" +
                                                  std::string(literal) + "'");
  }
  return value;
}

}  // namespace

Divisor parse_divisor(const MultiGraph& g, std::string_view literal) {
  const std::string text = normalize_minus(literal);
  std::vector<std::string_view> tokens;
  std::string_view rest(text);
  if (!rest.empty()) {
    for (;;) {
      auto comma = rest.find(',');
      tokens.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  }

  Divisor d(g.node_count());
  if (text.find(':') != std::string::npos) {
    for (auto token : tokens) {
      auto colon = token.find(':');
      if (colon == std::string_view::npos) {
        throw Error(ErrorKind::BadDivisorLiteral, "expected name:count, got '" + std::string(token) + "'");
      }
      auto node = g.find(std::string(token.substr(0, colon)));
      if (!node) {
        throw Error(ErrorKind::BadDivisorLiteral, "unknown node '" + std::string(token.substr(0, colon)) + "'");
      }
      d[*node] += parse_count(token.substr(colon + 1), literal);
    }
    return d;
  }
  if (tokens.size() != g.node_count()) {
    throw Error(ErrorKind::BadDivisorLiteral, "expected " + std::to_string(g.node_count()) + " entries, got " +
                                                  std::to_string(tokens.size()));
  }
  for (NodeId v = 0; v < tokens.size(); ++v) d[v] = parse_count(tokens[v], literal);
  return d;
}

std::string format_divisor(const Divisor& d) {
  std::ostringstream out;
  for (std::size_t i = 0; i < d.size(); ++i) out << (i ? "," : "") << d[i];
  return out.str();
}

}  // namespace chipfire
