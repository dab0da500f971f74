#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chipfire/divisor.hpp"
#include "chipfire/error.hpp"
#include "chipfire/graph_io.hpp"
#include "chipfire/oracles.hpp"
#include "chipfire/reduction.hpp"
#include "support.hpp"

using namespace chipfire;
using namespace chipfire::testing;

namespace {

Divisor dv(std::vector<Count> v) { return Divisor(std::move(v)); }

template <typename F>
ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

// Random member of D's effective class reached by legal set-firings.
Divisor random_walk(std::mt19937_64& rng, const MultiGraph& g, Divisor d, int steps) {
  const std::size_t n = g.node_count();
  std::uniform_int_distribution<std::uint64_t> mask(1, (std::uint64_t{1} << n) - 2);
  for (int i = 0; i < steps; ++i) {
    NodeSet set;
    const auto m = mask(rng);
    for (NodeId v = 0; v < n; ++v) {
      if (m >> v & 1) set.push_back(v);
    }
    try {
      d = fire_set(g, d, set);
    } catch (const Error&) {
    }
  }
  return d;
}

}  // namespace

TEST_CASE("Divisor degree and effectiveness") {
  CHECK(dv({1, -2, 4}).degree() == 3);
  CHECK(dv({1, 0, 4}).is_effective());
  CHECK_FALSE(dv({1, -1}).is_effective());
  CHECK(Divisor::all_ones(4).degree() == 4);
}

TEST_CASE("fire_set examples") {
  const auto k2 = complete(2);
  CHECK(fire_set(k2, dv({1, 0}), NodeSet{0}) == dv({0, 1}));
  CHECK(error_kind([&] { fire_set(k2, dv({0, 1}), NodeSet{0}); }) == ErrorKind::InsufficientChips);
  try {
    fire_set(k2, dv({0, 1}), NodeSet{0});
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("'0'") != std::string::npos);
  }
  CHECK(error_kind([&] { fire_set(k2, dv({-1, 2}), NodeSet{1}); }) == ErrorKind::NotEffective);
}

TEST_CASE("firing the complement of W_1 on the K2 certificate") {
  const auto gadget = build_gadget(complete(2));
  const auto cert = certificate_divisor(gadget, NodeSet{0});
  REQUIRE(cert.schedule.size() == 1);
  NodeSet complement;
  for (NodeId w = 0; w < gadget.ghat.node_count(); ++w) {
    if (!std::binary_search(cert.schedule[0].begin(), cert.schedule[0].end(), w)) complement.push_back(w);
  }
  const Divisor after = fire_set(gadget.ghat, cert.divisor, complement);
  Divisor expected = cert.divisor;
  expected[gadget.tee(1)] = 0;
  expected[gadget.prime(1)] = 3;
  expected[gadget.half_edge(0, 0)] = 0;
  expected[gadget.half_edge(0, 1)] = 1;
  CHECK(cert.divisor[gadget.tee(1)] == 3);
  CHECK(cert.divisor[gadget.prime(1)] == 0);
  CHECK(cert.divisor[gadget.half_edge(0, 0)] == 1);
  CHECK(cert.divisor[gadget.half_edge(0, 1)] == 0);
  CHECK(after == expected);
}

TEST_CASE("apply_script examples") {
  const auto k2 = complete(2);
  std::mt19937_64 rng(3);
  const auto g = random_connected(rng, 5, 3, 0.5);
  const auto d = random_divisor(rng, 5, -3, 3);
  CHECK(apply_script(g, d, FiringScript(5)) == d);
  CHECK(apply_script(g, d, FiringScript(std::vector<Count>(5, 1))) == d);
  CHECK(apply_script(k2, dv({2, 0}), FiringScript({1, 0})) == dv({1, 1}));
}

TEST_CASE("degree is invariant under scripts") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = random_multigraph(rng, 1 + trial % 8, 3, 0.5);
    const auto d = random_divisor(rng, g.node_count(), -4, 4);
    const auto x = random_divisor(rng, g.node_count(), -6, 6);
    CHECK(apply_script(g, d, FiringScript(x.values())).degree() == d.degree());
  }
}

TEST_CASE("reduce examples agree with the class oracle") {
  const auto k2 = complete(2);
  const auto via_class = reduced_by_class(k2, dv({2, 0}), 1);
  CHECK(via_class == dv({0, 2}));
  CHECK(reduce(k2, dv({2, 0}), 1).reduced == via_class);

  const auto c3 = cycle(3);
  const auto c3_class = reduced_by_class(c3, dv({2, 0, 0}), 2);
  CHECK(c3_class == dv({0, 1, 1}));
  CHECK(reduce(c3, dv({2, 0, 0}), 2).reduced == c3_class);

  const auto again = reduce(c3, c3_class, 2);
  CHECK(again.reduced == c3_class);
  CHECK(again.script.is_zero());
}

TEST_CASE("reduce output is linked to the input by its script") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = random_connected(rng, 1 + trial % 8, 3, 0.3);
    const auto d = random_divisor(rng, g.node_count(), -6, 6);
    std::uniform_int_distribution<NodeId> pick(0, g.node_count() - 1);
    const NodeId q = pick(rng);
    const auto r = reduce(g, d, q);
    CHECK(apply_script(g, d, r.script) == r.reduced);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (v != q) CHECK(r.reduced[v] >= 0);
    }
    CHECK(dhar_unburnt(g, r.reduced, q).empty());
  }
}

TEST_CASE("reduce matches the class oracle on effective divisors") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const auto g = random_connected(rng, 1 + trial % 5, 2, 0.4);
    const auto d = random_effective(rng, g.node_count(), trial % 5);
    std::uniform_int_distribution<NodeId> pick(0, g.node_count() - 1);
    const NodeId q = pick(rng);
    CHECK(reduce(g, d, q).reduced == reduced_by_class(g, d, q));
  }
}

TEST_CASE("reduce rejects disconnected graphs") {
  CHECK(error_kind([] { reduce(edgeless(2), dv({1, 0}), 0); }) == ErrorKind::Disconnected);
  CHECK(error_kind([] { reduce(edgeless(2), dv({0, -1}), 0); }) == ErrorKind::Disconnected);
}

TEST_CASE("equivalent examples") {
  const auto k2 = complete(2);
  oracle::Lattice lattice(k2);
  CHECK(lattice.equivalent(dv({2, 0}), dv({0, 2})));
  CHECK(equivalent(k2, dv({2, 0}), dv({0, 2})));
  CHECK_FALSE(equivalent(k2, dv({1, 0}), dv({0, 2})));
  CHECK(equivalent(k2, dv({3, -7}), dv({3, -7})));
}

TEST_CASE("effective_equivalent examples") {
  const auto k2 = complete(2);
  CHECK_FALSE(effective_equivalent(k2, dv({-1, 0})));
  CHECK(effective_equivalent(k2, dv({0, 3})));
  oracle::Lattice lattice(k2);
  CHECK(lattice.effective_equivalent(dv({-1, 2})));
  CHECK(effective_equivalent(k2, dv({-1, 2})));
  CHECK(fire_set(k2, dv({0, 1}), NodeSet{1}) == dv({1, 0}));
}

TEST_CASE("rank examples") {
  const auto k2 = complete(2);
  CHECK(rank(k2, dv({0, 0})) == 0);
  CHECK(oracle::rank_bruteforce(k2, dv({1, 0})) == 1);
  CHECK(rank(k2, dv({1, 0})) == 1);
  CHECK(rank(k2, dv({-1, 0})) == -1);

  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = random_connected(rng, 1 + trial % 6, 2, 0.4);
    CHECK(rank(g, Divisor::all_ones(g.node_count())) >= 1);
  }
}

TEST_CASE("positive_rank examples") {
  const auto k2 = complete(2);
  const auto c3 = cycle(3);
  oracle::Lattice k2_lattice(k2), c3_lattice(c3);
  CHECK(positive_rank(k2, dv({1, 0})));
  CHECK(oracle::positive_rank_bruteforce(k2, k2_lattice, dv({1, 0})));
  CHECK_FALSE(positive_rank(c3, dv({1, 0, 0})));
  CHECK_FALSE(oracle::positive_rank_bruteforce(c3, c3_lattice, dv({1, 0, 0})));
  CHECK(positive_rank(c3, Divisor::all_ones(3)));
}

TEST_CASE("rank and positive_rank agree with the oracle on random small instances") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = random_connected(rng, 1 + trial % 5, 3, 0.4);
    oracle::Lattice lattice(g);
    const auto d = random_divisor(rng, g.node_count(), -1, 3);
    const Count r = rank(g, d);
    CHECK(r == oracle::rank_bruteforce(g, lattice, d));
    CHECK(positive_rank(g, d) == (r >= 1));
    CHECK(r <= std::max<Count>(d.degree(), -1));
  }
}

TEST_CASE("chain_decompose examples") {
  const auto k2 = complete(2);
  const auto chain = chain_decompose(k2, dv({0, 2}), dv({2, 0}));
  CHECK(chain.sets == std::vector<NodeSet>{{1}, {1}});
  CHECK(chain.intermediates == std::vector<Divisor>{dv({1, 1}), dv({2, 0})});

  CHECK(chain_decompose(k2, dv({1, 1}), dv({1, 1})).sets.empty());

  const auto single = chain_decompose(k2, dv({1, 0}), dv({0, 1}));
  CHECK(single.sets == std::vector<NodeSet>{{0}});

  CHECK(error_kind([&] { chain_decompose(k2, dv({1, 0}), dv({0, 2})); }) == ErrorKind::NotEquivalent);
  CHECK(error_kind([&] { chain_decompose(banana(3), dv({1, 0}), dv({0, 1})); }) == ErrorKind::NotEquivalent);
  CHECK(error_kind([&] { chain_decompose(k2, dv({-1, 2}), dv({1, 0})); }) == ErrorKind::NotEffective);
}

TEST_CASE("chain_decompose yields nested sets through effective divisors") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 150; ++trial) {
    const auto g = random_connected(rng, 2 + trial % 6, 3, 0.4);
    const auto d = random_effective(rng, g.node_count(), 1 + trial % 7);
    const auto target = random_walk(rng, g, d, 12);
    const auto chain = chain_decompose(g, d, target);
    Divisor current = d;
    for (std::size_t i = 0; i < chain.sets.size(); ++i) {
      const auto& set = chain.sets[i];
      CHECK_FALSE(set.empty());
      CHECK(set.size() < g.node_count());
      if (i > 0) CHECK(std::includes(set.begin(), set.end(), chain.sets[i - 1].begin(), chain.sets[i - 1].end()));
      current = apply_script(g, current, FiringScript::indicator(g.node_count(), set));
      CHECK(current == chain.intermediates[i]);
      CHECK(current.is_effective());
    }
    CHECK(current == target);
  }
}

TEST_CASE("equivalence_classes examples") {
  const auto k2 = complete(2);
  const auto split = equivalence_classes(k2, dv({1, 0}));
  CHECK(split.cells.size() == 2);
  CHECK(split.blocking_edges.empty());

  const auto thick = equivalence_classes(banana(3), dv({1, 0}));
  CHECK(thick.cells == std::vector<NodeSet>{{0, 1}});
  CHECK(oracle::effective_class_enumerate(banana(3), dv({1, 0})).members.size() == 1);

  CHECK(error_kind([&] { equivalence_classes(k2, dv({5, 5}), 3); }) == ErrorKind::ClassTooLarge);
}

TEST_CASE("every M-fold bundle of the K2 gadget is blocking at degree 9") {
  const auto gadget = build_gadget(complete(2));
  const auto& ghat = gadget.ghat;
  const Count m_big = gadget.big_multiplicity;
  const auto cert = certificate_divisor(gadget, NodeSet{0});
  std::mt19937_64 rng(47);
  std::vector<Divisor> divisors{cert.divisor};
  for (int i = 0; i < 3; ++i) divisors.push_back(random_effective(rng, ghat.node_count(), 9));
  for (const auto& d : divisors) {
    const auto classes = equivalence_classes(ghat, d);
    for (const auto& b : ghat.bundles()) {
      if (b.multiplicity == m_big) CHECK(classes.same_cell(b.u, b.v));
    }
  }
}

TEST_CASE("equivalent_by_cut examples") {
  CHECK_FALSE(equivalent_by_cut(complete(2), dv({1, 0}), 0, 1));
  CHECK(equivalent_by_cut(banana(5), dv({3, 0}), 0, 1));

  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_multigraph(rng, 1 + trial % 4, 2, 0.5);
    const auto gadget = build_gadget(g);
    const auto d = random_effective(rng, gadget.ghat.node_count(), gadget.big_multiplicity - 1);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      CHECK(equivalent_by_cut(gadget.ghat, d, gadget.original(v), gadget.prime(v)));
      CHECK(equivalent_by_cut(gadget.ghat, d, gadget.tee(v), gadget.hub()));
    }
    for (std::size_t e = 0; e < gadget.edges.size(); ++e) {
      const auto [u, v] = gadget.edges[e];
      CHECK(equivalent_by_cut(gadget.ghat, d, gadget.original(u), gadget.half_edge(e, u)));
      CHECK(equivalent_by_cut(gadget.ghat, d, gadget.original(v), gadget.half_edge(e, v)));
    }
  }
}

TEST_CASE("component_chip_counts examples") {
  const auto gadget = build_gadget(complete(2));
  const auto cert = certificate_divisor(gadget, NodeSet{0});
  const auto classes = equivalence_classes(gadget.ghat, cert.divisor);
  const auto counts = component_chip_counts(gadget.ghat, cert.divisor, classes);
  const NodeSet pair{gadget.prime(1), gadget.tee(1)};
  auto it = std::find_if(counts.begin(), counts.end(), [&](const ComponentChips& c) { return c.nodes == pair; });
  REQUIRE(it != counts.end());
  CHECK(it->chips == 3);

  const auto cls = oracle::effective_class_enumerate(gadget.ghat, cert.divisor);
  for (const auto& member : cls.members) CHECK(member[pair[0]] + member[pair[1]] == 3);

  const auto k3 = complete(3);
  const auto one = component_chip_counts(k3, dv({1, 1, 0}), equivalence_classes(k3, dv({1, 1, 0})));
  CHECK(one.size() == 1);
  CHECK(one[0].chips == 2);

  const auto k2 = complete(2);
  const auto merged = component_chip_counts(k2, dv({1, 0}), equivalence_classes(k2, dv({1, 0})));
  CHECK(merged.size() == 1);
  CHECK(merged[0].nodes == NodeSet{0, 1});
  CHECK(merged[0].chips == 1);
}

TEST_CASE("equivalence_classes matches the subset-firing oracle") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_connected(rng, 2 + trial % 5, 3, 0.4);
    const auto d = random_effective(rng, g.node_count(), trial % 6);
    const auto fast = equivalence_classes(g, d);
    const auto slow = oracle::equivalence_exact(g, d);
    CHECK(fast.cells == slow.cells);
    CHECK(fast.blocking_edges == slow.blocking_edges);
  }
}

TEST_CASE("parse_divisor literals") {
  const auto g = parse_graph("node a\nnode b\nnode c\nedge a b 1\nedge b c 1\n");
  CHECK(parse_divisor(g, "1,0,2") == dv({1, 0, 2}));
  CHECK(parse_divisor(g, "b:2, a:-1") == dv({-1, 2, 0}));
  CHECK(parse_divisor(g, "\xE2\x88\x92" "1,0,0") == dv({-1, 0, 0}));
  CHECK(error_kind([&] { parse_divisor(g, "1,0"); }) == ErrorKind::BadDivisorLiteral);
  CHECK(error_kind([&] { parse_divisor(g, "1,x,0"); }) == ErrorKind::BadDivisorLiteral);
  CHECK(error_kind([&] { parse_divisor(g, "z:1"); }) == ErrorKind::BadDivisorLiteral);
  CHECK(format_divisor(dv({-1, 0, 2})) == "-1,0,2");
}
