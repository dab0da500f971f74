#include "chipfire/reduction.hpp"

#include <algorithm>

namespace chipfire {

NodeId Gadget::half_edge(std::size_t edge, NodeId endpoint) const {
  const auto& e = edges.at(edge);
  const NodeId base = 1 + 3 * source.node_count() + 2 * edge;
  if (endpoint == e.u) return base;
  if (endpoint == e.v) return base + 1;
  throw Error(ErrorKind::InvalidArgument, "node is not an endpoint of edge " + std::to_string(edge));
}

Gadget build_gadget(const MultiGraph& g) {
  Gadget gadget;
  gadget.source = g;
  const std::size_t n = g.node_count();
  const Count m_big = 3 * static_cast<Count>(n) + 2 * g.edge_count() + 2;
  gadget.big_multiplicity = m_big;

  for (const auto& b : g.bundles()) {
    for (Count copy = 0; copy < b.multiplicity; ++copy) gadget.edges.push_back({b.u, b.v});
  }

  std::vector<std::string> names{"T"};
  gadget.roles.push_back({GadgetRole::Hub, 0, 0});
  for (NodeId v = 0; v < n; ++v) {
    names.push_back(g.name(v));
    names.push_back(g.name(v) + "'");
    names.push_back("T" + g.name(v));
    gadget.roles.push_back({GadgetRole::Original, v, 0});
    gadget.roles.push_back({GadgetRole::Prime, v, 0});
    gadget.roles.push_back({GadgetRole::Tee, v, 0});
  }
  for (std::size_t i = 0; i < gadget.edges.size(); ++i) {
    const auto& e = gadget.edges[i];
    names.push_back("e#" + std::to_string(i) + "@" + g.name(e.u));
    names.push_back("e#" + std::to_string(i) + "@" + g.name(e.v));
    gadget.roles.push_back({GadgetRole::HalfEdge, e.u, i});
    gadget.roles.push_back({GadgetRole::HalfEdge, e.v, i});
  }

  std::vector<EdgeBundle> bundles;
  for (NodeId v = 0; v < n; ++v) {
    bundles.push_back({gadget.prime(v), gadget.tee(v), 3});
    bundles.push_back({gadget.original(v), gadget.prime(v), m_big});
    bundles.push_back({gadget.tee(v), gadget.hub(), m_big});
  }
  for (std::size_t i = 0; i < gadget.edges.size(); ++i) {
    const auto& e = gadget.edges[i];
    const NodeId eu = gadget.half_edge(i, e.u);
    const NodeId ev = gadget.half_edge(i, e.v);
    bundles.push_back({eu, ev, 1});
    bundles.push_back({gadget.original(e.u), eu, m_big});
    bundles.push_back({ev, gadget.original(e.v), m_big});
  }

  try {
    const std::size_t count = names.size();
    gadget.ghat = MultiGraph(count, bundles, std::move(names));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DuplicateNode) throw;
    throw Error(ErrorKind::NameCollision, std::string("source node names clash with gadget names: ") + e.what());
  }
  return gadget;
}

Count certificate_degree_formula(const MultiGraph& g, std::size_t set_size) {
  return 4 * static_cast<Count>(g.node_count()) + g.edge_count() + 1 - static_cast<Count>(set_size);
}

Certificate certificate_divisor(const Gadget& gadget, std::span<const NodeId> independent_set) {
  const MultiGraph& g = gadget.source;
  const std::size_t n = g.node_count();
  std::vector<char> in_set(n, 0);
  for (NodeId v : independent_set) {
    if (v >= n) throw Error(ErrorKind::UnknownNode, "independent set node out of range");
    in_set[v] = 1;
  }
  for (const auto& e : gadget.edges) {
    if (in_set[e.u] && in_set[e.v]) {
      throw Error(ErrorKind::NotIndependent, "edge " + g.name(e.u) + "-" + g.name(e.v) + " lies inside the set");
    }
  }

  Certificate cert;
  for (NodeId v = 0; v < n; ++v) (in_set[v] ? cert.independent_set : cert.singletons).push_back(v);

  // The S side is U_0 and the singletons follow in node order, so each edge
  // points from its S end, or else from its lower-indexed end.
  for (const auto& e : gadget.edges) {
    if (in_set[e.v]) {
      cert.orientation.emplace_back(e.v, e.u);
    } else {
      cert.orientation.emplace_back(e.u, e.v);
    }
  }

  Divisor d(gadget.ghat.node_count());
  d[gadget.hub()] = 1;
  for (NodeId v = 0; v < n; ++v) {
    d[gadget.original(v)] = 1;
    if (in_set[v]) {
      d[gadget.prime(v)] = 1;
      d[gadget.tee(v)] = 1;
    } else {
      d[gadget.prime(v)] = 0;
      d[gadget.tee(v)] = 3;
    }
  }
  for (std::size_t i = 0; i < gadget.edges.size(); ++i) {
    const auto [tail, head] = cert.orientation[i];
    d[gadget.half_edge(i, tail)] = 1;
    d[gadget.half_edge(i, head)] = 0;
  }
  cert.divisor = std::move(d);

  // W_i covers V_i = U_i ∪ ... ∪ U_k, their primes, and their half-edges.
  for (std::size_t i = 0; i < cert.singletons.size(); ++i) {
    std::vector<char> in_tail(n, 0);
    for (std::size_t j = i; j < cert.singletons.size(); ++j) in_tail[cert.singletons[j]] = 1;
    NodeSet w;
    for (NodeId v = 0; v < n; ++v) {
      if (!in_tail[v]) continue;
      w.push_back(gadget.original(v));
      w.push_back(gadget.prime(v));
    }
    for (std::size_t e = 0; e < gadget.edges.size(); ++e) {
      if (in_tail[gadget.edges[e].u]) w.push_back(gadget.half_edge(e, gadget.edges[e].u));
      if (in_tail[gadget.edges[e].v]) w.push_back(gadget.half_edge(e, gadget.edges[e].v));
    }
    std::sort(w.begin(), w.end());
    cert.schedule.push_back(std::move(w));
  }
  return cert;
}

VerificationReport verify_certificate(const Gadget& gadget, const Certificate& cert) {
  const MultiGraph& ghat = gadget.ghat;
  if (cert.divisor.size() != ghat.node_count()) {
    throw Error(ErrorKind::InvalidArgument, "certificate does not belong to this gadget");
  }
  VerificationReport report;
  std::vector<char> covered(ghat.node_count(), 0);
  for (NodeId w = 0; w < ghat.node_count(); ++w) covered[w] = cert.divisor[w] >= 1;

  for (std::size_t i = 0; i < cert.schedule.size(); ++i) {
    // D + Q 1_W is D with the complement of W fired.
    FiringScript lift = FiringScript::indicator(ghat.node_count(), cert.schedule[i]);
    for (NodeId w = 0; w < ghat.node_count(); ++w) lift[w] = -lift[w];
    const Divisor moved = apply_script(ghat, cert.divisor, lift);
    const bool effective = moved.is_effective();
    report.schedule_effective.push_back(effective);

    bool covers = effective;
    if (i < cert.singletons.size()) {
      const NodeId v = cert.singletons[i];
      covers = covers && moved[gadget.prime(v)] >= 1;
      for (std::size_t e = 0; e < cert.orientation.size(); ++e) {
        if (cert.orientation[e].second == v) covers = covers && moved[gadget.half_edge(e, v)] >= 1;
      }
    }
    report.schedule_covers.push_back(covers);
    if (effective) {
      for (NodeId w = 0; w < ghat.node_count(); ++w) covered[w] |= moved[w] >= 1;
    }
  }
  for (NodeId w = 0; w < ghat.node_count(); ++w) {
    if (covered[w]) report.covered_nodes.push_back(w);
  }

  report.rank_by_reduction = cert.divisor.is_effective() && positive_rank(ghat, cert.divisor);
  const bool schedule_ok = std::all_of(report.schedule_effective.begin(), report.schedule_effective.end(),
                                       [](bool b) { return b; }) &&
                           std::all_of(report.schedule_covers.begin(), report.schedule_covers.end(),
                                       [](bool b) { return b; }) &&
                           report.covered_nodes.size() == ghat.node_count();

  if (!report.rank_by_reduction) {
    report.failure = ErrorKind::RankRefuted;
  } else if (!schedule_ok) {
    report.failure = ErrorKind::ScheduleBroken;
    for (std::size_t i = 0; i < report.schedule_effective.size(); ++i) {
      if (!report.schedule_effective[i] || !report.schedule_covers[i]) {
        report.failed_step = i + 1;
        break;
      }
    }
  }
  report.positive_rank_confirmed = !report.failure.has_value();
  return report;
}

void require_verified(const VerificationReport& report) {
  if (!report.failure) return;
  if (*report.failure == ErrorKind::RankRefuted) {
    throw Error(ErrorKind::RankRefuted, "divisor does not have positive rank");
  }
  throw Error(ErrorKind::ScheduleBroken, "firing schedule fails at step " + std::to_string(report.failed_step));
}

Count alpha_from_gonality(const MultiGraph& g, Count gadget_gonality) {
  const Count n = static_cast<Count>(g.node_count());
  const Count alpha = 4 * n + g.edge_count() + 1 - gadget_gonality;
  if (alpha < std::min<Count>(1, n) || alpha > n) {
    throw Error(ErrorKind::InconsistentInput, "gadget gonality " + std::to_string(gadget_gonality) +
                                                  " implies independence number " + std::to_string(alpha));
  }
  return alpha;
}

Count accounting_lower_bound(const MultiGraph& g, std::span<const NodeId> hub_class_sources) {
  const Count n = static_cast<Count>(g.node_count());
  return n + 1 + 3 * n - static_cast<Count>(hub_class_sources.size()) + g.edge_count() +
         edges_within(g, hub_class_sources);
}

Count accounting_lower_bound(const Gadget& gadget, std::span<const NodeSet> partition) {
  for (const auto& cell : partition) {
    if (std::find(cell.begin(), cell.end(), gadget.hub()) == cell.end()) continue;
    NodeSet sources;
    for (NodeId w : cell) {
      if (w == gadget.hub()) continue;
      if (w >= gadget.roles.size() || gadget.roles[w].role != GadgetRole::Original) {
        throw Error(ErrorKind::InvalidArgument, "partition cells may hold only T and source nodes");
      }
      sources.push_back(gadget.roles[w].source);
    }
    return accounting_lower_bound(gadget.source, sources);
  }
  throw Error(ErrorKind::InvalidArgument, "no partition cell contains T");
}

}  // namespace chipfire
