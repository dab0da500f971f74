#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chipfire/divisor.hpp"
#include "chipfire/error.hpp"
#include "chipfire/multigraph.hpp"

namespace chipfire {

enum class GadgetRole { Hub, Original, Prime, Tee, HalfEdge };

/// What a gadget node stands for in the source graph.
struct GadgetNode {
  GadgetRole role = GadgetRole::Hub;
  /// Source node for Original / Prime / Tee; the endpoint for HalfEdge.
  NodeId source = 0;
  /// Index into Gadget::edges for HalfEdge.
  std::size_t edge = 0;
};

/// One source edge (a single parallel copy), u < v.
struct SourceEdge {
  NodeId u = 0;
  NodeId v = 0;
};

/// The hardness gadget built from a source graph G: hub T, a triple
/// (v, v', T_v) per node, a pair (e_u, e_v) per edge, and bundles of
/// M = 3|V| + 2|E| + 2 parallel edges.
///
/// Node order: T, then (v, v', T_v) per source node, then (e_u, e_v) per
/// source edge with u < v.
struct Gadget {
  MultiGraph source;
  MultiGraph ghat;
  Count big_multiplicity = 0;
  std::vector<GadgetNode> roles;
  std::vector<SourceEdge> edges;

  NodeId hub() const { return 0; }
  NodeId original(NodeId v) const { return 1 + 3 * v; }
  NodeId prime(NodeId v) const { return 2 + 3 * v; }
  NodeId tee(NodeId v) const { return 3 + 3 * v; }
  /// e_endpoint for source edge `edge`; `endpoint` must be one of its ends.
  NodeId half_edge(std::size_t edge, NodeId endpoint) const;
};

Gadget build_gadget(const MultiGraph& g);

/// Positive-rank divisor on the gadget built from an independent set S,
/// plus the firing sets W_1..W_k that expose its rank.
struct Certificate {
  NodeSet independent_set;
  /// (tail, head) per source edge.
  std::vector<std::pair<NodeId, NodeId>> orientation;
  /// Source nodes outside S in node order; U_i = {singletons[i - 1]}.
  NodeSet singletons;
  Divisor divisor;
  /// W_1..W_k as sorted gadget node lists.
  std::vector<NodeSet> schedule;
};

/// Throws NotIndependent naming an edge inside S.
Certificate certificate_divisor(const Gadget& gadget, std::span<const NodeId> independent_set);

/// 4|V| + |E| + 1 - |S|.
Count certificate_degree_formula(const MultiGraph& g, std::size_t set_size);

struct VerificationReport {
  /// Per step i: D + Q 1_{W_i} is effective.
  std::vector<bool> schedule_effective;
  /// Per step i: the primes of U_i and the heads landing in U_i got a chip.
  std::vector<bool> schedule_covers;
  /// Gadget nodes holding a chip in D or in some effective step divisor.
  NodeSet covered_nodes;
  /// positive_rank() on the gadget, by reduction at every node.
  bool rank_by_reduction = false;
  bool positive_rank_confirmed = false;
  std::optional<ErrorKind> failure;
  /// 1-based step for ScheduleBroken; 0 when no single step is to blame.
  std::size_t failed_step = 0;
};

VerificationReport verify_certificate(const Gadget& gadget, const Certificate& cert);

/// Throws ScheduleBroken or RankRefuted if the report is not a pass.
void require_verified(const VerificationReport& report);

/// α(G) = 4|V| + |E| + 1 - dgon(Ĝ). Throws InconsistentInput when the
/// result falls outside [1, |V|].
Count alpha_from_gonality(const MultiGraph& g, Count gadget_gonality);

/// |V| + 1 + 3|V| - |U_0| + |E| + |E[U_0]| where U_0 holds the source nodes
/// sharing T's class.
Count accounting_lower_bound(const MultiGraph& g, std::span<const NodeId> hub_class_sources);

/// Same bound from a partition of {T} ∪ V given in gadget node ids.
Count accounting_lower_bound(const Gadget& gadget, std::span<const NodeSet> partition);

}  // namespace chipfire
