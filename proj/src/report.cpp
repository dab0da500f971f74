#include "chipfire/report.hpp"

namespace chipfire::report {

namespace {

std::string role_name(GadgetRole role) {
  switch (role) {
    case GadgetRole::Hub: return "hub";
    case GadgetRole::Original: return "original";
    case GadgetRole::Prime: return "prime";
    case GadgetRole::Tee: return "tee";
    case GadgetRole::HalfEdge: return "half_edge";
  }
  return "unknown";
}

}  // namespace

Json node_names(const MultiGraph& g, std::span<const NodeId> nodes) {
  Json out = Json::array();
  for (NodeId v : nodes) out.push_back(g.name(v));
  return out;
}

Json divisor(const Divisor& d) {
  return Json{{"values", d.values()}, {"degree", d.degree()}, {"effective", d.is_effective()}};
}

Json gonality(const MultiGraph& g, const GonalityResult& result) {
  return Json{{"nodes", g.names()},
              {"gonality", result.gonality},
              {"witness", divisor(result.witness)},
              {"candidates_examined", result.candidates_examined},
              {"degree_schedule", result.degree_schedule}};
}

Json reduction(const MultiGraph& g, const ReductionResult& result) {
  return Json{{"nodes", g.names()},
              {"q", g.name(result.q)},
              {"reduced", divisor(result.reduced)},
              {"script", result.script.values()}};
}

Json gadget(const Gadget& gadget) {
  Json roles = Json::array();
  for (NodeId w = 0; w < gadget.roles.size(); ++w) {
    const auto& r = gadget.roles[w];
    Json entry{{"node", gadget.ghat.name(w)}, {"role", role_name(r.role)}};
    if (r.role != GadgetRole::Hub) entry["source"] = gadget.source.name(r.source);
    if (r.role == GadgetRole::HalfEdge) entry["edge"] = r.edge;
    roles.push_back(std::move(entry));
  }
  return Json{{"big_multiplicity", gadget.big_multiplicity},
              {"node_count", gadget.ghat.node_count()},
              {"edge_count", gadget.ghat.edge_count()},
              {"roles", std::move(roles)}};
}

Json certificate(const Gadget& gadget, const Certificate& cert) {
  Json schedule = Json::array();
  for (const auto& w : cert.schedule) schedule.push_back(node_names(gadget.ghat, w));
  Json orientation = Json::array();
  for (const auto& [tail, head] : cert.orientation) {
    orientation.push_back(Json::array({gadget.source.name(tail), gadget.source.name(head)}));
  }
  return Json{{"independent_set", node_names(gadget.source, cert.independent_set)},
              {"nodes", gadget.ghat.names()},
              {"divisor", divisor(cert.divisor)},
              {"orientation", std::move(orientation)},
              {"schedule", std::move(schedule)},
              {"degree", cert.divisor.degree()},
              {"formula_rhs", certificate_degree_formula(gadget.source, cert.independent_set.size())}};
}

Json verification(const Gadget& gadget, const VerificationReport& report) {
  Json out{{"schedule_effective", report.schedule_effective},
           {"schedule_covers", report.schedule_covers},
           {"covered_nodes", report.covered_nodes.size()},
           {"rank_by_reduction", report.rank_by_reduction},
           {"positive_rank_confirmed", report.positive_rank_confirmed}};
  if (report.failure) {
    out["failure"] = std::string(to_string(*report.failure));
    out["failed_step"] = report.failed_step;
  }
  if (report.covered_nodes.size() != gadget.ghat.node_count()) {
    std::vector<char> seen(gadget.ghat.node_count(), 0);
    for (NodeId w : report.covered_nodes) seen[w] = 1;
    NodeSet missing;
    for (NodeId w = 0; w < seen.size(); ++w) {
      if (!seen[w]) missing.push_back(w);
    }
    out["uncovered"] = node_names(gadget.ghat, missing);
  }
  return out;
}

Json bounds(const BoundsReport& b) {
  return Json{{"trivial_lower", b.trivial_lower},
              {"trivial_upper", b.trivial_upper},
              {"algebraic_connectivity", b.algebraic_connectivity},
              {"max_degree", b.max_degree},
              {"spectral_lower", b.spectral_lower},
              {"brill_noether_conjecture", {{"value", b.brill_noether_conjecture}, {"conjectural", true}}}};
}

}  // namespace chipfire::report
