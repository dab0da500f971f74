#pragma once

#include <json.hpp>

#include "chipfire/bounds.hpp"
#include "chipfire/divisor.hpp"
#include "chipfire/gonality.hpp"
#include "chipfire/multigraph.hpp"
#include "chipfire/reduction.hpp"

namespace chipfire::report {

using Json = nlohmann::ordered_json;

Json node_names(const MultiGraph& g, std::span<const NodeId> nodes);

/// {values, degree, effective}
Json divisor(const Divisor& d);

Json gonality(const MultiGraph& g, const GonalityResult& result);

Json reduction(const MultiGraph& g, const ReductionResult& result);

/// {nodes, big_multiplicity, node_count, edge_count, roles}
Json gadget(const Gadget& gadget);

/// {independent_set, divisor, schedule, degree, formula_rhs}
Json certificate(const Gadget& gadget, const Certificate& cert);

Json verification(const Gadget& gadget, const VerificationReport& report);

Json bounds(const BoundsReport& bounds);

}  // namespace chipfire::report
