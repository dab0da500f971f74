#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "chipfire/multigraph.hpp"

namespace chipfire {

/// Parses the line-oriented graph format:
///
///   # comment
///   node <name>
///   edge <u> <v> <m>
///
/// Node indices follow declaration order; repeated edge lines accumulate.
MultiGraph parse_graph(std::string_view text);

MultiGraph read_graph_file(const std::string& path);

/// Inverse of parse_graph. `comments` are emitted first, one "# " line each.
std::string serialize_graph(const MultiGraph& g, const std::vector<std::string>& comments = {});

}  // namespace chipfire
