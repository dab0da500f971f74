#include "chipfire/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "chipfire/error.hpp"

namespace chipfire {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) words.push_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

std::string at_line(std::size_t line_no) { return " (line " + std::to_string(line_no) + ")"; }

}  // namespace

MultiGraph parse_graph(std::string_view text) {
  std::vector<std::string> names;
  std::unordered_map<std::string, NodeId> index;
  std::vector<EdgeBundle> bundles;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    auto words = split_words(line);
    if (words.empty() || words[0].front() == '#') continue;

    if (words[0] == "node") {
      if (words.size() != 2) throw Error(ErrorKind::ParseError, "expected 'node <name>'" + at_line(line_no));
      std::string name(words[1]);
      if (index.contains(name)) throw Error(ErrorKind::DuplicateNode, "node '" + name + "' declared twice" + at_line(line_no));
      index.emplace(name, names.size());
      names.push_back(std::move(name));
    } else if (words[0] == "edge") {
      if (words.size() != 4) throw Error(ErrorKind::ParseError, "expected 'edge <u> <v> <m>'" + at_line(line_no));
      if (words[1] == words[2]) throw Error(ErrorKind::LoopRejected, "loop at '" + std::string(words[1]) + "'" + at_line(line_no));
      Count m = 0;
      auto [ptr, ec] = std::from_chars(words[3].data(), words[3].data() + words[3].size(), m);
      if (ec != std::errc() || ptr != words[3].data() + words[3].size()) {
        throw Error(ErrorKind::ParseError, "bad multiplicity '" + std::string(words[3]) + "'" + at_line(line_no));
      }
      if (m < 1) throw Error(ErrorKind::BadMultiplicity, "multiplicity " + std::to_string(m) + " < 1" + at_line(line_no));
      auto lookup = [&](std::string_view w) {
        auto it = index.find(std::string(w));
        if (it == index.end()) throw Error(ErrorKind::UnknownNode, "unknown node '" + std::string(w) + "'" + at_line(line_no));
        return it->second;
      };
      bundles.push_back({lookup(words[1]), lookup(words[2]), m});
    } else {
      throw Error(ErrorKind::ParseError, "unknown directive '" + std::string(words[0]) + "'" + at_line(line_no));
    }
  }
  const std::size_t count = names.size();
  return MultiGraph(count, bundles, std::move(names));
}

MultiGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string serialize_graph(const MultiGraph& g, const std::vector<std::string>& comments) {
  std::ostringstream out;
  for (const auto& c : comments) out << "# " << c << '\n';
  for (NodeId u = 0; u < g.node_count(); ++u) out << "node " << g.name(u) << '\n';
  for (const auto& b : g.bundles()) {
    out << "edge " << g.name(b.u) << ' ' << g.name(b.v) << ' ' << b.multiplicity << '\n';
  }
  return out.str();
}

}  // namespace chipfire
