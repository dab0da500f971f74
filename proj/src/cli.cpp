#include "chipfire/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "chipfire/bounds.hpp"
#include "chipfire/error.hpp"
#include "chipfire/gonality.hpp"
#include "chipfire/graph_io.hpp"
#include "chipfire/oracles.hpp"
#include "chipfire/reduction.hpp"
#include "chipfire/report.hpp"

namespace chipfire::cli {

namespace {

using report::Json;

struct Options {
  std::string file;
  std::string q;
  std::string divisor;
  std::string output;
  std::string set;
  Count max_degree = 0;
  std::size_t workers = 0;
  Count from_gonality = -1;
  bool oracle = false;
  bool spectral_pruning = false;
  bool with_gonality = false;
};

std::size_t resolve_workers(std::size_t flag) {
  if (const char* env = std::getenv("CHIPFIRE_WORKERS"); env && *env) {
    try {
      const long value = std::stol(env);
      if (value >= 1) return static_cast<std::size_t>(value);
    } catch (const std::exception&) {
    }
    throw CLI::ValidationError("CHIPFIRE_WORKERS", "expected a positive integer");
  }
  if (flag > 0) return flag;
  return std::max(1u, std::thread::hardware_concurrency());
}

NodeId lookup(const MultiGraph& g, const std::string& name) {
  auto v = g.find(name);
  if (!v) throw Error(ErrorKind::UnknownNode, "no node named '" + name + "'");
  return *v;
}

NodeSet parse_node_list(const MultiGraph& g, const std::string& text) {
  NodeSet nodes;
  std::stringstream in(text);
  std::string name;
  while (std::getline(in, name, ',')) {
    if (!name.empty()) nodes.push_back(lookup(g, name));
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

std::string join(const MultiGraph& g, const Divisor& d) {
  std::string s;
  for (NodeId v = 0; v < d.size(); ++v) {
    if (d[v] == 0) continue;
    if (!s.empty()) s += ",";
    s += g.name(v) + ":" + std::to_string(d[v]);
  }
  return s.empty() ? "0" : s;
}

int cmd_gonality(const Options& o, Json& out, std::ostream& err) {
  const MultiGraph g = read_graph_file(o.file);
  SearchConfig cfg;
  if (!o.q.empty()) cfg.base_point = lookup(g, o.q);
  if (o.max_degree > 0) cfg.max_degree = o.max_degree;
  cfg.worker_count = resolve_workers(o.workers);
  cfg.spectral_pruning = o.spectral_pruning;

  const auto result = gonality(g, cfg);
  out = report::gonality(g, result);
  err << "gonality " << result.gonality << " (witness " << join(g, result.witness) << ", "
      << result.candidates_examined << " candidates)\n";
  if (o.oracle) {
    const auto check = oracle::gonality_bruteforce(g);
    out["oracle_gonality"] = check.gonality;
    if (check.gonality != result.gonality) {
      err << "error: oracle gonality " << check.gonality << " disagrees with solver\n";
      return kExitDomain;
    }
    err << "oracle agrees\n";
  }
  return kExitOk;
}

int cmd_rank(const Options& o, Json& out, std::ostream& err) {
  const MultiGraph g = read_graph_file(o.file);
  const Divisor d = parse_divisor(g, o.divisor);
  const Count r = rank(g, d);
  out = Json{{"nodes", g.names()}, {"divisor", report::divisor(d)}, {"rank", r}};
  err << "rank " << r << "\n";
  if (o.oracle) {
    const Count check = oracle::rank_bruteforce(g, d);
    out["oracle_rank"] = check;
    if (check != r) {
      err << "error: oracle rank " << check << " disagrees with solver\n";
      return kExitDomain;
    }
  }
  return kExitOk;
}

int cmd_reduce(const Options& o, Json& out, std::ostream& err) {
  const MultiGraph g = read_graph_file(o.file);
  const Divisor d = parse_divisor(g, o.divisor);
  const NodeId q = o.q.empty() ? 0 : lookup(g, o.q);
  const auto result = reduce(g, d, q);
  out = report::reduction(g, result);
  err << "reduced " << format_divisor(result.reduced) << " at " << g.name(q) << "\n";
  return kExitOk;
}

int cmd_gadget(const Options& o, Json& out, std::ostream& err) {
  const MultiGraph g = read_graph_file(o.file);
  const Gadget gadget = build_gadget(g);
  const std::string text =
      serialize_graph(gadget.ghat, {"gadget of " + o.file, "M=" + std::to_string(gadget.big_multiplicity),
                                    "nodes=" + std::to_string(gadget.ghat.node_count())});
  out = report::gadget(gadget);
  if (o.output.empty()) {
    out["graph"] = text;
  } else {
    std::ofstream file(o.output);
    if (!file || !(file << text)) throw Error(ErrorKind::InvalidArgument, "cannot write '" + o.output + "'");
    out["output"] = o.output;
  }
  err << "gadget: " << gadget.ghat.node_count() << " nodes, M=" << gadget.big_multiplicity << "\n";
  return kExitOk;
}

int cmd_certify(const Options& o, Json& out, std::ostream& err) {
  const MultiGraph g = read_graph_file(o.file);
  const Gadget gadget = build_gadget(g);
  const NodeSet set = o.set.empty() ? oracle::alpha_bruteforce(g).witness : parse_node_list(g, o.set);
  const Certificate cert = certificate_divisor(gadget, set);
  const VerificationReport verdict = verify_certificate(gadget, cert);
  out = Json{{"certificate", report::certificate(gadget, cert)},
             {"verification", report::verification(gadget, verdict)}};
  err << "certificate degree " << cert.divisor.degree() << ": "
      << (verdict.positive_rank_confirmed ? "verified" : "REJECTED") << "\n";
  return verdict.positive_rank_confirmed ? kExitOk : kExitDomain;
}

int cmd_alpha(const Options& o, Json& out, std::ostream& err) {
  const MultiGraph g = read_graph_file(o.file);
  const auto alpha = oracle::alpha_bruteforce(g);
  out = Json{{"alpha", alpha.alpha},
             {"witness", report::node_names(g, alpha.witness)},
             {"gadget_gonality", certificate_degree_formula(g, static_cast<std::size_t>(alpha.alpha))}};
  err << "alpha " << alpha.alpha << "\n";
  if (o.from_gonality >= 0) {
    const Count implied = alpha_from_gonality(g, o.from_gonality);
    out["alpha_from_gonality"] = implied;
    if (implied != alpha.alpha) {
      err << "error: gadget gonality " << o.from_gonality << " implies alpha " << implied << "\n";
      return kExitDomain;
    }
  }
  return kExitOk;
}

int cmd_bounds(const Options& o, Json& out, std::ostream& err) {
  const MultiGraph g = read_graph_file(o.file);
  const auto b = bounds_report(g);
  out = report::bounds(b);
  err << "spectral lower " << b.spectral_lower << ", trivial upper " << b.trivial_upper
      << ", conjectured upper " << b.brill_noether_conjecture << " (conjectural)\n";
  if (o.with_gonality) {
    SearchConfig cfg;
    cfg.worker_count = resolve_workers(o.workers);
    const Count gon = gonality(g, cfg).gonality;
    out["gonality"] = gon;
    const bool violates = gon > b.brill_noether_conjecture;
    out["brill_noether_conjecture"]["violated"] = violates;
    if (violates) {
      err << "*** gonality " << gon << " exceeds the conjectured bound " << b.brill_noether_conjecture << " ***\n";
    }
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Divisor theory, gonality and the independent-set gadget on multigraphs", "chipfire"};
  app.require_subcommand(1);
  Options o;

  auto add_file = [&](CLI::App* sub) { sub->add_option("file", o.file, "Graph file")->required(); };

  auto* gon = app.add_subcommand("gonality", "Exact divisorial gonality");
  add_file(gon);
  gon->add_option("--q", o.q, "Base point for the reduced-divisor search");
  gon->add_option("--max-degree", o.max_degree, "Stop searching above this degree");
  gon->add_option("--workers", o.workers, "Worker threads (CHIPFIRE_WORKERS overrides)");
  gon->add_flag("--oracle", o.oracle, "Cross-check with brute-force enumeration");
  gon->add_flag("--spectral-pruning", o.spectral_pruning, "Start at the spectral lower bound");

  auto* rk = app.add_subcommand("rank", "Rank of a divisor");
  add_file(rk);
  rk->add_option("--divisor", o.divisor, "name:count,... or a bare vector")->required();
  rk->add_flag("--oracle", o.oracle, "Cross-check with brute-force evaluation");

  auto* red = app.add_subcommand("reduce", "q-reduced form of a divisor");
  add_file(red);
  red->add_option("--divisor", o.divisor, "name:count,... or a bare vector")->required();
  red->add_option("--q", o.q, "Base point (default: first node)");

  auto* gad = app.add_subcommand("gadget", "Build the independent-set gadget");
  add_file(gad);
  gad->add_option("-o,--output", o.output, "Write the gadget graph here");

  auto* cert = app.add_subcommand("certify", "Build and verify a certificate divisor");
  add_file(cert);
  cert->add_option("--set", o.set, "Independent set (default: a maximum one)");

  auto* alpha = app.add_subcommand("alpha", "Independence number");
  add_file(alpha);
  alpha->add_option("--from-gonality", o.from_gonality, "Check against a gadget gonality value");

  auto* bnd = app.add_subcommand("bounds", "Gonality bounds");
  add_file(bnd);
  bnd->add_flag("--with-gonality", o.with_gonality, "Also compute the gonality and compare");
  bnd->add_option("--workers", o.workers, "Worker threads for --with-gonality");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  Json result;
  int code = kExitOk;
  try {
    const auto* sub = app.get_subcommands().front();
    const std::string& name = sub->get_name();
    if (name == "gonality") code = cmd_gonality(o, result, err);
    else if (name == "rank") code = cmd_rank(o, result, err);
    else if (name == "reduce") code = cmd_reduce(o, result, err);
    else if (name == "gadget") code = cmd_gadget(o, result, err);
    else if (name == "certify") code = cmd_certify(o, result, err);
    else if (name == "alpha") code = cmd_alpha(o, result, err);
    else code = cmd_bounds(o, result, err);
    Json wrapped{{"command", name}};
    wrapped.update(result);
    out << wrapped.dump(2) << "\n";
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::BadDivisorLiteral ? kExitUsage : kExitDomain;
  }
  return code;
}

}  // namespace chipfire::cli
