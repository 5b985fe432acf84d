#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "epd/epd.hpp"

using namespace epd;

namespace {

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

struct Session {
  std::vector<std::string> argv;
  json inputs = json::object();
  std::string config_digest;
  uint64_t seed = 0;

  std::string read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    inputs[path] = sha256_hex(ss.str());
    return ss.str();
  }

  json read_json(const std::string& path) {
    std::string text = read(path);
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw DomainError("'" + path + "' is not valid JSON: " + e.what());
    }
  }

  Digraph graph(const std::string& path) { return digraph_from_json(read_json(path)); }
};

Session session;

Edge parse_edge(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw DomainError("edge '" + s + "' must be written u,v");
  try {
    return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw DomainError("edge '" + s + "' must be written u,v");
  }
}

MinorKind parse_kind(const std::string& s) {
  if (s == "topological") return MinorKind::Topological;
  if (s == "butterfly") return MinorKind::Butterfly;
  throw DomainError("unknown minor kind '" + s + "'");
}

std::optional<double> env_seconds() {
  const char* v = std::getenv("EPD_BUDGET_SECONDS");
  if (!v || !*v) return std::nullopt;
  try {
    return std::stod(v);
  } catch (const std::exception&) {
    throw DomainError("EPD_BUDGET_SECONDS must be a number");
  }
}

struct BudgetFlags {
  double seconds = 0;
  uint64_t steps = 0;
  size_t max_vertices = 12;

  void add(CLI::App* app) {
    app->add_option("--budget-seconds", seconds, "wall-clock cap in seconds (0: none)");
    app->add_option("--budget-steps", steps, "search step cap (0: none)");
    app->add_option("--max-vertices", max_vertices, "largest host graph the oracle accepts");
  }

  std::optional<double> time() const {
    auto env = env_seconds();
    if (seconds > 0 && env) return std::min(seconds, *env);
    if (seconds > 0) return seconds;
    return env;
  }

  OracleBudget oracle() const {
    OracleBudget ob;
    ob.max_vertices = ob.brute_force_vertices = max_vertices;
    ob.timeout_seconds = time();
    if (steps) ob.max_steps = steps;
    return ob;
  }

  Budget make() const { return Budget(steps ? steps : UINT64_MAX, time()); }
};

EPConfig config_from_json(const json& j) {
  EPConfig cfg;
  try {
    if (j.contains("exhaustive_bound")) cfg.exhaustive_bound = j.at("exhaustive_bound").get<size_t>();
    if (j.contains("max_grid_order")) cfg.max_grid_order = j.at("max_grid_order").get<int>();
    if (j.contains("verify")) cfg.verify = j.at("verify").get<bool>();
    if (j.contains("f1_strategy")) {
      std::string s = j.at("f1_strategy").get<std::string>();
      if (s == "exact") {
        cfg.f1_strategy = F1Strategy::ExactMinHitting;
      } else if (s == "fixed") {
        cfg.f1_strategy = F1Strategy::FixedBound;
      } else {
        throw DomainError("f1_strategy must be \"exact\" or \"fixed\"");
      }
    }
    if (j.contains("f1_fixed")) cfg.f1_fixed = j.at("f1_fixed").get<int>();
    if (j.contains("grid_threshold"))
      for (const auto& row : j.at("grid_threshold")) cfg.grid_threshold[{row.at(0).get<size_t>(), row.at(1).get<int>()}] = row.at(2).get<int>();
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed config: ") + e.what());
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

struct GenArgs {
  std::string family;
  int order = 0;
  std::string h_file;
  std::string edge, edge2;
  int c1 = 0, c2 = 1;
  bool dot = false;
  bool meta = false;
};

std::string cmd_gen(const GenArgs& a) {
  auto need_h = [&]() {
    if (a.h_file.empty()) throw DomainError(a.family + " needs --h-file");
    return session.graph(a.h_file);
  };
  auto need = [&](const std::string& s, const char* flag) {
    if (s.empty()) throw DomainError(a.family + " needs " + flag);
    return parse_edge(s);
  };
  std::optional<Attachment> att;
  Digraph g;
  if (a.family == "grid") {
    g = cylindrical_grid(a.order).graph;
  } else if (a.family == "wall") {
    g = cylindrical_wall(a.order).graph;
  } else if (a.family == "agrid") {
    g = acyclic_grid(a.order).graph;
  } else if (a.family == "attach-grid") {
    att = attach_to_grid(need_h(), need(a.edge, "--edge"), a.order);
  } else if (a.family == "attach-wall") {
    att = attach_to_wall(need_h(), need(a.edge, "--edge"), a.order);
  } else if (a.family == "attach-left") {
    att = left_acyclic_attachment(need_h(), a.c1, a.c2, need(a.edge, "--edge"), need(a.edge2, "--edge2"), a.order);
  } else if (a.family == "attach-right") {
    att = right_acyclic_attachment(need_h(), a.c1, a.c2, need(a.edge, "--edge"), need(a.edge2, "--edge2"), a.order);
  } else if (a.family == "attach-2e") {
    att = two_edge_attachment(need_h(), need(a.edge, "--edge"), need(a.edge2, "--edge2"), a.order);
  } else if (a.family == "attach-3c") {
    att = three_component_attachment(need_h(), need(a.edge, "--edge"), need(a.edge2, "--edge2"), a.order);
  } else {
    throw DomainError("unknown generator '" + a.family + "'");
  }
  if (att) g = att->graph;
  if (a.dot) return to_dot(g);
  if (a.meta && att) return dump_canonical(to_json(*att)) + "\n";
  return dump_canonical(to_json(g)) + "\n";
}

struct MinorArgs {
  std::string pattern, graph, kind = "topological", dtd;
  size_t exhaustive_bound = 14;
  BudgetFlags budget;
};

std::string cmd_check_minor(const MinorArgs& a) {
  Digraph h = session.graph(a.pattern), g = session.graph(a.graph);
  MinorKind kind = parse_kind(a.kind);
  Budget b = a.budget.make();
  std::optional<Model> m;
  if (!a.dtd.empty()) {
    m = find_model_bounded_dtw(h, g, dtd_from_json(session.read_json(a.dtd)), kind, &b);
  } else {
    m = find_model(h, g, kind, MinorOptions{a.exhaustive_bound, &b});
  }
  json out;
  out["embeds"] = m.has_value();
  if (m) out["model"] = to_json(*m);
  return dump_canonical(out) + "\n";
}

struct DtdArgs {
  std::string action, graph, dtd;
  size_t bound = 12;
};

json report_json(const DtdReport& r) {
  json j;
  j["valid"] = r.ok();
  j["width"] = r.width;
  j["violations"] = r.violations;
  return j;
}

std::string cmd_dtd(const DtdArgs& a) {
  Digraph g = session.graph(a.graph);
  json out;
  if (a.action == "validate") {
    if (a.dtd.empty()) throw DomainError("dtd validate needs --dtd");
    auto d = dtd_from_json(session.read_json(a.dtd));
    out = report_json(validate_dtd(g, d));
    out["special"] = validate_special_dtd(g, d).ok();
  } else if (a.action == "compute") {
    auto [w, d] = directed_tree_width(g, a.bound);
    out["width"] = w;
    out["decomposition"] = to_json(d);
  } else if (a.action == "special") {
    auto d = compute_special_dtd(g);
    out["width"] = d.width();
    out["decomposition"] = to_json(d);
  } else {
    throw DomainError("unknown dtd action '" + a.action + "'");
  }
  return dump_canonical(out) + "\n";
}

struct EpArgs {
  std::string pattern, graph, kind = "topological", dtd, config, engine = "auto";
  int k = 1;
  int l = 0, s = 0;
  bool no_verify = false;
  BudgetFlags budget;
};

std::string cmd_ep(const EpArgs& a) {
  EPConfig cfg;
  if (!a.config.empty()) {
    json j = session.read_json(a.config);
    session.config_digest = sha256_hex(j.dump());
    cfg = config_from_json(j);
  }
  if (a.no_verify) cfg.verify = false;
  Budget b = a.budget.make();
  cfg.budget = &b;
  Digraph g = session.graph(a.graph);
  MinorKind kind = parse_kind(a.kind);
  std::string engine = a.engine;
  PackOrHit r;
  if (engine == "bipartite-clusters") {
    if (a.l < 2 || a.s < 2) throw DomainError("bipartite-clusters needs --l and --s");
    r = pack_or_hit_bipartite_clusters(g, a.l, a.s, a.k, cfg);
  } else {
    if (a.pattern.empty()) throw DomainError("--pattern is required");
    Digraph h = session.graph(a.pattern);
    if (engine == "auto") {
      if (!a.dtd.empty()) {
        engine = "bounded-dtw";
      } else if (is_strongly_connected(h)) {
        engine = "strongly-connected";
      } else {
        engine = "two-cycles";
      }
    }
    if (engine == "bounded-dtw") {
      DirectedTreeDecomposition d = a.dtd.empty() ? directed_tree_width(g).second : dtd_from_json(session.read_json(a.dtd));
      r = pack_or_hit_bounded_dtw(h, g, d, a.k, kind, cfg);
    } else if (engine == "strongly-connected") {
      r = pack_or_hit_strongly_connected(h, g, a.k, cfg, kind);
    } else if (engine == "two-cycles") {
      r = pack_or_hit_two_cycles(h, g, a.k, cfg);
    } else {
      throw DomainError("unknown engine '" + engine + "'");
    }
  }
  json out = to_json(r);
  out["engine"] = engine;
  return dump_canonical(out) + "\n";
}

struct OracleArgs {
  std::string action, pattern, graph, kind = "topological";
  std::vector<std::string> pairs;
  int long_cycles = 0;
  BudgetFlags budget;
};

std::string cmd_oracle(const OracleArgs& a) {
  Digraph g = session.graph(a.graph);
  OracleBudget ob = a.budget.oracle();
  MinorKind kind = parse_kind(a.kind);
  json out;
  auto pattern = [&]() {
    if (a.pattern.empty()) throw DomainError("--pattern is required");
    return session.graph(a.pattern);
  };
  if (a.action == "has-minor") {
    auto m = oracle_find_model(pattern(), g, kind, ob);
    out["embeds"] = m.has_value();
    if (m) out["model"] = to_json(*m);
  } else if (a.action == "max-packing") {
    auto p = oracle_max_packing(pattern(), g, kind, ob);
    out["count"] = p.count;
    out["models"] = json::array();
    for (const auto& m : p.models) out["models"].push_back(to_json(m));
  } else if (a.action == "min-hit") {
    VSet s = a.long_cycles > 0 ? oracle_min_l_cycle_hitting(g, a.long_cycles, ob) : oracle_min_hitting_set(pattern(), g, kind, ob);
    out["size"] = s.size();
    out["hitting_set"] = vertex_list_json(s);
  } else if (a.action == "linkage") {
    std::vector<Edge> sigma;
    for (const auto& p : a.pairs) sigma.push_back(parse_edge(p));
    auto l = oracle_sigma_linkage(g, sigma, ob);
    out["linked"] = l.has_value();
    if (l) out["linkage"] = to_json(*l);
  } else {
    throw DomainError("unknown oracle action '" + a.action + "'");
  }
  return dump_canonical(out) + "\n";
}

struct ClaimArgs {
  std::string suite = "attachments";
  int max_order = 3;
  int jobs = 1;
};

std::string cmd_verify_claims(const ClaimArgs& a) {
  if (a.suite != "attachments") throw DomainError("unknown suite '" + a.suite + "'");
  if (a.max_order < 2) throw DomainError("--max-order must be at least 2");
  auto instances = attachment_claim_instances(a.max_order);
  std::vector<ClaimCheck> results(instances.size());
  const size_t jobs = static_cast<size_t>(std::max(1, a.jobs));
  for (size_t start = 0; start < instances.size(); start += jobs) {
    std::vector<std::future<ClaimCheck>> batch;
    for (size_t i = start; i < std::min(instances.size(), start + jobs); ++i)
      batch.push_back(std::async(jobs == 1 ? std::launch::deferred : std::launch::async,
                                 [&instances, i]() { return check_claim(instances[i]); }));
    for (size_t i = 0; i < batch.size(); ++i) results[start + i] = batch[i].get();
  }
  json out;
  out["suite"] = a.suite;
  out["max_order"] = a.max_order;
  out["results"] = json::array();
  int passed = 0;
  for (const auto& r : results) {
    out["results"].push_back(to_json(r));
    passed += r.passed();
  }
  out["passed"] = passed;
  out["failed"] = static_cast<int>(results.size()) - passed;
  out["all_passed"] = passed == static_cast<int>(results.size());
  return dump_canonical(out) + "\n";
}

void print_error(const std::string& kind, const std::string& msg) {
  json e;
  e["error"] = msg;
  e["kind"] = kind;
  std::cout << dump_canonical(e) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  session.argv.assign(argv, argv + argc);
  CLI::App app{"Erdos-Posa toolkit for directed graphs"};
  app.require_subcommand(1);
  std::string manifest;
  app.add_option("--manifest", manifest, "write a run manifest to this file");
  app.add_option("--seed", session.seed, "recorded in the manifest; all commands are deterministic");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "generate a grid, wall or attachment");
  g->add_option("family", gen.family)->required()->check(CLI::IsMember(
      {"grid", "wall", "agrid", "attach-grid", "attach-wall", "attach-left", "attach-right", "attach-2e", "attach-3c"}));
  g->add_option("--order", gen.order)->required();
  g->add_option("--h-file", gen.h_file);
  g->add_option("--edge", gen.edge);
  g->add_option("--edge2", gen.edge2);
  g->add_option("--c1", gen.c1);
  g->add_option("--c2", gen.c2);
  g->add_flag("--dot", gen.dot);
  g->add_flag("--meta", gen.meta, "print attachment bookkeeping alongside the graph");

  MinorArgs mi;
  auto* cm = app.add_subcommand("check-minor", "decide H minor of G and print a model");
  cm->add_option("--pattern", mi.pattern)->required();
  cm->add_option("--graph", mi.graph)->required();
  cm->add_option("--kind", mi.kind)->check(CLI::IsMember({"topological", "butterfly"}));
  cm->add_option("--dtd", mi.dtd);
  cm->add_option("--exhaustive-bound", mi.exhaustive_bound);
  mi.budget.add(cm);

  DtdArgs da;
  auto* dt = app.add_subcommand("dtd", "validate or compute directed tree decompositions");
  dt->add_option("action", da.action)->required()->check(CLI::IsMember({"validate", "compute", "special"}));
  dt->add_option("--graph", da.graph)->required();
  dt->add_option("--dtd", da.dtd);
  dt->add_option("--bound", da.bound);

  EpArgs ea;
  auto* ep = app.add_subcommand("ep", "pack-or-hit engines");
  std::string ep_action;
  ep->add_option("action", ep_action)->required()->check(CLI::IsMember({"pack-or-hit"}));
  ep->add_option("--pattern", ea.pattern);
  ep->add_option("--graph", ea.graph)->required();
  ep->add_option("--k", ea.k)->required();
  ep->add_option("--kind", ea.kind)->check(CLI::IsMember({"topological", "butterfly"}));
  ep->add_option("--dtd", ea.dtd);
  ep->add_option("--config", ea.config);
  ep->add_option("--engine", ea.engine)
      ->check(CLI::IsMember({"auto", "bounded-dtw", "strongly-connected", "bipartite-clusters", "two-cycles"}));
  ep->add_option("--l", ea.l);
  ep->add_option("--s", ea.s);
  ep->add_flag("--no-verify", ea.no_verify);
  ea.budget.add(ep);

  OracleArgs oa;
  auto* orc = app.add_subcommand("oracle", "brute-force reference answers");
  orc->add_option("action", oa.action)->required()->check(CLI::IsMember({"has-minor", "max-packing", "min-hit", "linkage"}));
  orc->add_option("--pattern", oa.pattern);
  orc->add_option("--graph", oa.graph)->required();
  orc->add_option("--kind", oa.kind)->check(CLI::IsMember({"topological", "butterfly"}));
  orc->add_option("--pair", oa.pairs, "terminal pair s,t (repeatable)");
  orc->add_option("--long-cycles", oa.long_cycles, "min-hit: hit cycles of length >= L instead of a pattern");
  oa.budget.add(orc);

  ClaimArgs ca;
  auto* vc = app.add_subcommand("verify-claims", "oracle checks of the counterexample families");
  vc->add_option("--suite", ca.suite)->check(CLI::IsMember({"attachments"}));
  vc->add_option("--max-order", ca.max_order);
  vc->add_option("--jobs", ca.jobs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return 1;
  }

  auto t0 = std::chrono::steady_clock::now();
  std::string output;
  int status = 0;
  try {
    if (*g) {
      output = cmd_gen(gen);
    } else if (*cm) {
      output = cmd_check_minor(mi);
    } else if (*dt) {
      output = cmd_dtd(da);
    } else if (*ep) {
      output = cmd_ep(ea);
    } else if (*orc) {
      output = cmd_oracle(oa);
    } else {
      output = cmd_verify_claims(ca);
    }
  } catch (const BudgetExceeded& e) {
    json err{{"error", e.what()}, {"kind", "budget"}};
    output = dump_canonical(err) + "\n";
    status = 2;
  } catch (const DomainError& e) {
    json err{{"error", e.what()}, {"kind", "domain"}};
    output = dump_canonical(err) + "\n";
    status = 1;
  } catch (const std::exception& e) {
    json err{{"error", e.what()}, {"kind", "domain"}};
    output = dump_canonical(err) + "\n";
    status = 1;
  }
  std::cout << output;

  if (!manifest.empty()) {
    json m;
    std::string cmd;
    for (size_t i = 1; i < session.argv.size(); ++i) cmd += (i > 1 ? " " : "") + session.argv[i];
    m["command"] = cmd;
    m["inputs"] = session.inputs;
    m["config_digest"] = session.config_digest;
    m["seed"] = session.seed;
    m["exit_status"] = status;
    m["output_sha256"] = sha256_hex(output);
    m["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ofstream out(manifest);
    out << m.dump(2) << "\n";
  }
  return status;
}
