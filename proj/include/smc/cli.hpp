#ifndef SMC_CLI_HPP
#define SMC_CLI_HPP

// The smc command line: solve, verify, generate, kernelize, bench.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "smc/contract.hpp"
#include "smc/format.hpp"
#include "smc/generators.hpp"
#include "smc/instance.hpp"
#include "smc/oracle.hpp"
#include "smc/sepdp.hpp"
#include "smc/treedec.hpp"
#include "smc/trees.hpp"
#include "smc/twdp.hpp"

namespace smc::cli {

using json = nlohmann::json;

enum Exit { ok = 0, answer_no = 1, usage = 2, input = 3, mismatch = 4 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& algo_names() {
  static const std::vector<std::string> names{"oracle", "sepdp", "contract", "twdp",
                                              "tree-greedy", "tree-branch", "tree-hs"};
  return names;
}

// limits used by `all` and `bench` so nothing runs for hours
struct Limits {
  double oracle_subsets = 2e6;
  int twdp_width = 6;
  int sepdp_t = 12;
  int sepdp_k = 5;
};

inline double subset_count(int pool, int k) {
  double total = 0, c = 1;
  for (int s = 0; s <= std::min(k, pool); ++s) {
    total += c;
    c = c * (pool - s) / (s + 1);
  }
  return total;
}

// Empty string when the algorithm applies; otherwise the reason.
inline std::string not_applicable(const std::string& algo, const Instance& inst, const Limits* lim) {
  bool tree = trees::is_tree(inst.graph);
  if (algo == "oracle") {
    if (lim && subset_count(static_cast<int>(oracle::deletable(inst).size()), inst.k) > lim->oracle_subsets)
      return "too many candidate cuts for brute force";
    return "";
  }
  if (algo == "sepdp" || algo == "contract") {
    if (inst.variant != Variant::edge) return algo + " handles the edge variant only";
    if (algo == "sepdp" && inst.t() > 24) return "sepdp supports at most 24 terminal sets";
    if (lim && (inst.t() > lim->sepdp_t || inst.k > lim->sepdp_k)) return "t or k above the limit for " + algo;
    return "";
  }
  if (algo == "twdp") {
    if (lim && heuristic_decomposition(inst.graph).width() > lim->twdp_width) return "decomposition too wide";
    return "";
  }
  if (algo == "tree-greedy") {
    if (inst.variant != Variant::node || !tree) return "tree-greedy needs a tree in the node variant";
    return "";
  }
  if (algo == "tree-branch" || algo == "tree-hs") {
    if (inst.variant == Variant::node || !tree) return algo + " needs a tree in the edge or rnode variant";
    if (algo == "tree-hs" && inst.t() > 24) return "tree-hs supports at most 24 terminal sets";
    return "";
  }
  return "unknown algorithm '" + algo + "'";
}

struct Outcome {
  std::string algo;
  std::optional<CutSet> cut;
  double millis = 0;
};

inline Outcome run_algo(const std::string& algo, const Instance& inst, std::uint64_t seed, double eps) {
  auto start = std::chrono::steady_clock::now();
  Outcome o{algo, std::nullopt, 0};
  if (algo == "oracle") o.cut = oracle::brute_force_solve(inst);
  else if (algo == "sepdp") o.cut = sepdp::solve_edge_kt(inst);
  else if (algo == "contract") {
    contract::Options opt;
    opt.seed = seed;
    opt.epsilon = eps;
    o.cut = contract::solve_edge_kt_rc(inst, opt);
  } else if (algo == "twdp") o.cut = twdp::solve_twdp(inst);
  else if (algo == "tree-greedy") o.cut = trees::solve_node_tree_greedy(inst);
  else if (algo == "tree-branch") o.cut = trees::solve_tree_branch_kp(inst);
  else if (algo == "tree-hs") o.cut = trees::solve_tree_hitting_t(inst);
  else throw std::invalid_argument("unknown algorithm '" + algo + "'");
  o.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return o;
}

inline std::string answer_line(const Instance& inst, const Outcome& o) {
  if (!o.cut) return "NO";
  std::string s = "YES k=" + std::to_string(o.cut->size()) + " cut:";
  std::string c = format_cut(inst, *o.cut);
  return c.empty() ? s : s + " " + c;
}

inline json cut_json(const Instance& inst, const CutSet& S) {
  std::vector<int> index(inst.graph.node_capacity(), -1);
  int next = 0;
  for (NodeId v : inst.graph.nodes()) index[v] = ++next;
  json arr = json::array();
  for (int x : S.members) {
    if (S.kind == CutKind::edges) {
      auto [u, v] = inst.graph.endpoints(x);
      arr.push_back({index[u], index[v]});
    } else {
      arr.push_back(index[x]);
    }
  }
  return arr;
}

inline json outcome_json(const Instance& inst, const Outcome& o) {
  json j{{"algo", o.algo}, {"answer", o.cut ? "yes" : "no"}, {"millis", o.millis}};
  if (o.cut) {
    j["cut_size"] = o.cut->size();
    j["kind"] = o.cut->kind == CutKind::edges ? "edges" : "nodes";
    j["cut"] = cut_json(inst, *o.cut);
  }
  return j;
}

inline Instance load(const std::string& path) {
  try {
    if (path == "-") {
      std::stringstream ss;
      ss << std::cin.rdbuf();
      return parse_instance(ss.str());
    }
    return read_instance_file(path);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
}

// "e u v; n v" with 1-based ids as in the text format
inline CutSet parse_cut(const Instance& inst, const std::string& text) {
  std::vector<NodeId> node_at;
  for (NodeId v : inst.graph.nodes()) node_at.push_back(v);
  auto node = [&](const std::string& tok) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || v < 1 || v > static_cast<long>(node_at.size()))
      throw InputError("bad node id '" + tok + "' in cut");
    return node_at[v - 1];
  };
  CutSet S{inst.cut_kind(), {}};
  std::vector<char> taken(inst.graph.edge_capacity(), 0);
  std::stringstream all(text);
  for (std::string part; std::getline(all, part, ';');) {
    std::istringstream ps(part);
    std::vector<std::string> tok;
    for (std::string t; ps >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "e" && tok.size() == 3) {
      if (S.kind != CutKind::edges) throw InputError("edge token in a node-variant cut");
      NodeId u = node(tok[1]), v = node(tok[2]);
      EdgeId pick = -1;
      for (EdgeId e : inst.graph.incident(u))
        if (!taken[e] && inst.graph.opposite(e, u) == v && (pick < 0 || e < pick)) pick = e;
      if (pick < 0) throw InputError("no edge " + tok[1] + " " + tok[2] + " left to cut");
      taken[pick] = 1;
      S.members.push_back(pick);
    } else if (tok[0] == "n" && tok.size() == 2) {
      if (S.kind != CutKind::nodes) throw InputError("node token in an edge-variant cut");
      S.members.push_back(node(tok[1]));
    } else {
      throw InputError("cannot read cut token '" + part + "'");
    }
  }
  normalize(S.members);
  return S;
}

// ---- subcommands ----

struct SolveArgs {
  std::string file, algo = "oracle";
  std::uint64_t seed = 1;
  double epsilon = 1e-3;
  bool json = false;
};

inline int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  Instance inst = load(a.file);
  if (a.algo != "all") {
    if (auto why = not_applicable(a.algo, inst, nullptr); !why.empty()) {
      err << "smc: " << why << "\n";
      return input;
    }
    Outcome o = run_algo(a.algo, inst, a.seed, a.epsilon);
    if (o.cut && !verify_cut(inst, *o.cut)) {
      err << "smc: " << a.algo << " returned a cut that does not verify\n";
      return mismatch;
    }
    if (a.json) out << outcome_json(inst, o).dump() << "\n";
    else out << answer_line(inst, o) << "\n";
    return o.cut ? ok : answer_no;
  }
  Limits lim;
  std::vector<Outcome> runs;
  json skipped = json::object();
  for (const auto& name : algo_names()) {
    if (auto why = not_applicable(name, inst, &lim); !why.empty()) {
      skipped[name] = why;
      continue;
    }
    runs.push_back(run_algo(name, inst, a.seed, a.epsilon));
  }
  bool agree = true;
  for (const auto& o : runs) {
    if (o.cut && !verify_cut(inst, *o.cut)) agree = false;
    bool same = o.cut.has_value() == runs[0].cut.has_value() && (!o.cut || o.cut->size() == runs[0].cut->size());
    agree = agree && same;
  }
  if (a.json) {
    json rs = json::array();
    for (const auto& o : runs) rs.push_back(outcome_json(inst, o));
    out << json{{"results", rs}, {"skipped", skipped}, {"agree", agree}}.dump() << "\n";
  } else {
    for (const auto& o : runs) out << o.algo << ": " << answer_line(inst, o) << "\n";
    for (const auto& [name, why] : skipped.items()) out << name << ": skipped (" << why.get<std::string>() << ")\n";
    out << (agree ? "AGREE" : "MISMATCH") << "\n";
  }
  if (!agree) {
    err << "smc: algorithms disagree\n";
    return mismatch;
  }
  return runs.empty() || runs[0].cut ? ok : answer_no;
}

inline int cmd_verify(const std::string& file, const std::string& cut, bool as_json, std::ostream& out) {
  Instance inst = load(file);
  CutSet S = parse_cut(inst, cut);
  bool valid = false;
  try {
    valid = verify_cut(inst, S);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (as_json) out << json{{"valid", valid}, {"cut_size", S.size()}}.dump() << "\n";
  else out << (valid ? "VALID" : "INVALID") << "\n";
  return valid ? ok : answer_no;
}

struct GenerateArgs {
  std::string from, source, variant, outdir;
  std::uint64_t seed = 0;
  bool json = false;
};

inline int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  json src;
  {
    std::ifstream f(a.source);
    if (!f) throw InputError("cannot open " + a.source);
    try {
      src = json::parse(f);
    } catch (const json::exception& e) {
      throw InputError(a.source + ": " + e.what());
    }
  }
  std::string vname = a.variant.empty() ? (a.from == "mcclique" ? "node" : "edge") : a.variant;
  auto var = variant_from_name(vname);
  if (!var) throw InputError("unknown variant '" + vname + "'");
  Instance inst;
  std::optional<bool> expected;
  json source;
  try {
    if (a.from == "hittingset") {
      auto hs = gen::hitting_set_from_json(src);
      inst = gen::gen_tree_from_hittingset(hs, *var);
      source = gen::to_json(hs);
      try {
        expected = gen::solve_reference(hs).has_value();
      } catch (const std::length_error&) {
      }
    } else if (a.from == "nae") {
      auto nae = gen::nae_from_json(src);
      inst = gen::gen_from_nae(nae, *var);
      source = gen::to_json(nae);
      try {
        expected = gen::solve_nae_enum(nae).has_value();
      } catch (const std::length_error&) {
      }
    } else {
      auto mcc = gen::mcc_from_json(src);
      if (*var == Variant::edge) inst = gen::gen_from_nae(gen::gen_nae_from_mcc(mcc), Variant::edge);
      else inst = gen::gen_node_from_mcc(mcc);
      if (*var == Variant::rnode) inst = node_to_rnode(inst);
      source = gen::to_json(mcc);
      try {
        expected = gen::solve_reference(mcc).has_value();
      } catch (const std::length_error&) {
      }
    }
  } catch (const json::exception& e) {
    throw InputError(a.source + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  namespace fs = std::filesystem;
  fs::create_directories(a.outdir);
  std::string name = fs::path(a.source).stem().string() + "-" + vname + ".smc";
  fs::path file = fs::path(a.outdir) / name;
  std::ofstream(file) << serialize_instance(inst);
  std::string line = gen::manifest_line(a.from, source, expected, a.seed, name);
  std::ofstream(fs::path(a.outdir) / "manifest.jsonl", std::ios::app) << line << "\n";
  if (a.json) out << line << "\n";
  else out << file.string() << "\n";
  return ok;
}

inline int cmd_kernelize(const std::string& file, const std::string& output, bool as_json, std::ostream& out,
                         std::ostream& err) {
  Instance inst = load(file);
  if (!trees::is_tree(inst.graph) || inst.variant == Variant::node) {
    err << "smc: kernelize needs a tree in the edge or rnode variant\n";
    return input;
  }
  Instance ker = trees::kernelize_tree_tp(inst);
  std::string text = serialize_instance(ker);
  if (!output.empty()) std::ofstream(output) << text;
  if (as_json) {
    json j{{"nodes_before", inst.graph.node_count()}, {"nodes_after", ker.graph.node_count()},
           {"edges_before", inst.graph.edge_count()}, {"edges_after", ker.graph.edge_count()}};
    if (output.empty()) j["instance"] = text;
    out << j.dump() << "\n";
  } else if (output.empty()) {
    out << text;
  } else {
    out << "nodes " << inst.graph.node_count() << " -> " << ker.graph.node_count() << "\n";
  }
  return ok;
}

// ---- bench ----

namespace detail {

inline MultiGraph bench_graph(std::mt19937_64& rng, int n, int extra) {
  MultiGraph g(n);
  for (int i = 1; i < n; ++i) g.add_edge(static_cast<NodeId>(rng() % i), i);
  for (int added = 0, tries = 0; added < extra && tries < 100 * (extra + 1); ++tries) {
    NodeId a = static_cast<NodeId>(rng() % n), b = static_cast<NodeId>(rng() % n);
    if (a == b) continue;
    g.add_edge(a, b);
    ++added;
  }
  return g;
}

inline std::vector<NodeSet> bench_sets(std::mt19937_64& rng, int n, int t, int pmax) {
  std::vector<NodeSet> sets;
  for (int i = 0; i < t; ++i) {
    int p = 2 + static_cast<int>(rng() % (pmax - 1));
    NodeSet s;
    while (static_cast<int>(s.size()) < std::min(p, n)) {
      s.push_back(static_cast<NodeId>(rng() % n));
      normalize(s);
    }
    sets.push_back(s);
  }
  return sets;
}

}  // namespace detail

struct BenchArgs {
  std::vector<int> sizes{16, 32, 64};
  int repeats = 3;
  std::string algos = "tree-greedy,tree-branch,tree-hs,twdp,sepdp,contract";
  std::uint64_t seed = 1;
  bool json = false;
};

inline int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<std::string> algos;
  std::stringstream ss(a.algos);
  for (std::string s; std::getline(ss, s, ',');)
    if (!s.empty()) algos.push_back(s);
  for (const auto& s : algos)
    if (std::find(algo_names().begin(), algo_names().end(), s) == algo_names().end()) {
      err << "smc: unknown algorithm '" << s << "'\n";
      return usage;
    }
  std::mt19937_64 rng(a.seed);
  Limits lim;
  json rows = json::array();
  if (!a.json) out << "algo,instance,n,m,t,p,k,answer,cut_size,millis\n";
  for (int n : a.sizes) {
    if (n < 2) {
      err << "smc: sizes must be at least 2\n";
      return usage;
    }
    for (int r = 0; r < a.repeats; ++r) {
      std::vector<std::pair<std::string, Instance>> cases;
      Instance tree;
      tree.graph = detail::bench_graph(rng, n, 0);
      tree.sets = detail::bench_sets(rng, n, std::clamp(n / 8, 1, 12), 4);
      tree.k = 2;
      for (Variant v : {Variant::edge, Variant::node}) {
        tree.variant = v;
        cases.push_back({"tree-" + std::string(variant_name(v)) + "-" + std::to_string(n) + "-" + std::to_string(r),
                         tree});
      }
      Instance graph;
      graph.graph = detail::bench_graph(rng, n, std::max(1, n / 8));
      graph.sets = detail::bench_sets(rng, n, 2, 3);
      graph.k = 2;
      cases.push_back({"graph-edge-" + std::to_string(n) + "-" + std::to_string(r), graph});
      for (const auto& [name, inst] : cases)
        for (const auto& algo : algos) {
          if (!not_applicable(algo, inst, &lim).empty()) continue;
          Outcome o = run_algo(algo, inst, a.seed + r, 1e-3);
          json row{{"algo", algo},         {"instance", name}, {"n", inst.graph.node_count()},
                   {"m", inst.graph.edge_count()}, {"t", inst.t()}, {"p", inst.p()},
                   {"k", inst.k},          {"answer", o.cut ? "yes" : "no"},
                   {"cut_size", o.cut ? o.cut->size() : -1}, {"millis", o.millis}};
          if (a.json) {
            rows.push_back(row);
          } else {
            out << algo << "," << name << "," << row["n"] << "," << row["m"] << "," << row["t"] << "," << row["p"]
                << "," << row["k"] << "," << (o.cut ? "yes" : "no") << "," << row["cut_size"] << ","
                << std::fixed << std::setprecision(3) << o.millis << std::defaultfloat << "\n";
          }
        }
    }
  }
  if (a.json) out << rows.dump() << "\n";
  return ok;
}

// ---- entry ----

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steiner multicut solvers and instance tools", "smc"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "solve an instance");
  solve->add_option("file", sa.file, "instance file ('-' for stdin)")->required();
  std::vector<std::string> algo_choices = algo_names();
  algo_choices.push_back("all");
  solve->add_option("--algo", sa.algo, "solver")->check(CLI::IsMember(algo_choices));
  solve->add_option("--seed", sa.seed, "random seed");
  solve->add_option("--epsilon", sa.epsilon, "failure probability of the randomized solver")
      ->check(CLI::Range(1e-12, 0.5));
  solve->add_flag("--json", sa.json, "machine-readable output");

  std::string vfile, vcut;
  bool vjson = false;
  auto* verify = app.add_subcommand("verify", "check a cut");
  verify->add_option("file", vfile, "instance file")->required();
  verify->add_option("--cut", vcut, "cut as 'e u v; ...' or 'n v; ...'")->required();
  verify->add_flag("--json", vjson, "machine-readable output");

  GenerateArgs ga;
  auto* generate = app.add_subcommand("generate", "build an instance from a source problem");
  generate->add_option("--from", ga.from, "source problem")
      ->required()
      ->check(CLI::IsMember({"hittingset", "nae", "mcclique"}));
  generate->add_option("source", ga.source, "source problem as JSON")->required();
  generate->add_option("--variant", ga.variant, "edge, node or rnode")->check(CLI::IsMember({"edge", "node", "rnode"}));
  generate->add_option("-o,--out", ga.outdir, "output directory")->required();
  generate->add_option("--seed", ga.seed, "seed recorded in the manifest");
  generate->add_flag("--json", ga.json, "machine-readable output");

  std::string kfile, kout;
  bool kjson = false;
  auto* kernelize = app.add_subcommand("kernelize", "shrink a tree instance");
  kernelize->add_option("file", kfile, "instance file")->required();
  kernelize->add_option("-o,--out", kout, "write the kernel here");
  kernelize->add_flag("--json", kjson, "machine-readable output");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "time the solvers on random instances, CSV on stdout");
  bench->add_option("--sizes", ba.sizes, "node counts")->delimiter(',');
  bench->add_option("--repeats", ba.repeats, "instances per size")->check(CLI::PositiveNumber);
  bench->add_option("--algo", ba.algos, "comma separated solvers");
  bench->add_option("--seed", ba.seed, "random seed");
  bench->add_flag("--json", ba.json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? ok : usage;
  }
  try {
    if (*solve) return cmd_solve(sa, out, err);
    if (*verify) return cmd_verify(vfile, vcut, vjson, out);
    if (*generate) {
      if (ga.from == "hittingset" && ga.variant == "node") {
        err << "smc: the hitting set reduction builds edge or rnode instances\n";
        return usage;
      }
      return cmd_generate(ga, out);
    }
    if (*kernelize) return cmd_kernelize(kfile, kout, kjson, out, err);
    if (*bench) return cmd_bench(ba, out, err);
  } catch (const InputError& e) {
    err << "smc: " << e.what() << "\n";
    return input;
  } catch (const std::invalid_argument& e) {
    err << "smc: " << e.what() << "\n";
    return input;
  }
  return usage;
}

}  // namespace smc::cli

#endif
