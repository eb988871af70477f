#ifndef SMC_GENERATORS_HPP
#define SMC_GENERATORS_HPP

// Instance generators from hitting set, NAE integer 3-SAT and multicolored
// clique, plus brute-force solvers for the source problems.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "smc/instance.hpp"

namespace smc::gen {

using json = nlohmann::json;

struct HittingSetInstance {
  std::vector<int> universe;
  std::vector<std::vector<int>> family;
  int k = 0;

  void validate() {
    std::sort(universe.begin(), universe.end());
    if (std::adjacent_find(universe.begin(), universe.end()) != universe.end())
      throw std::invalid_argument("duplicate universe element");
    if (k < 0) throw std::invalid_argument("negative budget");
    for (auto& f : family) {
      std::sort(f.begin(), f.end());
      f.erase(std::unique(f.begin(), f.end()), f.end());
      if (f.empty()) throw std::invalid_argument("empty set in family");
      for (int u : f)
        if (!std::binary_search(universe.begin(), universe.end(), u))
          throw std::invalid_argument("set element " + std::to_string(u) + " not in universe");
    }
  }
};

// literal "x_var <= bound", var is 1-based
struct Literal {
  int var = 1;
  int bound = 0;
  friend bool operator==(const Literal&, const Literal&) = default;
};
using Clause = std::array<Literal, 3>;

struct NAEInstance {
  int K = 0;
  int n = 1;
  std::vector<Clause> clauses;

  void validate() const {
    if (K < 0 || n < 1) throw std::invalid_argument("bad NAE dimensions");
    for (const auto& c : clauses)
      for (const auto& l : c) {
        if (l.var < 1 || l.var > K) throw std::invalid_argument("variable index out of range");
        if (l.bound < 0 || l.bound > n) throw std::invalid_argument("bound out of range");
      }
  }
};

inline bool nae_holds(const Clause& c, const std::vector<int>& x) {
  int trues = 0;
  for (const auto& l : c) trues += x[l.var - 1] <= l.bound;
  return trues != 0 && trues != 3;
}

struct MCCInstance {
  MultiGraph graph;
  std::vector<int> color;  // per node id, 0..k-1
  int k = 0;

  std::vector<NodeSet> classes() const {
    std::vector<NodeSet> cl(k);
    for (NodeId v : graph.nodes()) cl[color[v]].push_back(v);
    return cl;
  }

  void validate() const {
    if (k < 0) throw std::invalid_argument("negative colour count");
    if (static_cast<int>(color.size()) < graph.node_capacity()) throw std::invalid_argument("uncoloured node");
    for (NodeId v : graph.nodes())
      if (color[v] < 0 || color[v] >= k) throw std::invalid_argument("colour out of range");
    for (EdgeId e : graph.edges()) {
      auto [u, v] = graph.endpoints(e);
      if (color[u] == color[v]) throw std::invalid_argument("monochromatic edge");
    }
  }
};

// ---- tree reduction from hitting set ----

inline Instance gen_tree_from_hittingset(HittingSetInstance hs, Variant variant) {
  if (variant == Variant::node) throw std::invalid_argument("tree generator takes edge or rnode");
  hs.validate();
  if (hs.family.empty()) throw std::invalid_argument("empty family");
  Instance inst;
  inst.variant = variant;
  inst.k = hs.k;
  MultiGraph& g = inst.graph;
  NodeId r = g.add_node();
  // sigma[f] collects the path node of every element of family member f
  std::vector<NodeSet> sigma(hs.family.size());
  for (int u : hs.universe) {
    NodeId prev = r;
    if (variant == Variant::rnode) {
      bool used = false;
      for (const auto& f : hs.family) used = used || std::binary_search(f.begin(), f.end(), u);
      if (!used) continue;
      prev = g.add_node();
      g.add_edge(r, prev);
    }
    for (std::size_t f = 0; f < hs.family.size(); ++f) {
      if (!std::binary_search(hs.family[f].begin(), hs.family[f].end(), u)) continue;
      NodeId x = g.add_node();
      g.add_edge(prev, x);
      sigma[f].push_back(x);
      prev = x;
    }
  }
  for (auto& s : sigma) {
    s.push_back(r);
    normalize(s);
    inst.sets.push_back(s);
  }
  inst.validate();
  return inst;
}

// ---- NAE integer 3-SAT ----

namespace detail {

// a set nobody can afford to cut: K+1 parallel edges, or an adjacent pair on top of K forced deletions
inline NodeSet uncuttable_pair(MultiGraph& g, int K, bool edges) {
  NodeId a = g.add_node(), b = g.add_node();
  for (int i = 0; i < (edges ? K + 1 : 1); ++i) g.add_edge(a, b);
  return {a, b};
}

}  // namespace detail

inline Instance gen_from_nae(const NAEInstance& nae, Variant variant) {
  nae.validate();
  const int K = nae.K, n = nae.n;
  Instance inst;
  inst.k = K;
  MultiGraph& g = inst.graph;
  NodeId s = g.add_node(), t = g.add_node();
  if (variant == Variant::edge) {
    inst.variant = Variant::edge;
    // v[i][j], j = 0..n, with v[i][0] = s and v[i][n] = t
    std::vector<std::vector<NodeId>> v(K, std::vector<NodeId>(n + 1));
    for (int i = 0; i < K; ++i) {
      v[i][0] = s;
      v[i][n] = t;
      for (int j = 1; j < n; ++j) v[i][j] = g.add_node();
      for (int j = 1; j <= n; ++j) g.add_edge(v[i][j - 1], v[i][j]);
    }
    inst.sets.push_back({s, t});
    for (const auto& c : nae.clauses) {
      NodeSet ts;
      for (const auto& l : c) ts.push_back(v[l.var - 1][l.bound]);
      normalize(ts);
      if (ts.size() < 2) ts = detail::uncuttable_pair(g, K, true);
      inst.sets.push_back(ts);
    }
    inst.validate();
    return inst;
  }
  if (n < 2) throw std::invalid_argument("node gadget needs a domain of at least 2");
  inst.variant = Variant::node;
  const int len = 2 * n;
  std::vector<std::vector<NodeId>> v(K, std::vector<NodeId>(len + 1));
  for (int i = 0; i < K; ++i) {
    v[i][0] = s;
    v[i][len] = t;
    for (int j = 1; j < len; ++j) v[i][j] = g.add_node();
    for (int j = 1; j <= len; ++j) g.add_edge(v[i][j - 1], v[i][j]);
    inst.sets.push_back({v[i][1], v[i][len - 1]});
  }
  // "x <= a" is represented by v_{2a-1} and v_{2a}, clamped to s
  auto rep = [&](const Literal& l, int c) { return v[l.var - 1][std::max(0, 2 * l.bound - c)]; };
  for (const auto& c : nae.clauses) {
    for (int mask = 0; mask < 8; ++mask) {
      NodeSet ts;
      for (int j = 0; j < 3; ++j) ts.push_back(rep(c[j], mask >> j & 1));
      normalize(ts);
      if (ts.size() < 2) ts = detail::uncuttable_pair(g, K, false);
      inst.sets.push_back(ts);
    }
  }
  inst.validate();
  return variant == Variant::rnode ? node_to_rnode(inst) : inst;
}

// Lexicographically first satisfying assignment (values 1..n).
inline std::optional<std::vector<int>> solve_nae_enum(const NAEInstance& nae, double max_assignments = 1e7) {
  nae.validate();
  if (std::pow(static_cast<double>(nae.n), nae.K) > max_assignments)
    throw std::length_error("NAE instance too large to enumerate");
  // clauses grouped by their last variable
  std::vector<std::vector<int>> closing(nae.K + 1);
  for (std::size_t c = 0; c < nae.clauses.size(); ++c) {
    int last = 0;
    for (const auto& l : nae.clauses[c]) last = std::max(last, l.var);
    closing[last].push_back(static_cast<int>(c));
  }
  std::vector<int> x(nae.K, 1);
  auto dfs = [&](auto&& self, int i) -> bool {
    if (i == nae.K) return true;
    for (int a = 1; a <= nae.n; ++a) {
      x[i] = a;
      bool ok = true;
      for (int c : closing[i + 1]) ok = ok && nae_holds(nae.clauses[c], x);
      if (ok && self(self, i + 1)) return true;
    }
    x[i] = 1;
    return false;
  };
  if (!dfs(dfs, 0)) return std::nullopt;
  return x;
}

// Variables: per colour i the pair x_i, x̄_i, then per colour pair i<j the pair
// y_ij, ȳ_ij. Classes and E_ij are numbered 1.. in sorted id order.
struct NAEFromMCC {
  NAEInstance nae;
  std::vector<int> x;                      // colour -> var
  std::map<std::pair<int, int>, int> y;    // (i, j), i < j -> var
  std::vector<std::pair<int, int>> complement;  // (var, complement var)
};

inline NAEFromMCC gen_nae_from_mcc_detailed(const MCCInstance& mcc) {
  mcc.validate();
  auto cl = mcc.classes();
  const int k = mcc.k;
  std::map<std::pair<int, int>, std::vector<std::pair<NodeId, NodeId>>> E;
  for (EdgeId e : mcc.graph.edges()) {
    auto [u, v] = mcc.graph.endpoints(e);
    if (mcc.color[u] > mcc.color[v]) std::swap(u, v);
    E[{mcc.color[u], mcc.color[v]}].push_back({u, v});
  }
  for (auto& [key, list] : E) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  int n = 1;
  for (const auto& c : cl) n = std::max(n, static_cast<int>(c.size()));
  for (const auto& [key, list] : E) n = std::max(n, static_cast<int>(list.size()));

  NAEFromMCC out;
  NAEInstance& nae = out.nae;
  nae.n = n;
  int next = 0;
  auto pair_var = [&]() {
    int a = ++next, b = ++next;
    out.complement.push_back({a, b});
    return a;
  };
  for (int i = 0; i < k; ++i) out.x.push_back(pair_var());
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) out.y[{i, j}] = pair_var();
  nae.K = next;
  auto L = [](int var, int a) { return Literal{var, a}; };
  for (auto [a, b] : out.complement)
    for (int v = 1; v <= n; ++v) nae.clauses.push_back({L(a, v), L(a, v), L(b, n - v)});
  auto restrict = [&](int var, int size) { nae.clauses.push_back({L(var, 0), L(var, 0), L(var, size)}); };
  for (int i = 0; i < k; ++i) restrict(out.x[i], static_cast<int>(cl[i].size()));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      auto it = E.find({i, j});
      restrict(out.y[{i, j}], it == E.end() ? 0 : static_cast<int>(it->second.size()));
    }
  auto index_in = [&](int c, NodeId v) {
    return static_cast<int>(std::lower_bound(cl[c].begin(), cl[c].end(), v) - cl[c].begin()) + 1;
  };
  for (const auto& [key, list] : E) {
    int yv = out.y[key], ybar = yv + 1;
    for (std::size_t e = 0; e < list.size(); ++e) {
      int idx = static_cast<int>(e) + 1;
      // y < idx  ->  y <= idx-1 ;  y > idx  ->  ybar <= n-idx
      Literal lo = L(yv, idx - 1), hi = L(ybar, n - idx);
      for (auto [c, node] : {std::pair{key.first, list[e].first}, std::pair{key.second, list[e].second}}) {
        int xv = out.x[c], xbar = xv + 1, u = index_in(c, node);
        nae.clauses.push_back({lo, hi, L(xv, u)});             // x <= u
        nae.clauses.push_back({lo, hi, L(xbar, n + 1 - u)});   // x >= u
      }
    }
  }
  return out;
}

inline NAEInstance gen_nae_from_mcc(const MCCInstance& mcc) { return gen_nae_from_mcc_detailed(mcc).nae; }

// ---- node reduction from multicolored clique ----

inline Instance gen_node_from_mcc(const MCCInstance& mcc) {
  mcc.validate();
  auto cl = mcc.classes();
  const int k = mcc.k;
  for (const auto& c : cl)
    if (c.empty()) throw std::invalid_argument("empty colour class");
  Instance inst;
  inst.variant = Variant::node;
  inst.k = k;
  MultiGraph& g = inst.graph;
  std::vector<NodeId> image(mcc.graph.node_capacity(), -1);
  for (NodeId v : mcc.graph.nodes()) image[v] = g.add_node();
  std::vector<std::vector<NodeSet>> N(k, std::vector<NodeSet>(k));
  for (EdgeId e : mcc.graph.edges()) {
    auto [u, v] = mcc.graph.endpoints(e);
    NodeId m = g.add_node();
    g.add_edge(image[u], m);
    g.add_edge(m, image[v]);
    N[mcc.color[u]][mcc.color[v]].push_back(m);
    N[mcc.color[v]][mcc.color[u]].push_back(m);
  }
  NodeSet C;
  for (int i = 0; i < 2 * k; ++i) C.push_back(g.add_node());
  for (int i = 0; i < 2 * k; ++i)
    for (int j = i + 1; j < 2 * k; ++j) g.add_edge(C[i], C[j]);
  for (int i = 0; i < k; ++i)
    for (NodeId v : cl[i]) {
      g.add_edge(image[v], C[2 * i]);
      g.add_edge(image[v], C[2 * i + 1]);
    }
  for (int i = 0; i < k; ++i) {
    NodeSet Vi;
    for (NodeId v : cl[i]) Vi.push_back(image[v]);
    NodeSet a = Vi, b = Vi;
    a.push_back(C[2 * i]);
    b.push_back(C[2 * i + 1]);
    inst.sets.push_back(a);
    inst.sets.push_back(b);
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      NodeSet s = N[i][j];
      s.insert(s.end(), C.begin(), C.end());
      inst.sets.push_back(s);
    }
  inst.validate();
  return inst;
}

// ---- reference solvers ----

inline std::optional<std::vector<int>> solve_reference(HittingSetInstance hs, double max_subsets = 1e7) {
  hs.validate();
  const int U = static_cast<int>(hs.universe.size());
  double count = 0, c = 1;
  for (int s = 0; s <= std::min(hs.k, U); ++s) {
    count += c;
    c = c * (U - s) / (s + 1);
  }
  if (count > max_subsets) throw std::length_error("hitting set instance too large to enumerate");
  std::vector<int> pick;
  std::optional<std::vector<int>> found;
  auto hits = [&]() {
    for (const auto& f : hs.family) {
      bool h = false;
      for (int u : pick) h = h || std::binary_search(f.begin(), f.end(), u);
      if (!h) return false;
    }
    return true;
  };
  for (int size = 0; size <= std::min(hs.k, U) && !found; ++size) {
    auto rec = [&](auto&& self, int from) -> bool {
      if (static_cast<int>(pick.size()) == size) return hits();
      for (int i = from; i < U; ++i) {
        pick.push_back(hs.universe[i]);
        if (self(self, i + 1)) return true;
        pick.pop_back();
      }
      return false;
    };
    if (rec(rec, 0)) found = pick;
  }
  return found;
}

// One node per colour, pairwise adjacent; returns the nodes by colour.
inline std::optional<std::vector<NodeId>> solve_reference(const MCCInstance& mcc, double max_tuples = 1e7) {
  mcc.validate();
  auto cl = mcc.classes();
  double total = 1;
  for (const auto& c : cl) total *= static_cast<double>(c.size());
  if (total > max_tuples) throw std::length_error("clique instance too large to enumerate");
  std::vector<std::vector<char>> adj(mcc.graph.node_capacity(), std::vector<char>(mcc.graph.node_capacity(), 0));
  for (EdgeId e : mcc.graph.edges()) {
    auto [u, v] = mcc.graph.endpoints(e);
    adj[u][v] = adj[v][u] = 1;
  }
  std::vector<NodeId> pick;
  auto rec = [&](auto&& self, int i) -> bool {
    if (i == mcc.k) return true;
    for (NodeId v : cl[i]) {
      bool ok = true;
      for (NodeId w : pick) ok = ok && adj[v][w];
      if (!ok) continue;
      pick.push_back(v);
      if (self(self, i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return pick;
}

// ---- JSON ----
// hittingset: {"universe":[..], "family":[[..],..], "k":K}
// nae:        {"vars":K, "n":n, "clauses":[[[var,bound],[var,bound],[var,bound]],..]}
// mcclique:   {"nodes":N, "edges":[[u,v],..], "colors":[c per node], "k":k}, ids and colours 1-based

inline json to_json(const HittingSetInstance& hs) {
  return {{"universe", hs.universe}, {"family", hs.family}, {"k", hs.k}};
}

inline json to_json(const NAEInstance& nae) {
  json cs = json::array();
  for (const auto& c : nae.clauses) {
    json one = json::array();
    for (const auto& l : c) one.push_back({l.var, l.bound});
    cs.push_back(one);
  }
  return {{"vars", nae.K}, {"n", nae.n}, {"clauses", cs}};
}

inline json to_json(const MCCInstance& mcc) {
  std::vector<int> index(mcc.graph.node_capacity(), -1);
  int next = 0;
  json colors = json::array();
  for (NodeId v : mcc.graph.nodes()) {
    index[v] = ++next;
    colors.push_back(mcc.color[v] + 1);
  }
  json edges = json::array();
  for (EdgeId e : mcc.graph.edges()) {
    auto [u, v] = mcc.graph.endpoints(e);
    edges.push_back({index[u], index[v]});
  }
  return {{"nodes", next}, {"edges", edges}, {"colors", colors}, {"k", mcc.k}};
}

inline HittingSetInstance hitting_set_from_json(const json& j) {
  HittingSetInstance hs;
  hs.universe = j.at("universe").get<std::vector<int>>();
  hs.family = j.at("family").get<std::vector<std::vector<int>>>();
  hs.k = j.at("k").get<int>();
  hs.validate();
  return hs;
}

inline NAEInstance nae_from_json(const json& j) {
  NAEInstance nae;
  nae.K = j.at("vars").get<int>();
  nae.n = j.at("n").get<int>();
  for (const auto& c : j.at("clauses")) {
    if (c.size() != 3) throw std::invalid_argument("clause needs three literals");
    Clause cl;
    for (int i = 0; i < 3; ++i) {
      if (c[i].size() != 2) throw std::invalid_argument("literal is [var, bound]");
      cl[i] = {c[i][0].get<int>(), c[i][1].get<int>()};
    }
    nae.clauses.push_back(cl);
  }
  nae.validate();
  return nae;
}

inline MCCInstance mcc_from_json(const json& j) {
  MCCInstance mcc;
  int n = j.at("nodes").get<int>();
  if (n < 0) throw std::invalid_argument("negative node count");
  mcc.graph = MultiGraph(n);
  mcc.k = j.at("k").get<int>();
  auto colors = j.at("colors").get<std::vector<int>>();
  if (static_cast<int>(colors.size()) != n) throw std::invalid_argument("one colour per node expected");
  for (int c : colors) mcc.color.push_back(c - 1);
  for (const auto& e : j.at("edges")) {
    int u = e.at(0).get<int>(), v = e.at(1).get<int>();
    if (u < 1 || u > n || v < 1 || v > n || u == v) throw std::invalid_argument("bad edge");
    mcc.graph.add_edge(u - 1, v - 1);
  }
  mcc.validate();
  return mcc;
}

inline std::string manifest_line(const std::string& source_kind, const json& source, std::optional<bool> expected,
                                 std::uint64_t seed, const std::string& file) {
  json j{{"source_kind", source_kind},
         {"source", source},
         {"expected", expected ? json(*expected ? "yes" : "no") : json(nullptr)},
         {"seed", seed},
         {"file", file}};
  return j.dump();
}

}  // namespace smc::gen

#endif
