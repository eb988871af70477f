#ifndef SMC_SEPDP_HPP
#define SMC_SEPDP_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "detail/by_components.hpp"
#include "detail/combinations.hpp"
#include "instance.hpp"
#include "separators.hpp"
#include "twdp.hpp"

// Edge variant in time exponential in k and t only: important separators for
// the sets meeting one terminal, plus a split into a part inside Z and a part
// handled around a merged hub node.
namespace smc::sepdp {

// Bit i is set when T_i has a terminal on the far side of S from y.
inline std::uint64_t type_of(const MultiGraph& g, NodeId y, const EdgeSet& S, const std::vector<NodeSet>& sets) {
  auto R = reachable_mask(g, {y}, detail::as_mask(g.edge_capacity(), S));
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (NodeId v : sets[i])
      if (!R[v]) {
        t |= std::uint64_t{1} << i;
        break;
      }
  return t;
}

// Every set contains y. Minimum cut of size <= k built as a union of
// important x-y separators.
inline std::optional<EdgeSet> solve_unipedal(const MultiGraph& g, NodeId y, const std::vector<NodeSet>& sets, int k) {
  int t = static_cast<int>(sets.size());
  if (t > 24) throw std::invalid_argument("unipedal: too many terminal sets");
  for (const auto& s : sets)
    if (!std::binary_search(s.begin(), s.end(), y)) throw std::invalid_argument("unipedal: y missing from a set");
  if (t == 0) return EdgeSet{};
  std::set<EdgeSet> seps;
  for (NodeId x : g.nodes()) {
    if (x == y) continue;
    for (auto& s : enumerate_important_separators(g, {x}, {y}, k)) seps.insert(std::move(s));
  }
  const int inf = std::numeric_limits<int>::max() / 4;
  std::size_t full = (std::size_t{1} << t) - 1;
  std::vector<int> dp(full + 1, inf), prev(full + 1, -1);
  std::vector<const EdgeSet*> via(full + 1, nullptr);
  dp[0] = 0;
  for (const auto& S : seps) {
    std::uint64_t ty = type_of(g, y, S, sets);
    int c = static_cast<int>(S.size());
    for (std::size_t I = 0; I <= full; ++I) {
      if (dp[I] >= inf) continue;
      std::size_t J = I | ty;
      if (dp[I] + c < dp[J]) {
        dp[J] = dp[I] + c;
        prev[J] = static_cast<int>(I);
        via[J] = &S;
      }
    }
  }
  if (dp[full] > k) return std::nullopt;
  EdgeSet out;
  for (std::size_t J = full; J != 0 && via[J];) {
    out.insert(out.end(), via[J]->begin(), via[J]->end());
    J = static_cast<std::size_t>(prev[J]);
  }
  normalize(out);
  return out;
}

struct GStar {
  MultiGraph graph;
  NodeId star = -1;
  int original_edges = 0;  // edge ids at or above this belong to the hub

  std::vector<NodeSet> rewrite(const std::vector<NodeSet>& sets, const NodeSet& Y) const {
    auto ym = detail::as_mask(graph.node_capacity(), Y);
    std::vector<NodeSet> out;
    for (const auto& s : sets) {
      NodeSet r{star};
      for (NodeId v : s)
        if (!ym[v]) r.push_back(v);
      normalize(r);
      out.push_back(r);
    }
    return out;
  }
};

// Adds a hub y* joined to every node of Y by k+1 parallel edges.
inline GStar build_gstar(const MultiGraph& g, const NodeSet& Y, int k) {
  GStar gs{g, -1, g.edge_capacity()};
  gs.star = gs.graph.add_node();
  for (NodeId y : Y)
    for (int i = 0; i <= k; ++i) gs.graph.add_edge(gs.star, y);
  return gs;
}

struct LineExpansion {
  MultiGraph graph;               // node ids of g kept, one extra node per edge
  std::vector<NodeId> edge_node;  // g edge id -> node of graph (-1 if dead)
  std::vector<EdgeId> node_edge;  // node of graph -> g edge id (-1 for vertex nodes)
};

// Nodes E(g) + V(g); an edge node touches its endpoints and every edge that
// shares exactly one endpoint with it.
inline LineExpansion line_expansion(const MultiGraph& g) {
  LineExpansion L;
  L.graph = MultiGraph(g.node_capacity());
  for (NodeId v = 0; v < g.node_capacity(); ++v)
    if (!g.has_node(v)) L.graph.remove_node(v);
  L.edge_node.assign(g.edge_capacity(), -1);
  L.node_edge.assign(g.node_capacity(), -1);
  for (EdgeId e : g.edges()) {
    L.edge_node[e] = L.graph.add_node();
    L.node_edge.push_back(e);
  }
  for (EdgeId e : g.edges()) {
    auto [u, v] = g.endpoints(e);
    L.graph.add_edge(L.edge_node[e], u);
    if (u != v) L.graph.add_edge(L.edge_node[e], v);
  }
  auto ends = [&](EdgeId e) {
    auto [u, v] = g.endpoints(e);
    return std::set<NodeId>{u, v};
  };
  std::set<std::pair<EdgeId, EdgeId>> done;
  for (NodeId x : g.nodes()) {
    const auto& inc = g.incident(x);
    for (std::size_t i = 0; i < inc.size(); ++i)
      for (std::size_t j = i + 1; j < inc.size(); ++j) {
        EdgeId a = std::min(inc[i], inc[j]), b = std::max(inc[i], inc[j]);
        auto ea = ends(a), eb = ends(b);
        int common = 0;
        for (NodeId z : ea) common += eb.count(z);
        if (common != 1 || !done.insert({a, b}).second) continue;
        L.graph.add_edge(L.edge_node[a], L.edge_node[b]);
      }
  }
  return L;
}

namespace detail {

inline std::set<std::pair<NodeId, NodeId>> torso_pairs(const MultiGraph& h, const std::vector<char>& inU) {
  std::set<std::pair<NodeId, NodeId>> pairs;
  for (EdgeId e : h.proper_edges()) {
    auto [a, b] = h.endpoints(e);
    if (inU[a] && inU[b]) pairs.insert(std::minmax(a, b));
  }
  auto lab = component_labels(h, {}, inU);
  std::map<int, std::set<NodeId>> attach;
  for (EdgeId e : h.proper_edges()) {
    auto [a, b] = h.endpoints(e);
    if (inU[a] && !inU[b]) attach[lab[b]].insert(a);
    if (inU[b] && !inU[a]) attach[lab[a]].insert(b);
  }
  for (auto& [c, ns] : attach) {
    NodeSet v(ns.begin(), ns.end());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) pairs.insert({v[i], v[j]});
  }
  return pairs;
}

}  // namespace detail

// Graph on U (ids of h kept) where u, v are adjacent iff some u-v path has
// no interior node in U. Simple graph.
inline MultiGraph build_torso(const MultiGraph& h, const NodeSet& U) {
  auto inU = smc::detail::as_mask(h.node_capacity(), U);
  MultiGraph t(h.node_capacity());
  for (NodeId v = 0; v < h.node_capacity(); ++v)
    if (!h.has_node(v) || !inU[v]) t.remove_node(v);
  for (auto [a, b] : detail::torso_pairs(h, inU)) t.add_edge(a, b);
  return t;
}

struct HPrime {
  MultiGraph graph;
  std::vector<NodeId> rep;  // node of V -> node standing for its component
};

// Torso on Zp plus one node per component of h - Zp that meets V, attached
// to the Zp-neighbours of that component. Nodes of V in the same component
// share it, they stay connected whatever is deleted from Zp.
inline HPrime build_Hprime(const MultiGraph& h, const NodeSet& Zp, const NodeSet& V) {
  auto inZ = smc::detail::as_mask(h.node_capacity(), Zp);
  auto lab = component_labels(h, {}, inZ);
  HPrime out;
  out.rep.assign(h.node_capacity(), -1);
  std::map<int, NodeId> first;
  for (NodeId v : V) {
    if (!h.has_node(v) || inZ[v]) continue;
    auto it = first.find(lab[v]);
    if (it == first.end() || v < it->second) first[lab[v]] = v;
  }
  std::vector<char> keep = inZ;
  for (auto& [c, v] : first) keep[v] = 1;
  for (NodeId v : V)
    if (h.has_node(v) && !inZ[v]) out.rep[v] = first[lab[v]];
  out.graph = MultiGraph(h.node_capacity());
  for (NodeId v = 0; v < h.node_capacity(); ++v)
    if (!h.has_node(v) || !keep[v]) out.graph.remove_node(v);
  for (auto [a, b] : detail::torso_pairs(h, inZ)) out.graph.add_edge(a, b);
  std::map<int, std::set<NodeId>> attach;
  for (EdgeId e : h.proper_edges()) {
    auto [a, b] = h.endpoints(e);
    if (inZ[a] && !inZ[b]) attach[lab[b]].insert(a);
    if (inZ[b] && !inZ[a]) attach[lab[a]].insert(b);
  }
  for (auto& [c, v] : first)
    for (NodeId z : attach[c]) out.graph.add_edge(v, z);
  return out;
}

enum class Engine { exhaustive, treewidth };

// Minimum cut for sets with every edge inside Zp, size <= kp.
inline std::optional<EdgeSet> solve_z_restricted(const MultiGraph& g, const std::vector<NodeSet>& sets, int kp,
                                                 EdgeSet Zp, Engine engine = Engine::exhaustive) {
  if (sets.empty()) return EdgeSet{};
  normalize(Zp);
  EdgeSet pool;
  for (EdgeId e : Zp)
    if (g.has_edge(e) && !g.is_loop(e)) pool.push_back(e);
  if (engine == Engine::exhaustive) {
    std::optional<EdgeSet> res;
    smc::detail::for_each_small_subset(static_cast<int>(pool.size()), kp, [&](const std::vector<int>& idx) {
      std::vector<char> er(g.edge_capacity(), 0);
      for (int i : idx) er[pool[i]] = 1;
      if (!smc::detail::cuts_all(g, sets, er, {})) return false;
      EdgeSet S;
      for (int i : idx) S.push_back(pool[i]);
      res = S;
      return true;
    });
    return res;
  }
  LineExpansion L = line_expansion(g);
  NodeSet zn;
  for (EdgeId e : pool) zn.push_back(L.edge_node[e]);
  HPrime H = build_Hprime(L.graph, zn, g.nodes());
  const MultiGraph& hp = H.graph;
  twdp::Problem pb;
  pb.graph = &hp;
  pb.k = kp;
  pb.delete_nodes = true;
  pb.forbidden.assign(hp.node_capacity(), 1);
  for (NodeId z : zn) pb.forbidden[z] = 0;
  auto lab = component_labels(hp);
  for (const auto& s : sets) {
    NodeSet r;
    for (NodeId v : s) r.push_back(H.rep[v]);
    normalize(r);
    if (r.size() < 2) return std::nullopt;  // joined without touching Zp
    if (!smc::detail::set_is_separated(hp, r, lab)) pb.sets.push_back(r);
  }
  if (pb.sets.empty()) return EdgeSet{};
  auto res = twdp::solve_problem(pb, heuristic_decomposition(hp));
  if (!res) return std::nullopt;
  EdgeSet out;
  for (NodeId z : *res) out.push_back(L.node_edge[z]);
  normalize(out);
  return out;
}

struct SplitBranch {
  std::uint64_t first_part = 0;  // sets cut inside Z
  int first_budget = 0;
  int second_budget = 0;
};

namespace detail {

inline bool better(const EdgeSet& a, const std::optional<EdgeSet>& b) {
  if (!b) return true;
  if (a.size() != b->size()) return a.size() < b->size();
  return a < *b;
}

}  // namespace detail

// Every set meets Y. Tries each split T = T' + T'' by increasing |T'|: T' is
// cut inside Z, T'' around a hub merging Y.
inline std::optional<EdgeSet> solve_multipedal(const MultiGraph& g, NodeSet Y, const std::vector<NodeSet>& sets, int k,
                                               Engine engine = Engine::exhaustive,
                                               std::vector<SplitBranch>* trace = nullptr) {
  normalize(Y);
  int t = static_cast<int>(sets.size());
  if (t > 24) throw std::invalid_argument("multipedal: too many terminal sets");
  auto ym = smc::detail::as_mask(g.node_capacity(), Y);
  for (const auto& s : sets) {
    bool meets = false;
    for (NodeId v : s) meets = meets || ym[v];
    if (!meets) throw std::invalid_argument("multipedal: a set misses Y");
  }
  EdgeSet Z = Y.size() >= 2 ? compute_Z(g, Y, k) : EdgeSet{};
  GStar gs = build_gstar(g, Y, k);
  std::vector<std::uint64_t> masks;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << t); ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    return smc::detail::popcount64(a) < smc::detail::popcount64(b);
  });
  std::optional<EdgeSet> best;
  for (std::uint64_t m : masks) {
    std::vector<NodeSet> first, second;
    for (int i = 0; i < t; ++i) (m >> i & 1 ? first : second).push_back(sets[i]);
    auto s1 = solve_z_restricted(g, first, k, Z, engine);
    if (!s1) continue;
    int k1 = static_cast<int>(s1->size());
    auto s2 = solve_unipedal(gs.graph, gs.star, gs.rewrite(second, Y), k - k1);
    if (trace) trace->push_back({m, k1, k - k1});
    if (!s2) continue;
    EdgeSet S = *s1;
    for (EdgeId e : *s2)
      if (e < gs.original_edges) S.push_back(e);
    normalize(S);
    std::vector<char> er = smc::detail::as_mask(g.edge_capacity(), S);
    if (static_cast<int>(S.size()) > k || !smc::detail::cuts_all(g, sets, er, {})) continue;
    if (detail::better(S, best)) best = S;
  }
  return best;
}

// Edge variant entry point.
inline std::optional<CutSet> solve_edge_kt(const Instance& inst, Engine engine = Engine::exhaustive) {
  if (inst.variant != Variant::edge) throw std::invalid_argument("sepdp solves the edge variant only");
  return smc::detail::solve_per_component(inst, [&](const Instance& sub) -> std::optional<CutSet> {
    NodeSet Y;
    for (const auto& s : sub.sets) Y.push_back(s.front());
    auto r = solve_multipedal(sub.graph, Y, sub.sets, sub.k, engine);
    if (!r) return std::nullopt;
    return edge_cut(*r);
  });
}

}  // namespace smc::sepdp

#endif
