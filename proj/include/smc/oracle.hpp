#ifndef SMC_ORACLE_HPP
#define SMC_ORACLE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "detail/combinations.hpp"
#include "instance.hpp"

// Exhaustive reference procedures. Slow on purpose; every solver is checked
// against these.
namespace smc::oracle {

inline std::vector<int> deletable(const Instance& inst) {
  const MultiGraph& g = inst.graph;
  if (inst.variant == Variant::edge) return g.proper_edges();
  if (inst.variant == Variant::node) return g.nodes();
  auto term = detail::as_mask(g.node_capacity(), inst.terminals());
  std::vector<int> out;
  for (NodeId v : g.nodes())
    if (!term[v]) out.push_back(v);
  return out;
}

// Smallest cut of size <= k; among equal sizes the lexicographically first
// sorted id list.
inline std::optional<CutSet> brute_force_solve(const Instance& inst) {
  auto pool = deletable(inst);
  const MultiGraph& g = inst.graph;
  bool edges = inst.variant == Variant::edge;
  std::optional<CutSet> best;
  detail::for_each_small_subset(static_cast<int>(pool.size()), inst.k, [&](const std::vector<int>& idx) {
    std::vector<char> er, nr;
    if (edges) er.assign(g.edge_capacity(), 0);
    else nr.assign(g.node_capacity(), 0);
    for (int i : idx) (edges ? er : nr)[pool[i]] = 1;
    if (!detail::cuts_all(g, inst.sets, er, nr)) return false;
    CutSet c{inst.cut_kind(), {}};
    for (int i : idx) c.members.push_back(pool[i]);
    best = c;
    return true;
  });
  return best;
}

namespace impl {

inline std::uint64_t to_bits(const MultiGraph& g, const std::vector<char>& m) {
  if (g.node_capacity() > 64) throw std::invalid_argument("oracle: graph too large for bitmask checks");
  std::uint64_t b = 0;
  for (NodeId v = 0; v < g.node_capacity(); ++v)
    if (g.has_node(v) && m[v]) b |= std::uint64_t{1} << v;
  return b;
}

inline std::uint64_t reach_edges(const MultiGraph& g, const NodeSet& from, const EdgeSet& S) {
  return to_bits(g, reachable_mask(g, from, detail::as_mask(g.edge_capacity(), S)));
}

inline std::uint64_t reach_nodes(const MultiGraph& g, const NodeSet& from, const NodeSet& S) {
  return to_bits(g, reachable_mask(g, from, {}, detail::as_mask(g.node_capacity(), S)));
}

inline bool proper_subset(std::uint64_t a, std::uint64_t b) { return a != b && (a & ~b) == 0; }

inline std::uint64_t bits_of(const NodeSet& s) {
  std::uint64_t b = 0;
  for (NodeId v : s) b |= std::uint64_t{1} << v;
  return b;
}

template <class Reach>
bool minimal_wrt(const std::vector<int>& S, std::uint64_t r, Reach&& reach) {
  for (std::size_t i = 0; i < S.size(); ++i) {
    std::vector<int> T = S;
    T.erase(T.begin() + i);
    if (reach(T) == r) return false;
  }
  return true;
}

}  // namespace impl

// Y-closest edge cuts of size <= l, in (size, lex) order. The empty set is
// included: it is always closest.
inline std::vector<EdgeSet> enumerate_closest_cuts(const MultiGraph& g, const NodeSet& Y, int l) {
  EdgeSet pool = g.proper_edges();
  std::vector<std::pair<EdgeSet, std::uint64_t>> all;
  detail::for_each_small_subset(static_cast<int>(pool.size()), l, [&](const std::vector<int>& idx) {
    EdgeSet S;
    for (int i : idx) S.push_back(pool[i]);
    all.emplace_back(S, impl::reach_edges(g, Y, S));
    return false;
  });
  std::map<EdgeSet, std::uint64_t> by_set(all.begin(), all.end());
  std::vector<EdgeSet> out;
  for (const auto& [S, r] : all) {
    bool ok = true;
    for (std::size_t i = 0; i < S.size() && ok; ++i) {
      EdgeSet T = S;
      T.erase(T.begin() + i);
      if (by_set.at(T) == r) ok = false;
    }
    for (const auto& [S2, r2] : all) {
      if (!ok || S2.size() > S.size()) break;
      if (impl::proper_subset(r2, r)) ok = false;
    }
    if (ok) out.push_back(S);
  }
  return out;
}

inline bool check_closest(const MultiGraph& g, const NodeSet& Y, EdgeSet S) {
  normalize(S);
  auto reach = [&](const EdgeSet& T) { return impl::reach_edges(g, Y, T); };
  std::uint64_t r = reach(S);
  if (!impl::minimal_wrt(S, r, reach)) return false;
  EdgeSet pool = g.proper_edges();
  return !detail::for_each_small_subset(static_cast<int>(pool.size()), static_cast<int>(S.size()),
                                        [&](const std::vector<int>& idx) {
                                          EdgeSet T;
                                          for (int i : idx) T.push_back(pool[i]);
                                          return impl::proper_subset(reach(T), r);
                                        });
}

inline bool check_important(const MultiGraph& g, const NodeSet& X, const NodeSet& Y, EdgeSet S) {
  normalize(S);
  std::uint64_t ybits = impl::bits_of(Y);
  auto reach = [&](const EdgeSet& T) { return impl::reach_edges(g, X, T); };
  std::uint64_t r = reach(S);
  if (r & ybits) return false;
  for (std::size_t i = 0; i < S.size(); ++i) {
    EdgeSet T = S;
    T.erase(T.begin() + i);
    if (!(reach(T) & ybits)) return false;
  }
  EdgeSet pool = g.proper_edges();
  return !detail::for_each_small_subset(static_cast<int>(pool.size()), static_cast<int>(S.size()),
                                        [&](const std::vector<int>& idx) {
                                          EdgeSet T;
                                          for (int i : idx) T.push_back(pool[i]);
                                          std::uint64_t r2 = reach(T);
                                          return !(r2 & ybits) && impl::proper_subset(r, r2);
                                        });
}

// All important X-Y edge separators of size <= l by exhaustive search.
inline std::vector<EdgeSet> important_separators_exhaustive(const MultiGraph& g, const NodeSet& X,
                                                            const NodeSet& Y, int l) {
  EdgeSet pool = g.proper_edges();
  std::vector<EdgeSet> out;
  detail::for_each_small_subset(static_cast<int>(pool.size()), l, [&](const std::vector<int>& idx) {
    EdgeSet S;
    for (int i : idx) S.push_back(pool[i]);
    if (check_important(g, X, Y, S)) out.push_back(S);
    return false;
  });
  return out;
}

// Node-deletion counterparts. Separators never contain nodes of X or Y.
inline bool check_closest_node(const MultiGraph& g, const NodeSet& Y, NodeSet S) {
  normalize(S);
  auto ym = detail::as_mask(g.node_capacity(), Y);
  for (NodeId v : S)
    if (ym[v]) return false;
  auto reach = [&](const NodeSet& T) { return impl::reach_nodes(g, Y, T); };
  std::uint64_t r = reach(S);
  if (!impl::minimal_wrt(S, r, reach)) return false;
  NodeSet pool;
  for (NodeId v : g.nodes())
    if (!ym[v]) pool.push_back(v);
  return !detail::for_each_small_subset(static_cast<int>(pool.size()), static_cast<int>(S.size()),
                                        [&](const std::vector<int>& idx) {
                                          NodeSet T;
                                          for (int i : idx) T.push_back(pool[i]);
                                          return impl::proper_subset(reach(T), r);
                                        });
}

inline bool check_important_node(const MultiGraph& g, const NodeSet& X, const NodeSet& Y, NodeSet S) {
  normalize(S);
  auto xm = detail::as_mask(g.node_capacity(), X);
  auto ym = detail::as_mask(g.node_capacity(), Y);
  for (NodeId v : S)
    if (xm[v] || ym[v]) return false;
  std::uint64_t ybits = impl::bits_of(Y);
  auto reach = [&](const NodeSet& T) { return impl::reach_nodes(g, X, T); };
  std::uint64_t r = reach(S);
  if (r & ybits) return false;
  for (std::size_t i = 0; i < S.size(); ++i) {
    NodeSet T = S;
    T.erase(T.begin() + i);
    if (!(reach(T) & ybits)) return false;
  }
  NodeSet pool;
  for (NodeId v : g.nodes())
    if (!xm[v] && !ym[v]) pool.push_back(v);
  return !detail::for_each_small_subset(static_cast<int>(pool.size()), static_cast<int>(S.size()),
                                        [&](const std::vector<int>& idx) {
                                          NodeSet T;
                                          for (int i : idx) T.push_back(pool[i]);
                                          std::uint64_t r2 = reach(T);
                                          return !(r2 & ybits) && impl::proper_subset(r, r2);
                                        });
}

inline std::vector<NodeSet> important_node_separators_exhaustive(const MultiGraph& g, const NodeSet& X,
                                                                 const NodeSet& Y, int l) {
  auto xm = detail::as_mask(g.node_capacity(), X);
  auto ym = detail::as_mask(g.node_capacity(), Y);
  NodeSet pool;
  for (NodeId v : g.nodes())
    if (!xm[v] && !ym[v]) pool.push_back(v);
  std::vector<NodeSet> out;
  detail::for_each_small_subset(static_cast<int>(pool.size()), l, [&](const std::vector<int>& idx) {
    NodeSet S;
    for (int i : idx) S.push_back(pool[i]);
    if (check_important_node(g, X, Y, S)) out.push_back(S);
    return false;
  });
  return out;
}

}  // namespace smc::oracle

#endif
