#ifndef SMC_SEPARATION_HPP
#define SMC_SEPARATION_HPP

#include <optional>
#include <utility>

#include "detail/combinations.hpp"
#include "graph.hpp"

namespace smc {

struct Bipartition {
  NodeSet first;   // side holding the lowest node id
  NodeSet second;
  EdgeSet crossing;
};

// An (a,b)-good separation: a split into two connected sides, each with more
// than a nodes, crossed by at most b edges. First found in (size, lex) order
// of the crossing set.
inline std::optional<Bipartition> find_good_separation(const MultiGraph& g, int a, int b) {
  EdgeSet es = g.proper_edges();
  std::optional<Bipartition> res;
  for (int r = 1; r <= b && !res; ++r) {
    detail::for_each_combination(static_cast<int>(es.size()), r, [&](const std::vector<int>& idx) {
      std::vector<char> removed(g.edge_capacity(), 0);
      for (int i : idx) removed[es[i]] = 1;
      auto lab = component_labels(g, removed);
      int ncomp = 0;
      std::vector<int> size(2, 0);
      for (NodeId v : g.nodes()) {
        ncomp = std::max(ncomp, lab[v] + 1);
        if (lab[v] < 2) ++size[lab[v]];
      }
      if (ncomp != 2 || size[0] <= a || size[1] <= a) return false;
      for (int i : idx) {
        auto [u, v] = g.endpoints(es[i]);
        if (lab[u] == lab[v]) return false;
      }
      Bipartition bp;
      for (NodeId v : g.nodes()) (lab[v] == 0 ? bp.first : bp.second).push_back(v);
      for (int i : idx) bp.crossing.push_back(es[i]);
      res = std::move(bp);
      return true;
    });
  }
  return res;
}

// Nodes of sub (a node mask) that have an edge leaving it in g.
inline NodeSet border_of(const MultiGraph& g, const std::vector<char>& sub) {
  NodeSet out;
  for (NodeId v : g.nodes()) {
    if (!sub[v]) continue;
    for (EdgeId e : g.incident(v))
      if (!sub[g.opposite(e, v)]) {
        out.push_back(v);
        break;
      }
  }
  return out;
}

struct BorderedSubgraph {
  NodeSet nodes;
  NodeSet border;
};

// Descend through (a, b/2)-good separations, always keeping the side with
// fewer border nodes, until none is left. The result has at most b border
// nodes whenever the start has at most b.
inline BorderedSubgraph extract_bordered_subgraph(const MultiGraph& g, int a, int b) {
  NodeSet cur = g.nodes();
  while (true) {
    MultiGraph sub = induced_subgraph(g, cur);
    auto sep = find_good_separation(sub, a, b / 2);
    if (!sep) break;
    auto m1 = detail::as_mask(g.node_capacity(), sep->first);
    auto m2 = detail::as_mask(g.node_capacity(), sep->second);
    auto cur_mask = detail::as_mask(g.node_capacity(), cur);
    auto bd = border_of(g, cur_mask);
    int b1 = 0, b2 = 0;
    for (NodeId v : bd) (m1[v] ? b1 : b2) += 1;
    cur = (b1 <= b2) ? sep->first : sep->second;
  }
  auto mask = detail::as_mask(g.node_capacity(), cur);
  return {cur, border_of(g, mask)};
}

}  // namespace smc

#endif
