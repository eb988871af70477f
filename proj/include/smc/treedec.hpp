#ifndef SMC_TREEDEC_HPP
#define SMC_TREEDEC_HPP

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "graph.hpp"

namespace smc {

struct TreeDecomposition {
  std::vector<NodeSet> bags;               // each sorted
  std::vector<std::pair<int, int>> edges;  // tree edges between bag indices

  int width() const {
    int w = 0;
    for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()));
    return w - 1;
  }
};

// Simple adjacency of the live nodes, ignoring loops and parallel copies.
inline std::vector<std::set<NodeId>> simple_adjacency(const MultiGraph& g) {
  std::vector<std::set<NodeId>> adj(g.node_capacity());
  for (EdgeId e : g.proper_edges()) {
    auto [u, v] = g.endpoints(e);
    adj[u].insert(v);
    adj[v].insert(u);
  }
  return adj;
}

// Min-fill elimination; ties go to the lowest id.
inline TreeDecomposition heuristic_decomposition(const MultiGraph& g) {
  auto adj = simple_adjacency(g);
  NodeSet alive = g.nodes();
  TreeDecomposition td;
  if (alive.empty()) {
    td.bags.push_back({});
    return td;
  }
  std::vector<int> bag_of(g.node_capacity(), -1), order_pos(g.node_capacity(), -1);
  std::vector<NodeSet> neigh_at_elim(g.node_capacity());
  std::vector<char> gone(g.node_capacity(), 0);
  for (int step = 0; step < static_cast<int>(alive.size()); ++step) {
    NodeId best = -1;
    long best_fill = -1;
    for (NodeId v : alive) {
      if (gone[v]) continue;
      long fill = 0;
      for (auto a = adj[v].begin(); a != adj[v].end(); ++a)
        for (auto b = std::next(a); b != adj[v].end(); ++b)
          if (!adj[*a].count(*b)) ++fill;
      if (best < 0 || fill < best_fill) {
        best = v;
        best_fill = fill;
      }
    }
    NodeSet nb(adj[best].begin(), adj[best].end());
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        adj[nb[i]].insert(nb[j]);
        adj[nb[j]].insert(nb[i]);
      }
    for (NodeId u : nb) adj[u].erase(best);
    adj[best].clear();
    gone[best] = 1;
    order_pos[best] = step;
    neigh_at_elim[best] = nb;
    NodeSet bag = nb;
    bag.push_back(best);
    std::sort(bag.begin(), bag.end());
    bag_of[best] = static_cast<int>(td.bags.size());
    td.bags.push_back(bag);
  }
  int last_root = -1;
  for (NodeId v : alive) {
    const auto& nb = neigh_at_elim[v];
    if (nb.empty()) {
      if (last_root >= 0) td.edges.push_back({last_root, bag_of[v]});
      last_root = bag_of[v];
      continue;
    }
    NodeId next = *std::min_element(nb.begin(), nb.end(),
                                     [&](NodeId a, NodeId b) { return order_pos[a] < order_pos[b]; });
    td.edges.push_back({bag_of[v], bag_of[next]});
  }
  return td;
}

inline bool validate_decomposition(const MultiGraph& g, const TreeDecomposition& td) {
  int nb = static_cast<int>(td.bags.size());
  if (nb == 0 || static_cast<int>(td.edges.size()) != nb - 1) return false;
  std::vector<std::vector<int>> tadj(nb);
  for (auto [a, b] : td.edges) {
    if (a < 0 || b < 0 || a >= nb || b >= nb) return false;
    tadj[a].push_back(b);
    tadj[b].push_back(a);
  }
  {
    std::vector<char> seen(nb, 0);
    std::vector<int> st{0};
    seen[0] = 1;
    int cnt = 1;
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      for (int y : tadj[x])
        if (!seen[y]) seen[y] = 1, ++cnt, st.push_back(y);
    }
    if (cnt != nb) return false;
  }
  auto contains = [&](int b, NodeId v) { return std::binary_search(td.bags[b].begin(), td.bags[b].end(), v); };
  for (EdgeId e : g.proper_edges()) {
    auto [u, v] = g.endpoints(e);
    bool ok = false;
    for (int b = 0; b < nb && !ok; ++b) ok = contains(b, u) && contains(b, v);
    if (!ok) return false;
  }
  for (NodeId v : g.nodes()) {
    std::vector<int> holding;
    for (int b = 0; b < nb; ++b)
      if (contains(b, v)) holding.push_back(b);
    if (holding.empty()) return false;
    std::vector<char> seen(nb, 0);
    std::vector<int> st{holding[0]};
    seen[holding[0]] = 1;
    std::size_t cnt = 1;
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      for (int y : tadj[x])
        if (!seen[y] && contains(y, v)) seen[y] = 1, ++cnt, st.push_back(y);
    }
    if (cnt != holding.size()) return false;
  }
  return true;
}

enum class NiceKind { leaf, introduce_vertex, introduce_edge, forget, join };

struct NiceNode {
  NiceKind kind = NiceKind::leaf;
  NodeSet bag;  // sorted
  NodeId vertex = -1;
  EdgeId edge = -1;
  std::vector<int> children;
};

// Nodes are stored children-first; the last node is the root with an empty bag.
struct NiceDecomposition {
  std::vector<NiceNode> nodes;
  int root() const { return static_cast<int>(nodes.size()) - 1; }
};

inline NiceDecomposition make_nice(const MultiGraph& g, const TreeDecomposition& td) {
  if (!validate_decomposition(g, td)) throw std::invalid_argument("not a tree decomposition of the graph");
  int nb = static_cast<int>(td.bags.size());
  std::vector<std::vector<int>> tadj(nb);
  for (auto [a, b] : td.edges) tadj[a].push_back(b), tadj[b].push_back(a);

  NiceDecomposition nd;
  std::vector<char> introduced(g.edge_capacity(), 0);
  auto push = [&](NiceNode n) {
    nd.nodes.push_back(std::move(n));
    return static_cast<int>(nd.nodes.size()) - 1;
  };
  auto forget = [&](int cur, NodeId u) {
    NodeSet bag = nd.nodes[cur].bag;
    for (EdgeId e : g.incident(u)) {
      if (introduced[e] || g.is_loop(e)) continue;
      NodeId w = g.opposite(e, u);
      if (!std::binary_search(bag.begin(), bag.end(), w)) continue;
      introduced[e] = 1;
      NiceNode n{NiceKind::introduce_edge, bag, -1, e, {cur}};
      cur = push(n);
    }
    bag.erase(std::find(bag.begin(), bag.end(), u));
    return push({NiceKind::forget, bag, u, -1, {cur}});
  };
  auto introduce = [&](int cur, NodeId v) {
    NodeSet bag = nd.nodes[cur].bag;
    bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
    return push({NiceKind::introduce_vertex, bag, v, -1, {cur}});
  };
  auto morph = [&](int cur, const NodeSet& target) {
    NodeSet from = nd.nodes[cur].bag;
    for (NodeId u : from)
      if (!std::binary_search(target.begin(), target.end(), u)) cur = forget(cur, u);
    for (NodeId v : target)
      if (!std::binary_search(from.begin(), from.end(), v)) cur = introduce(cur, v);
    return cur;
  };

  auto build = [&](auto&& self, int b, int parent) -> int {
    std::vector<int> subs;
    for (int c : tadj[b])
      if (c != parent) subs.push_back(morph(self(self, c, b), td.bags[b]));
    if (subs.empty()) subs.push_back(morph(push({NiceKind::leaf, {}, -1, -1, {}}), td.bags[b]));
    int cur = subs[0];
    for (std::size_t i = 1; i < subs.size(); ++i) cur = push({NiceKind::join, td.bags[b], -1, -1, {cur, subs[i]}});
    return cur;
  };
  int top = build(build, 0, -1);
  morph(top, {});
  for (EdgeId e : g.proper_edges())
    if (!introduced[e]) throw std::logic_error("nice decomposition missed an edge");
  return nd;
}

}  // namespace smc

#endif
