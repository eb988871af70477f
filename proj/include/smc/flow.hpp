#ifndef SMC_FLOW_HPP
#define SMC_FLOW_HPP

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <stdexcept>
#include <vector>

#include "graph.hpp"

namespace smc {

namespace detail {

// Augmenting-path max flow where every undirected edge carries its own
// capacity in both directions. Capacity 0 means the edge is absent.
class EdgeFlow {
 public:
  EdgeFlow(const MultiGraph& g, std::vector<int> capacity)
      : g_(g), cap_(std::move(capacity)), flow_(g.edge_capacity(), 0) {
    cap_.resize(g.edge_capacity(), 1);
    for (EdgeId e = 0; e < g.edge_capacity(); ++e)
      if (!g.has_edge(e) || g.is_loop(e)) cap_[e] = 0;
  }
  explicit EdgeFlow(const MultiGraph& g) : EdgeFlow(g, std::vector<int>(g.edge_capacity(), 1)) {}

  // Returns the flow value, stopping once it exceeds limit.
  int run(const NodeSet& X, const NodeSet& Y, int limit = std::numeric_limits<int>::max() / 2) {
    src_ = detail::as_mask(g_.node_capacity(), X);
    snk_ = detail::as_mask(g_.node_capacity(), Y);
    for (NodeId v : X)
      if (snk_[v]) throw std::invalid_argument("flow: source and sink sets intersect");
    int value = 0;
    std::vector<EdgeId> via(g_.node_capacity());
    while (value <= limit) {
      std::vector<char> seen(g_.node_capacity(), 0);
      std::deque<NodeId> q;
      for (NodeId x : X)
        if (g_.has_node(x) && !seen[x]) {
          seen[x] = 1;
          via[x] = -1;
          q.push_back(x);
        }
      NodeId hit = -1;
      while (!q.empty() && hit < 0) {
        NodeId x = q.front();
        q.pop_front();
        for (EdgeId e : g_.incident(x)) {
          if (residual(e, x) <= 0) continue;
          NodeId y = g_.opposite(e, x);
          if (seen[y]) continue;
          seen[y] = 1;
          via[y] = e;
          if (snk_[y]) {
            hit = y;
            break;
          }
          q.push_back(y);
        }
      }
      if (hit < 0) break;
      int push = limit + 1 - value;
      for (NodeId y = hit; via[y] >= 0; y = g_.opposite(via[y], y))
        push = std::min(push, residual(via[y], g_.opposite(via[y], y)));
      for (NodeId y = hit; via[y] >= 0;) {
        EdgeId e = via[y];
        NodeId x = g_.opposite(e, y);
        flow_[e] += (g_.endpoints(e).u == x) ? push : -push;
        y = x;
      }
      value += push;
    }
    return value;
  }

  // Nodes reachable from the sources in the residual graph.
  std::vector<char> source_side() const {
    std::vector<char> seen(g_.node_capacity(), 0);
    std::vector<NodeId> st;
    for (NodeId v = 0; v < g_.node_capacity(); ++v)
      if (g_.has_node(v) && src_[v]) {
        seen[v] = 1;
        st.push_back(v);
      }
    while (!st.empty()) {
      NodeId x = st.back();
      st.pop_back();
      for (EdgeId e : g_.incident(x)) {
        NodeId y = g_.opposite(e, x);
        if (seen[y] || residual(e, x) <= 0) continue;
        seen[y] = 1;
        st.push_back(y);
      }
    }
    return seen;
  }

  // Complement of the nodes that can still reach a sink: the source side of
  // the min cut farthest from the sources.
  std::vector<char> far_source_side() const {
    std::vector<char> reach(g_.node_capacity(), 0);
    std::vector<NodeId> st;
    for (NodeId v = 0; v < g_.node_capacity(); ++v)
      if (g_.has_node(v) && snk_[v]) {
        reach[v] = 1;
        st.push_back(v);
      }
    while (!st.empty()) {
      NodeId y = st.back();
      st.pop_back();
      for (EdgeId e : g_.incident(y)) {
        NodeId x = g_.opposite(e, y);
        if (reach[x] || residual(e, x) <= 0) continue;
        reach[x] = 1;
        st.push_back(x);
      }
    }
    std::vector<char> side(g_.node_capacity(), 0);
    for (NodeId v = 0; v < g_.node_capacity(); ++v) side[v] = g_.has_node(v) && !reach[v];
    return side;
  }

  EdgeSet cut_edges(const std::vector<char>& side) const {
    EdgeSet out;
    for (EdgeId e = 0; e < g_.edge_capacity(); ++e) {
      if (cap_[e] == 0) continue;
      auto [u, v] = g_.endpoints(e);
      if (side[u] != side[v]) out.push_back(e);
    }
    return out;
  }

 private:
  int residual(EdgeId e, NodeId from) const {
    if (cap_[e] == 0) return 0;
    return g_.endpoints(e).u == from ? cap_[e] - flow_[e] : cap_[e] + flow_[e];
  }

  const MultiGraph& g_;
  std::vector<int> cap_;
  std::vector<int> flow_;
  std::vector<char> src_, snk_;
};

inline void check_terminal_sets(const MultiGraph& g, const NodeSet& X, const NodeSet& Y) {
  if (X.empty() || Y.empty()) throw std::invalid_argument("cut: empty side");
  for (NodeId v : X)
    if (!g.has_node(v)) throw std::invalid_argument("cut: unknown node");
  for (NodeId v : Y)
    if (!g.has_node(v)) throw std::invalid_argument("cut: unknown node");
  auto ym = as_mask(g.node_capacity(), Y);
  for (NodeId v : X)
    if (ym[v]) throw std::invalid_argument("cut: X and Y intersect");
}

}  // namespace detail

inline int min_cut_value(const MultiGraph& g, const NodeSet& X, const NodeSet& Y,
                         int limit = std::numeric_limits<int>::max() / 2) {
  detail::check_terminal_sets(g, X, Y);
  detail::EdgeFlow f(g);
  return f.run(X, Y, limit);
}

// A minimum X-Y edge cut (the one closest to X).
inline EdgeSet min_edge_cut(const MultiGraph& g, const NodeSet& X, const NodeSet& Y) {
  detail::check_terminal_sets(g, X, Y);
  detail::EdgeFlow f(g);
  f.run(X, Y);
  return f.cut_edges(f.source_side());
}

inline bool separates(const MultiGraph& g, NodeId x, NodeId y, const EdgeSet& S) {
  auto r = reachable_mask(g, {x}, detail::as_mask(g.edge_capacity(), S));
  return !r[y];
}

// S is a minimal x-y cut iff it separates and every edge is needed.
inline bool is_minimal_cut(const MultiGraph& g, NodeId x, NodeId y, const EdgeSet& S) {
  if (!separates(g, x, y, S)) return false;
  for (std::size_t i = 0; i < S.size(); ++i) {
    EdgeSet T = S;
    T.erase(T.begin() + i);
    if (separates(g, x, y, T)) return false;
  }
  return true;
}

// All inclusion-minimal x-y edge cuts with at most l edges, sorted by
// (size, lexicographic edge ids).
inline std::vector<EdgeSet> enumerate_minimal_cuts(const MultiGraph& g, NodeId x, NodeId y, int l) {
  detail::check_terminal_sets(g, {x}, {y});
  if (l < 0) return {};
  std::set<EdgeSet> found;
  const int inf = l + 1;
  std::vector<int> cap(g.edge_capacity(), 1);
  EdgeSet in;
  std::vector<EdgeId> out;

  auto rec = [&](auto&& self) -> void {
    int budget = l - static_cast<int>(in.size());
    detail::EdgeFlow f(g, cap);
    int value = f.run({x}, {y}, budget);
    if (value > budget) return;
    if (value == 0) {
      EdgeSet s = in;
      std::sort(s.begin(), s.end());
      if (is_minimal_cut(g, x, y, s)) found.insert(s);
      return;
    }
    EdgeSet c = f.cut_edges(f.source_side());
    EdgeId e = c.front();
    cap[e] = 0;
    in.push_back(e);
    self(self);
    in.pop_back();
    cap[e] = inf;
    self(self);
    cap[e] = 1;
  };
  rec(rec);

  std::vector<EdgeSet> res(found.begin(), found.end());
  std::stable_sort(res.begin(), res.end(),
                   [](const EdgeSet& a, const EdgeSet& b) { return a.size() < b.size(); });
  return res;
}

}  // namespace smc

#endif
