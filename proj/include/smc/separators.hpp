#ifndef SMC_SEPARATORS_HPP
#define SMC_SEPARATORS_HPP

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "flow.hpp"
#include "graph.hpp"

namespace smc {

class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct ReachSplit {
  NodeSet reached;    // R: reachable from the source set after deleting S
  NodeSet unreached;  // the other live nodes
};

inline ReachSplit reachable_set(const MultiGraph& g, const NodeSet& Y, const EdgeSet& S) {
  auto m = reachable_mask(g, Y, detail::as_mask(g.edge_capacity(), S));
  ReachSplit r;
  for (NodeId v : g.nodes()) (m[v] ? r.reached : r.unreached).push_back(v);
  return r;
}

namespace detail {

inline void sort_by_size_then_lex(std::vector<EdgeSet>& v) {
  std::sort(v.begin(), v.end(), [](const EdgeSet& a, const EdgeSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
}

inline bool is_important_separator(const MultiGraph& g, const NodeSet& X, const NodeSet& Y, const EdgeSet& S) {
  auto removed = as_mask(g.edge_capacity(), S);
  auto R = reachable_mask(g, X, removed);
  auto ym = as_mask(g.node_capacity(), Y);
  for (NodeId y : Y)
    if (R[y]) return false;
  for (EdgeId e : S) {
    removed[e] = 0;
    auto R2 = reachable_mask(g, X, removed);
    removed[e] = 1;
    bool hits = false;
    for (NodeId y : Y) hits = hits || R2[y];
    if (!hits) return false;
  }
  NodeSet Rnodes = mask_to_nodes(g, R);
  std::vector<char> tried(g.node_capacity(), 0);
  for (EdgeId e : S) {
    auto [a, b] = g.endpoints(e);
    NodeId w = R[a] ? b : a;
    if (R[w] || ym[w] || tried[w]) continue;
    tried[w] = 1;
    NodeSet src = Rnodes;
    src.push_back(w);
    EdgeFlow f(g);
    if (f.run(src, Y, static_cast<int>(S.size())) <= static_cast<int>(S.size())) return false;
  }
  return true;
}

}  // namespace detail

// Important X-Y edge separators with at most l edges, in (size, lex) order.
// Branches on the lowest-id edge leaving the farthest minimum cut, then keeps
// only candidates passing an exact importance test.
inline std::vector<EdgeSet> enumerate_important_separators(const MultiGraph& g, const NodeSet& X,
                                                           const NodeSet& Y, int l) {
  detail::check_terminal_sets(g, X, Y);
  std::set<EdgeSet> cand;
  if (l < 0) return {};
  std::vector<int> cap(g.edge_capacity(), 1);
  EdgeSet in;
  auto ym = detail::as_mask(g.node_capacity(), Y);

  auto rec = [&](auto&& self, const NodeSet& src) -> void {
    int budget = l - static_cast<int>(in.size());
    detail::EdgeFlow f(g, cap);
    int value = f.run(src, Y, budget);
    if (value > budget) return;
    if (value == 0) {
      EdgeSet s = in;
      std::sort(s.begin(), s.end());
      cand.insert(s);
      return;
    }
    auto side = f.far_source_side();
    EdgeSet c = f.cut_edges(side);
    EdgeId e = c.front();
    auto [a, b] = g.endpoints(e);
    NodeId v = side[a] ? b : a;

    cap[e] = 0;
    in.push_back(e);
    self(self, src);
    in.pop_back();
    cap[e] = 1;

    if (!ym[v]) {
      NodeSet grown = mask_to_nodes(g, side);
      grown.push_back(v);
      self(self, grown);
    }
  };
  rec(rec, X);

  std::vector<EdgeSet> out;
  for (const auto& s : cand)
    if (detail::is_important_separator(g, X, Y, s)) out.push_back(s);
  detail::sort_by_size_then_lex(out);
  return out;
}

// Union of all minimal x-y cuts of size <= k over pairs x, y of Y.
inline EdgeSet compute_Z(const MultiGraph& g, const NodeSet& Y, int k) {
  NodeSet ys = Y;
  normalize(ys);
  std::set<EdgeId> z;
  for (std::size_t i = 0; i < ys.size(); ++i)
    for (std::size_t j = i + 1; j < ys.size(); ++j)
      for (const auto& c : enumerate_minimal_cuts(g, ys[i], ys[j], k)) z.insert(c.begin(), c.end());
  return EdgeSet(z.begin(), z.end());
}

struct SeparatorRecord {
  NodeId source;     // lowest node of the part cut away
  EdgeSet edges;     // separator between that part and R
  NodeSet reachable; // nodes reachable from source once edges are gone
};

// Splits a Y-closest cut into disjoint important separators, one per
// component of G - S that avoids Y.
inline std::vector<SeparatorRecord> decompose_closest_cut(const MultiGraph& g, const NodeSet& Y, const EdgeSet& S) {
  auto removed = detail::as_mask(g.edge_capacity(), S);
  auto R = reachable_mask(g, Y, removed);
  for (EdgeId e : S) {
    if (!g.has_edge(e)) throw std::invalid_argument("decompose: unknown edge");
    auto [a, b] = g.endpoints(e);
    if (R[a] == R[b]) throw PreconditionError("cut is not minimal: an edge lies inside one side");
  }
  std::vector<char> node_removed(g.node_capacity(), 0);
  for (NodeId v = 0; v < g.node_capacity(); ++v) node_removed[v] = R[v];
  auto lab = component_labels(g, removed, node_removed);
  std::vector<SeparatorRecord> recs;
  for (NodeId v : g.nodes()) {
    if (lab[v] < 0) continue;
    if (lab[v] >= static_cast<int>(recs.size())) recs.resize(lab[v] + 1);
    recs[lab[v]].reachable.push_back(v);
  }
  for (auto& r : recs) r.source = r.reachable.front();
  for (EdgeId e : S) {
    auto [a, b] = g.endpoints(e);
    NodeId inner = R[a] ? b : a;
    recs[lab[inner]].edges.push_back(e);
  }
  for (auto& r : recs) std::sort(r.edges.begin(), r.edges.end());
  return recs;
}

}  // namespace smc

#endif
