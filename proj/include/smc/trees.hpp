#ifndef SMC_TREES_HPP
#define SMC_TREES_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "instance.hpp"

namespace smc::trees {

// n - 1 edges and no cycle.
inline bool is_tree(const MultiGraph& g) {
  int n = g.node_count();
  if (n == 0 || g.edge_count() != n - 1) return false;
  smc::detail::UnionFind uf(g.node_capacity());
  for (EdgeId e = 0; e < g.edge_capacity(); ++e) {
    if (!g.has_edge(e)) continue;
    auto [u, v] = g.endpoints(e);
    if (!uf.unite(u, v)) return false;
  }
  return true;
}

// Rooted at the lowest live id, built over a flat adjacency array; the
// LCA sparse table is only built on the first lca() call.
class RootedTreeIndex {
 public:
  explicit RootedTreeIndex(const MultiGraph& g) {
    int n = g.node_count();
    if (n == 0 || g.edge_count() != n - 1) throw std::invalid_argument("input graph is not a tree");
    int cap = g.node_capacity();
    // BFS first, then DFS numbers from subtree sizes. A plain DFS stalls on
    // one cache miss per step on large trees.
    struct Slot {
      int pos = 0, end = 0, parent = -1, pedge = -1, depth = -1, size = 1, pre = 0;
    };
    struct Arc {
      NodeId to;
      EdgeId e;
    };
    std::vector<Slot> sl(cap);
    for (EdgeId e = 0; e < g.edge_capacity(); ++e) {
      if (!g.has_edge(e)) continue;
      auto [u, v] = g.endpoints(e);
      if (u == v) throw std::invalid_argument("input graph is not a tree");
      ++sl[u].end, ++sl[v].end;
    }
    for (int v = 0, at = 0; v < cap; ++v) {
      int d = sl[v].end;
      sl[v].pos = sl[v].end = at;
      at += d;
    }
    std::vector<Arc> adj(2 * static_cast<std::size_t>(n - 1));
    for (EdgeId e = 0; e < g.edge_capacity(); ++e) {
      if (!g.has_edge(e)) continue;
      auto [u, v] = g.endpoints(e);
      adj[sl[u].end++] = {v, e};
      adj[sl[v].end++] = {u, e};
    }
    root = 0;
    while (!g.has_node(root)) ++root;
    std::vector<NodeId> bfs;
    bfs.reserve(n);
    bfs.push_back(root);
    sl[root].depth = 0;
    constexpr std::size_t ahead = 8;
    for (std::size_t i = 0; i < bfs.size(); ++i) {
      if (i + 2 * ahead < bfs.size()) __builtin_prefetch(&sl[bfs[i + 2 * ahead]]);
      if (i + ahead < bfs.size()) __builtin_prefetch(&adj[sl[bfs[i + ahead]].pos]);
      NodeId v = bfs[i];
      const Slot& x = sl[v];
      for (int j = x.pos; j < x.end; ++j) {
        Arc a = adj[j];
        if (a.e == x.pedge) continue;
        Slot& y = sl[a.to];
        if (y.depth >= 0) throw std::invalid_argument("input graph is not a tree");
        y.parent = v;
        y.pedge = a.e;
        y.depth = x.depth + 1;
        bfs.push_back(a.to);
      }
    }
    if (static_cast<int>(bfs.size()) != n) throw std::invalid_argument("input graph is not a tree");
    for (std::size_t i = bfs.size() - 1; i > 0; --i) sl[sl[bfs[i]].parent].size += sl[bfs[i]].size;
    // children take consecutive preorder ranges in adjacency order
    for (NodeId v : bfs) {
      const Slot& x = sl[v];
      int at = x.pre + 1;
      for (int j = x.pos; j < x.end; ++j) {
        if (adj[j].e == x.pedge) continue;
        Slot& y = sl[adj[j].to];
        y.pre = at;
        at += y.size;
      }
    }
    parent.resize(cap, -1);
    parent_edge.resize(cap, -1);
    depth.resize(cap, -1);
    post.resize(cap, -1);
    pre_.resize(cap, -1);
    order_.resize(n);
    post_order_.resize(n);
    for (int v = 0; v < cap; ++v) {
      const Slot& x = sl[v];
      if (x.depth < 0) continue;
      parent[v] = x.parent, parent_edge[v] = x.pedge, depth[v] = x.depth, pre_[v] = x.pre;
      post[v] = x.pre - x.depth + x.size - 1;
      order_[x.pre] = v;
      post_order_[post[v]] = v;
    }
  }

  NodeId lca(NodeId u, NodeId v) const {
    if (u == v) return u;
    if (table_.empty()) build_table();
    int l = std::min(pre_[u], pre_[v]) + 1, r = std::max(pre_[u], pre_[v]);
    int j = 31 - __builtin_clz(static_cast<unsigned>(r - l + 1));
    NodeId a = table_[j][l], b = table_[j][r - (1 << j) + 1];
    return parent[depth[a] <= depth[b] ? a : b];
  }

  // Preorder: parents come before children.
  const std::vector<NodeId>& preorder() const { return order_; }
  const std::vector<NodeId>& postorder() const { return post_order_; }

  NodeId root = -1;
  std::vector<NodeId> parent;
  std::vector<EdgeId> parent_edge;
  std::vector<int> depth;
  std::vector<int> post;

 private:
  void build_table() const {
    int n = static_cast<int>(order_.size());
    int lg = 1;
    while ((1 << lg) < n) ++lg;
    table_.assign(lg + 1, order_);
    for (int j = 1; j <= lg; ++j)
      for (int i = 0; i + (1 << j) <= n; ++i) {
        NodeId a = table_[j - 1][i], b = table_[j - 1][i + (1 << (j - 1))];
        table_[j][i] = depth[a] <= depth[b] ? a : b;
      }
  }

  std::vector<int> pre_;
  std::vector<NodeId> order_, post_order_;
  mutable std::vector<std::vector<NodeId>> table_;  // not thread-safe
};

// LCA of the post-order first and last terminal of each set, answered
// offline with union-find along the post-order.
inline std::vector<NodeId> terminal_roots(const RootedTreeIndex& ix, const std::vector<NodeSet>& sets) {
  int cap = static_cast<int>(ix.parent.size()), t = static_cast<int>(sets.size());
  std::vector<NodeId> out(t, -1), other(t);
  std::vector<int> qhead(cap, -1), qnext(t, -1);
  for (int i = 0; i < t; ++i) {
    const auto& s = sets[i];
    NodeId lo = s.front(), hi = s.front();
    for (NodeId v : s) {
      if (ix.post[v] < ix.post[lo]) lo = v;
      if (ix.post[v] > ix.post[hi]) hi = v;
    }
    if (lo == hi) {
      out[i] = lo;
      continue;
    }
    other[i] = lo;
    qnext[i] = qhead[hi];
    qhead[hi] = i;
  }
  // Union-find over post-order positions; a finished node links under its
  // parent, so a component's root is its topmost node.
  const auto& po = ix.postorder();
  int n = static_cast<int>(po.size());
  std::vector<int> up(n);
  std::iota(up.begin(), up.end(), 0);
  auto find = [&](int x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  };
  for (int i = 0; i < n; ++i) {
    if (i + 16 < n) __builtin_prefetch(&ix.parent[po[i + 16]]);
    NodeId v = po[i];
    for (int q = qhead[v]; q >= 0; q = qnext[q]) out[q] = po[find(ix.post[other[q]])];
    if (ix.parent[v] >= 0) up[i] = ix.post[ix.parent[v]];
  }
  return out;
}

inline std::vector<std::pair<int, NodeId>> compute_terminal_roots(const MultiGraph& g,
                                                                  const std::vector<NodeSet>& sets) {
  RootedTreeIndex ix(g);
  auto r = terminal_roots(ix, sets);
  std::vector<std::pair<int, NodeId>> out;
  for (std::size_t i = 0; i < r.size(); ++i) out.push_back({static_cast<int>(i), r[i]});
  return out;
}

namespace detail {

inline void check(const Instance& inst, std::initializer_list<Variant> ok, bool tree = true) {
  if (std::find(ok.begin(), ok.end(), inst.variant) == ok.end())
    throw std::invalid_argument("tree solver does not handle this variant");
  if (tree && !is_tree(inst.graph)) throw std::invalid_argument("input graph is not a tree");
}

}  // namespace detail

// Node variant: in post-order, cut any terminal root whose set is still
// uncut, drop its subtree.
// Terminal lists travel up the tree as spliced linked lists.
inline std::optional<CutSet> solve_node_tree_greedy(const Instance& inst) {
  detail::check(inst, {Variant::node}, false);
  const MultiGraph& g = inst.graph;
  RootedTreeIndex ix(g);
  if (inst.sets.empty()) return node_cut({});
  if (inst.k == 0) return std::nullopt;
  auto roots = terminal_roots(ix, inst.sets);
  int cap = g.node_capacity();
  std::vector<int> head(cap, -1), tail(cap, -1), next, owner;
  for (std::size_t i = 0; i < inst.sets.size(); ++i)
    for (NodeId v : inst.sets[i]) {
      int id = static_cast<int>(owner.size());
      owner.push_back(static_cast<int>(i));
      next.push_back(-1);
      if (head[v] < 0) head[v] = id;
      else next[tail[v]] = id;
      tail[v] = id;
    }
  std::vector<int> rooted_first(cap, -1), rooted_next(inst.sets.size(), -1);
  for (int i = static_cast<int>(inst.sets.size()) - 1; i >= 0; --i) {
    rooted_next[i] = rooted_first[roots[i]];
    rooted_first[roots[i]] = i;
  }
  std::vector<char> cut(inst.sets.size(), 0);
  NodeSet out;
  const auto& po = ix.postorder();
  for (std::size_t j = 0; j < po.size(); ++j) {
    if (j + 16 < po.size()) {
      __builtin_prefetch(&rooted_first[po[j + 16]]);
      __builtin_prefetch(&head[po[j + 16]]);
    }
    NodeId v = po[j];
    bool need = false;
    for (int i = rooted_first[v]; i >= 0 && !need; i = rooted_next[i]) need = !cut[i];
    if (need) {
      out.push_back(v);
      if (static_cast<int>(out.size()) > inst.k) return std::nullopt;
      for (int id = head[v]; id >= 0; id = next[id]) cut[owner[id]] = 1;
      continue;
    }
    NodeId p = ix.parent[v];
    if (p < 0 || head[v] < 0) continue;
    if (head[p] < 0) head[p] = head[v];
    else next[tail[p]] = head[v];
    tail[p] = tail[v];
  }
  std::sort(out.begin(), out.end());
  return node_cut(out);
}

namespace detail {

// Child of r on the path down to x (x strictly below r).
inline NodeId child_towards(const RootedTreeIndex& ix, NodeId r, NodeId x) {
  while (ix.parent[x] != r) x = ix.parent[x];
  return x;
}

struct BranchState {
  const MultiGraph* g;
  const RootedTreeIndex* ix;
  std::vector<NodeSet> sets;
  std::vector<NodeId> roots;
  bool nodes;
  long leaves = 0;
  std::vector<int> cur;
  std::optional<std::vector<int>> best;

  std::vector<int> live_sets() const {
    std::vector<char> er(g->edge_capacity(), 0), nr(g->node_capacity(), 0);
    for (int x : cur) (nodes ? nr : er)[x] = 1;
    auto lab = component_labels(*g, er, nr);
    std::vector<int> out;
    for (std::size_t i = 0; i < sets.size(); ++i)
      if (!smc::detail::set_is_separated(*g, sets[i], lab)) out.push_back(static_cast<int>(i));
    return out;
  }

  void record() {
    std::vector<int> s = cur;
    std::sort(s.begin(), s.end());
    if (!best || s.size() < best->size() || (s.size() == best->size() && s < *best)) best = s;
  }

  void go(int budget) {
    auto live = live_sets();
    if (live.empty()) {
      ++leaves;
      record();
      return;
    }
    if (budget == 0 || (best && cur.size() + 1 > best->size())) {
      ++leaves;
      return;
    }
    int pick = live[0];
    for (int i : live) {
      NodeId a = roots[i], b = roots[pick];
      if (ix->depth[a] > ix->depth[b] || (ix->depth[a] == ix->depth[b] && a < b)) pick = i;
    }
    NodeId r = roots[pick];
    const NodeSet& T = sets[pick];
    std::vector<int> options;
    if (nodes && !std::binary_search(T.begin(), T.end(), r) && !is_terminal[r]) {
      options.push_back(r);
    } else {
      for (NodeId x : T)
        if (x != r) {
          NodeId c = child_towards(*ix, r, x);
          options.push_back(nodes ? c : ix->parent_edge[c]);
        }
      std::sort(options.begin(), options.end());
      options.erase(std::unique(options.begin(), options.end()), options.end());
    }
    for (int o : options) {
      cur.push_back(o);
      go(budget - 1);
      cur.pop_back();
    }
  }

  std::vector<char> is_terminal;
};

// Terminal-terminal edges contracted; nullopt when a set collapses.
struct RnodePrep {
  MultiGraph graph;
  std::vector<NodeSet> sets;
};

inline std::optional<RnodePrep> contract_terminal_edges(const Instance& inst) {
  auto term = smc::detail::as_mask(inst.graph.node_capacity(), inst.terminals());
  EdgeSet F;
  for (EdgeId e : inst.graph.proper_edges()) {
    auto [u, v] = inst.graph.endpoints(e);
    if (term[u] && term[v]) F.push_back(e);
  }
  MergeResult m = contract_edges(inst.graph, F);
  RnodePrep out{std::move(m.graph), inst.sets};
  for (auto& s : out.sets) {
    for (NodeId& v : s) v = m.image[v];
    normalize(s);
    if (s.size() < 2) return std::nullopt;
  }
  return out;
}

}  // namespace detail

struct BranchReport {
  long leaves = 0;
  int p = 0;
};

// Edge and restricted node variants: branch on the at most p ways to cut
// the deepest terminal root. Explores the whole tree of budget k and keeps
// the smallest cut.
inline std::optional<CutSet> solve_tree_branch_kp(const Instance& inst, BranchReport* rep = nullptr) {
  detail::check(inst, {Variant::edge, Variant::rnode});
  bool nodes = inst.variant == Variant::rnode;
  MultiGraph g = inst.graph;
  std::vector<NodeSet> sets = inst.sets;
  if (rep) rep->p = inst.p();
  if (nodes) {
    auto prep = detail::contract_terminal_edges(inst);
    if (!prep) return std::nullopt;
    g = std::move(prep->graph);
    sets = std::move(prep->sets);
  }
  if (sets.empty()) return CutSet{inst.cut_kind(), {}};
  RootedTreeIndex ix(g);
  detail::BranchState st{&g, &ix, sets, terminal_roots(ix, sets), nodes};
  st.is_terminal.assign(g.node_capacity(), 0);
  for (const auto& s : sets)
    for (NodeId v : s) st.is_terminal[v] = 1;
  st.go(inst.k);
  if (rep) rep->leaves = st.leaves;
  if (!st.best) return std::nullopt;
  return CutSet{inst.cut_kind(), *st.best};
}

// Edge and restricted node variants as hitting set over the subtrees G_T,
// solved by a DP over subsets of the sets.
inline std::optional<CutSet> solve_tree_hitting_t(const Instance& inst) {
  detail::check(inst, {Variant::edge, Variant::rnode});
  const MultiGraph& g = inst.graph;
  int t = inst.t();
  if (t > 24) throw std::invalid_argument("hitting-set DP: too many terminal sets");
  if (t == 0) return CutSet{inst.cut_kind(), {}};
  RootedTreeIndex ix(g);
  auto roots = terminal_roots(ix, inst.sets);
  int cap = g.node_capacity();
  // below[v][i]: terminals of set i in the subtree of v
  std::vector<std::vector<int>> below(cap, std::vector<int>(t, 0));
  for (int i = 0; i < t; ++i)
    for (NodeId v : inst.sets[i]) below[v][i]++;
  const auto& pre = ix.preorder();
  for (auto it = pre.rbegin(); it != pre.rend(); ++it)
    if (ix.parent[*it] >= 0)
      for (int i = 0; i < t; ++i) below[ix.parent[*it]][i] += below[*it][i];
  bool nodes = inst.variant == Variant::rnode;
  auto term = smc::detail::as_mask(cap, inst.terminals());
  std::map<std::uint32_t, int> element_of_mask;  // lowest element per mask
  for (NodeId v : pre) {
    std::uint32_t m = 0;
    for (int i = 0; i < t; ++i) {
      int sz = static_cast<int>(inst.sets[i].size());
      bool hit = nodes ? (below[v][i] > 0 && (below[v][i] < sz || v == roots[i]))
                       : (ix.parent[v] >= 0 && below[v][i] > 0 && below[v][i] < sz);
      if (hit) m |= 1u << i;
    }
    if (!m) continue;
    if (nodes && term[v]) continue;
    int el = nodes ? v : ix.parent_edge[v];
    auto f = element_of_mask.find(m);
    if (f == element_of_mask.end() || el < f->second) element_of_mask[m] = el;
  }
  std::uint32_t full = (1u << t) - 1;
  const int inf = std::numeric_limits<int>::max() / 4;
  std::vector<int> dp(full + 1, inf), via(full + 1, -1);
  std::vector<std::uint32_t> from(full + 1, 0);
  dp[0] = 0;
  for (std::uint32_t I = 1; I <= full; ++I)
    for (auto& [m, el] : element_of_mask) {
      if (!(m & I)) continue;
      std::uint32_t rest = I & ~m;
      if (dp[rest] + 1 < dp[I]) {
        dp[I] = dp[rest] + 1;
        via[I] = el;
        from[I] = rest;
      }
    }
  if (dp[full] > inst.k) return std::nullopt;
  std::vector<int> out;
  for (std::uint32_t I = full; I; I = from[I]) out.push_back(via[I]);
  normalize(out);
  return CutSet{inst.cut_kind(), out};
}

// Removes non-terminal leaves and splices non-terminal degree-2 nodes (for
// the restricted node variant only when a neighbour is non-terminal too).
inline Instance kernelize_tree_tp(const Instance& inst) {
  detail::check(inst, {Variant::edge, Variant::rnode});
  Instance out = inst;
  MultiGraph& g = out.graph;
  auto term = smc::detail::as_mask(g.node_capacity(), inst.terminals());
  bool rnode = inst.variant == Variant::rnode;
  std::vector<NodeId> work = g.nodes();
  std::vector<char> queued(g.node_capacity(), 1);
  auto push = [&](NodeId v) {
    if (v >= 0 && g.has_node(v) && !queued[v]) queued[v] = 1, work.push_back(v);
  };
  while (!work.empty()) {
    NodeId v = work.back();
    work.pop_back();
    queued[v] = 0;
    if (!g.has_node(v) || term[v]) continue;
    int d = g.degree(v);
    if (d <= 1 && g.node_count() > 1) {
      NodeId u = d ? g.opposite(g.incident(v)[0], v) : -1;
      g.remove_node(v);
      push(u);
      continue;
    }
    if (d != 2) continue;
    NodeId u = g.opposite(g.incident(v)[0], v), w = g.opposite(g.incident(v)[1], v);
    if (rnode && term[u] && term[w]) continue;
    g.remove_node(v);
    g.add_edge(u, w);
    push(u);
    push(w);
  }
  return out;
}

}  // namespace smc::trees

#endif
