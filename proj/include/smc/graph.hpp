#ifndef SMC_GRAPH_HPP
#define SMC_GRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace smc {

using NodeId = int;
using EdgeId = int;
using EdgeSet = std::vector<EdgeId>;
using NodeSet = std::vector<NodeId>;

struct Endpoints {
  NodeId u;
  NodeId v;
};

// Undirected multigraph. Ids are never reused: removal leaves a hole, new
// nodes and edges always get fresh ids.
class MultiGraph {
 public:
  MultiGraph() = default;
  explicit MultiGraph(int n) {
    for (int i = 0; i < n; ++i) add_node();
  }

  NodeId add_node() {
    NodeId id = static_cast<NodeId>(node_alive_.size());
    node_alive_.push_back(1);
    inc_.emplace_back();
    origins_.push_back({id});
    ++live_nodes_;
    return id;
  }

  EdgeId add_edge(NodeId u, NodeId v) {
    require_node(u);
    require_node(v);
    EdgeId id = static_cast<EdgeId>(ends_.size());
    ends_.push_back({u, v});
    edge_alive_.push_back(1);
    inc_[u].push_back(id);
    if (u != v) inc_[v].push_back(id);
    ++live_edges_;
    return id;
  }

  void remove_edge(EdgeId e) {
    require_edge(e);
    auto [u, v] = ends_[e];
    erase_inc(u, e);
    if (u != v) erase_inc(v, e);
    edge_alive_[e] = 0;
    --live_edges_;
  }

  void remove_node(NodeId v) {
    require_node(v);
    std::vector<EdgeId> es = inc_[v];
    for (EdgeId e : es) remove_edge(e);
    node_alive_[v] = 0;
    --live_nodes_;
  }

  int node_capacity() const { return static_cast<int>(node_alive_.size()); }
  int edge_capacity() const { return static_cast<int>(ends_.size()); }
  int node_count() const { return live_nodes_; }
  int edge_count() const { return live_edges_; }

  bool has_node(NodeId v) const {
    return v >= 0 && v < node_capacity() && node_alive_[v];
  }
  bool has_edge(EdgeId e) const {
    return e >= 0 && e < edge_capacity() && edge_alive_[e];
  }

  NodeSet nodes() const {
    NodeSet out;
    out.reserve(live_nodes_);
    for (NodeId v = 0; v < node_capacity(); ++v)
      if (node_alive_[v]) out.push_back(v);
    return out;
  }

  EdgeSet edges() const {
    EdgeSet out;
    out.reserve(live_edges_);
    for (EdgeId e = 0; e < edge_capacity(); ++e)
      if (edge_alive_[e]) out.push_back(e);
    return out;
  }

  // live edges that are not self-loops
  EdgeSet proper_edges() const {
    EdgeSet out;
    for (EdgeId e = 0; e < edge_capacity(); ++e)
      if (edge_alive_[e] && ends_[e].u != ends_[e].v) out.push_back(e);
    return out;
  }

  Endpoints endpoints(EdgeId e) const { return ends_.at(e); }
  bool is_loop(EdgeId e) const { return ends_.at(e).u == ends_.at(e).v; }
  NodeId opposite(EdgeId e, NodeId v) const {
    const auto& p = ends_.at(e);
    return p.u == v ? p.v : p.u;
  }

  const std::vector<EdgeId>& incident(NodeId v) const { return inc_.at(v); }
  int degree(NodeId v) const {
    int d = 0;
    for (EdgeId e : inc_.at(v)) d += is_loop(e) ? 2 : 1;
    return d;
  }

  // original labels merged into v by contraction or identification
  const NodeSet& origins(NodeId v) const { return origins_.at(v); }

  friend MultiGraph rebuild_merged(const MultiGraph&, const std::vector<NodeId>&,
                                   const std::vector<char>&);

 private:
  void require_node(NodeId v) const {
    if (!has_node(v)) throw std::invalid_argument("unknown node id " + std::to_string(v));
  }
  void require_edge(EdgeId e) const {
    if (!has_edge(e)) throw std::invalid_argument("unknown edge id " + std::to_string(e));
  }
  void erase_inc(NodeId v, EdgeId e) {
    auto& l = inc_[v];
    l.erase(std::find(l.begin(), l.end(), e));
  }

  std::vector<char> node_alive_;
  std::vector<Endpoints> ends_;
  std::vector<char> edge_alive_;
  std::vector<std::vector<EdgeId>> inc_;
  std::vector<NodeSet> origins_;
  int live_nodes_ = 0;
  int live_edges_ = 0;
};

// Partition of a node set into blocks; blocks sorted, ordered by first element.
struct Partition {
  std::vector<NodeSet> blocks;
  int block_of(NodeId v) const {
    for (std::size_t i = 0; i < blocks.size(); ++i)
      if (std::binary_search(blocks[i].begin(), blocks[i].end(), v)) return static_cast<int>(i);
    return -1;
  }
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(int n) : p_(n) { std::iota(p_.begin(), p_.end(), 0); }
  int find(int x) {
    while (p_[x] != x) {
      p_[x] = p_[p_[x]];
      x = p_[x];
    }
    return x;
  }
  // the smaller root survives so representatives are the minimum id
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    p_[b] = a;
    return true;
  }

 private:
  std::vector<int> p_;
};

inline std::vector<char> as_mask(int size, const std::vector<int>& items) {
  std::vector<char> m(size, 0);
  for (int x : items)
    if (x >= 0 && x < size) m[x] = 1;
  return m;
}

}  // namespace detail

// Merge nodes according to image[] (image[v] is the surviving id, a live node
// with image[r]==r); edges flagged in drop are removed, all others kept.
inline MultiGraph rebuild_merged(const MultiGraph& g, const std::vector<NodeId>& image,
                                 const std::vector<char>& drop) {
  MultiGraph h;
  h.node_alive_.assign(g.node_capacity(), 0);
  h.inc_.assign(g.node_capacity(), {});
  h.origins_.assign(g.node_capacity(), {});
  for (NodeId v = 0; v < g.node_capacity(); ++v) {
    if (!g.has_node(v)) continue;
    NodeId r = image[v];
    if (!h.node_alive_[r]) {
      h.node_alive_[r] = 1;
      ++h.live_nodes_;
    }
    auto& o = h.origins_[r];
    o.insert(o.end(), g.origins_[v].begin(), g.origins_[v].end());
  }
  for (auto& o : h.origins_) std::sort(o.begin(), o.end());
  h.ends_.assign(g.edge_capacity(), {0, 0});
  h.edge_alive_.assign(g.edge_capacity(), 0);
  for (EdgeId e = 0; e < g.edge_capacity(); ++e) {
    if (!g.has_edge(e) || (e < static_cast<EdgeId>(drop.size()) && drop[e])) continue;
    NodeId a = image[g.ends_[e].u], b = image[g.ends_[e].v];
    h.ends_[e] = {a, b};
    h.edge_alive_[e] = 1;
    h.inc_[a].push_back(e);
    if (a != b) h.inc_[b].push_back(e);
    ++h.live_edges_;
  }
  return h;
}

struct MergeResult {
  MultiGraph graph;
  std::vector<NodeId> image;  // old id -> surviving id, -1 for dead ids
};

// Each connected component of (V, F) collapses into its lowest id. Edges of F
// disappear; every other edge survives, possibly as a loop or a parallel copy.
inline MergeResult contract_edges(const MultiGraph& g, const EdgeSet& F) {
  detail::UnionFind uf(g.node_capacity());
  std::vector<char> drop(g.edge_capacity(), 0);
  for (EdgeId e : F) {
    if (!g.has_edge(e)) throw std::invalid_argument("contract: unknown edge " + std::to_string(e));
    auto [u, v] = g.endpoints(e);
    uf.unite(u, v);
    drop[e] = 1;
  }
  std::vector<NodeId> image(g.node_capacity(), -1);
  for (NodeId v : g.nodes()) image[v] = uf.find(v);
  return {rebuild_merged(g, image, drop), image};
}

// Merge groups of nodes without touching any edge.
inline MergeResult identify_groups(const MultiGraph& g, const std::vector<NodeSet>& groups) {
  detail::UnionFind uf(g.node_capacity());
  for (const auto& grp : groups) {
    for (NodeId v : grp)
      if (!g.has_node(v)) throw std::invalid_argument("identify: unknown node " + std::to_string(v));
    for (std::size_t i = 1; i < grp.size(); ++i) uf.unite(grp[0], grp[i]);
  }
  std::vector<NodeId> image(g.node_capacity(), -1);
  for (NodeId v : g.nodes()) image[v] = uf.find(v);
  return {rebuild_merged(g, image, {}), image};
}

inline MultiGraph identify_nodes(const MultiGraph& g, NodeId v, NodeId w) {
  return identify_groups(g, {{v, w}}).graph;
}

// Label per node id: component index (ordered by smallest member), -1 for
// dead or removed nodes. Removed edges/nodes given as masks (may be empty).
inline std::vector<int> component_labels(const MultiGraph& g,
                                         const std::vector<char>& edge_removed = {},
                                         const std::vector<char>& node_removed = {}) {
  auto e_out = [&](EdgeId e) { return e < static_cast<EdgeId>(edge_removed.size()) && edge_removed[e]; };
  auto n_out = [&](NodeId v) { return v < static_cast<NodeId>(node_removed.size()) && node_removed[v]; };
  std::vector<int> label(g.node_capacity(), -1);
  std::vector<NodeId> stack;
  int next = 0;
  for (NodeId s = 0; s < g.node_capacity(); ++s) {
    if (!g.has_node(s) || n_out(s) || label[s] != -1) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      for (EdgeId e : g.incident(x)) {
        if (e_out(e)) continue;
        NodeId y = g.opposite(e, x);
        if (n_out(y) || label[y] != -1) continue;
        label[y] = next;
        stack.push_back(y);
      }
    }
    ++next;
  }
  return label;
}

inline Partition components(const MultiGraph& g) {
  auto label = component_labels(g);
  Partition p;
  for (NodeId v = 0; v < g.node_capacity(); ++v) {
    if (label[v] < 0) continue;
    if (label[v] >= static_cast<int>(p.blocks.size())) p.blocks.resize(label[v] + 1);
    p.blocks[label[v]].push_back(v);
  }
  return p;
}

inline bool is_connected(const MultiGraph& g) { return components(g).blocks.size() <= 1; }

// Nodes reachable from sources after removing edges (and nodes).
inline std::vector<char> reachable_mask(const MultiGraph& g, const NodeSet& sources,
                                        const std::vector<char>& edge_removed = {},
                                        const std::vector<char>& node_removed = {}) {
  auto e_out = [&](EdgeId e) { return e < static_cast<EdgeId>(edge_removed.size()) && edge_removed[e]; };
  auto n_out = [&](NodeId v) { return v < static_cast<NodeId>(node_removed.size()) && node_removed[v]; };
  std::vector<char> seen(g.node_capacity(), 0);
  std::vector<NodeId> stack;
  for (NodeId s : sources) {
    if (!g.has_node(s) || n_out(s) || seen[s]) continue;
    seen[s] = 1;
    stack.push_back(s);
  }
  while (!stack.empty()) {
    NodeId x = stack.back();
    stack.pop_back();
    for (EdgeId e : g.incident(x)) {
      if (e_out(e)) continue;
      NodeId y = g.opposite(e, x);
      if (n_out(y) || seen[y]) continue;
      seen[y] = 1;
      stack.push_back(y);
    }
  }
  return seen;
}

// Subgraph on the given nodes with every edge having both endpoints inside.
// Ids are preserved.
inline MultiGraph induced_subgraph(const MultiGraph& g, const NodeSet& keep) {
  MultiGraph h = g;
  auto in = detail::as_mask(g.node_capacity(), keep);
  for (NodeId v : g.nodes())
    if (!in[v]) h.remove_node(v);
  return h;
}

inline MultiGraph without_edges(const MultiGraph& g, const EdgeSet& es) {
  MultiGraph h = g;
  for (EdgeId e : es)
    if (h.has_edge(e)) h.remove_edge(e);
  return h;
}

// Edges with exactly one endpoint in the node mask.
inline EdgeSet boundary_edges(const MultiGraph& g, const std::vector<char>& side) {
  EdgeSet out;
  for (EdgeId e : g.edges()) {
    auto [u, v] = g.endpoints(e);
    if (side[u] != side[v]) out.push_back(e);
  }
  return out;
}

inline NodeSet mask_to_nodes(const MultiGraph& g, const std::vector<char>& m) {
  NodeSet out;
  for (NodeId v = 0; v < g.node_capacity(); ++v)
    if (g.has_node(v) && m[v]) out.push_back(v);
  return out;
}

inline void normalize(std::vector<int>& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

}  // namespace smc

#endif
