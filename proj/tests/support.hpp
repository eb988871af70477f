#ifndef SMC_TESTS_SUPPORT_HPP
#define SMC_TESTS_SUPPORT_HPP

// Shared fixtures and independent brute-force references for the tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "smc/graph.hpp"
#include "smc/instance.hpp"

namespace smc::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline MultiGraph path_graph(int n) {
  MultiGraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline MultiGraph cycle_graph(int n) {
  MultiGraph g = path_graph(n);
  g.add_edge(n - 1, 0);
  return g;
}

inline MultiGraph complete_graph(int n) {
  MultiGraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

// Random spanning tree plus extra edges. Multi-edges only when allowed.
inline MultiGraph random_connected(Rng& rng, int n, int extra, bool multi = false) {
  MultiGraph g(n);
  std::set<std::pair<int, int>> have;
  for (int i = 1; i < n; ++i) {
    int p = uniform(rng, 0, i - 1);
    g.add_edge(p, i);
    have.insert({p, i});
  }
  int max_simple = n * (n - 1) / 2;
  for (int tries = 0; extra > 0 && tries < 50 * (extra + 1); ++tries) {
    int a = uniform(rng, 0, n - 1), b = uniform(rng, 0, n - 1);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (!multi && (have.count({a, b}) || static_cast<int>(have.size()) >= max_simple)) continue;
    g.add_edge(a, b);
    have.insert({a, b});
    --extra;
  }
  return g;
}

inline MultiGraph random_tree(Rng& rng, int n) { return random_connected(rng, n, 0); }

inline NodeSet random_subset(Rng& rng, int n, int size) {
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  NodeSet s(all.begin(), all.begin() + std::min(size, n));
  std::sort(s.begin(), s.end());
  return s;
}

inline Instance random_instance(Rng& rng, Variant var, int n, int extra, int t, int pmax, int k, bool multi = false) {
  Instance inst;
  inst.graph = random_connected(rng, n, extra, multi);
  inst.variant = var;
  inst.k = k;
  for (int i = 0; i < t; ++i) inst.sets.push_back(random_subset(rng, n, uniform(rng, 2, std::max(2, pmax))));
  inst.validate();
  return inst;
}

// Plain exhaustive min cut value between node sets, via edge subsets.
inline int brute_min_cut(const MultiGraph& g, const NodeSet& X, const NodeSet& Y) {
  EdgeSet es = g.proper_edges();
  int m = static_cast<int>(es.size());
  int best = m;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    int c = __builtin_popcountll(mask);
    if (c >= best) continue;
    std::vector<char> rm(g.edge_capacity(), 0);
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1) rm[es[i]] = 1;
    auto r = reachable_mask(g, X, rm);
    bool ok = true;
    for (NodeId y : Y) ok = ok && !r[y];
    if (ok) best = c;
  }
  return best;
}

inline bool separated_by(const MultiGraph& g, NodeId x, NodeId y, const EdgeSet& S) {
  std::vector<char> rm(g.edge_capacity(), 0);
  for (EdgeId e : S) rm[e] = 1;
  return !reachable_mask(g, {x}, rm)[y];
}

// All inclusion-minimal x-y cuts of size <= l, by subset enumeration.
inline std::set<EdgeSet> brute_minimal_cuts(const MultiGraph& g, NodeId x, NodeId y, int l) {
  EdgeSet es = g.proper_edges();
  int m = static_cast<int>(es.size());
  std::set<EdgeSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    if (__builtin_popcountll(mask) > l) continue;
    EdgeSet S;
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1) S.push_back(es[i]);
    if (!separated_by(g, x, y, S)) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < S.size() && minimal; ++i) {
      EdgeSet T = S;
      T.erase(T.begin() + i);
      if (separated_by(g, x, y, T)) minimal = false;
    }
    if (minimal) out.insert(S);
  }
  return out;
}

// Naive pairwise check of a cut: every set has some pair of terminals that
// cannot reach each other (deleted terminals reach nothing).
inline bool naive_cuts(const Instance& inst, const CutSet& S) {
  const MultiGraph& g = inst.graph;
  std::vector<char> er(g.edge_capacity(), 0), nr(g.node_capacity(), 0);
  for (int x : S.members) (S.kind == CutKind::edges ? er : nr)[x] = 1;
  for (const auto& T : inst.sets) {
    bool cut = false;
    for (std::size_t i = 0; i < T.size() && !cut; ++i)
      for (std::size_t j = i + 1; j < T.size() && !cut; ++j) {
        if (nr[T[i]] || nr[T[j]]) {
          cut = true;
          break;
        }
        auto r = reachable_mask(g, {T[i]}, er, nr);
        if (!r[T[j]]) cut = true;
      }
    if (!cut) return false;
  }
  return true;
}

// Minimum cut size by plain subset enumeration, or -1 when above k.
inline int brute_optimum(const Instance& inst) {
  const MultiGraph& g = inst.graph;
  std::vector<int> pool;
  auto term = inst.terminals();
  if (inst.variant == Variant::edge) pool = g.proper_edges();
  else
    for (NodeId v : g.nodes())
      if (inst.variant == Variant::node || !std::binary_search(term.begin(), term.end(), v)) pool.push_back(v);
  int m = static_cast<int>(pool.size());
  int best = -1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    int c = __builtin_popcountll(mask);
    if (c > inst.k || (best >= 0 && c >= best)) continue;
    CutSet S{inst.cut_kind(), {}};
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1) S.members.push_back(pool[i]);
    if (naive_cuts(inst, S)) best = c;
  }
  return best;
}

}  // namespace smc::testing

#endif
