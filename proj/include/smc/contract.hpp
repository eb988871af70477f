#ifndef SMC_CONTRACT_HPP
#define SMC_CONTRACT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "detail/by_components.hpp"
#include "detail/combinations.hpp"
#include "instance.hpp"
#include "separation.hpp"

// Edge variant by randomized contractions: find a bordered region without a
// good separation, mark the few edges some optimum may use there, contract
// the rest, repeat until the graph is small.
namespace smc::contract {

enum class Regime { monte_carlo, deterministic };

struct SetFamily {
  EdgeSet universe;
  std::vector<EdgeSet> subsets;
  Regime regime = Regime::monte_carlo;
  int repetitions = 0;
  double epsilon = 0;
};

// Members contain any A (|A| <= a) and avoid any disjoint B (|B| <= b):
// always for the power set, with probability >= 1 - eps otherwise.
inline SetFamily build_set_family(EdgeSet universe, int a, int b, double eps, Regime regime, std::mt19937_64& rng) {
  normalize(universe);
  int n = static_cast<int>(universe.size());
  if (a < 0 || b < 0 || a > n || b > n) throw std::invalid_argument("set family: sizes out of range");
  SetFamily f;
  f.universe = universe;
  f.regime = regime;
  f.epsilon = eps;
  if (regime == Regime::deterministic) {
    if (n > 20) throw std::invalid_argument("set family: power set needs a universe of at most 20");
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
      EdgeSet s;
      for (int i = 0; i < n; ++i)
        if (m >> i & 1) s.push_back(universe[i]);
      f.subsets.push_back(std::move(s));
    }
    f.repetitions = static_cast<int>(f.subsets.size());
    return f;
  }
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("set family: epsilon must lie in (0,1)");
  if (a == 0) {
    f.subsets.push_back({});
    f.repetitions = 1;
    return f;
  }
  if (b == 0) {
    f.subsets.push_back(universe);
    f.repetitions = 1;
    return f;
  }
  double p = static_cast<double>(a) / (a + b);
  double hit = std::pow(p, a) * std::pow(1 - p, b);
  f.repetitions = static_cast<int>(std::ceil(std::log(1 / eps) / hit));
  std::bernoulli_distribution coin(p);
  for (int r = 0; r < f.repetitions; ++r) {
    EdgeSet s;
    for (EdgeId e : universe)
      if (coin(rng)) s.push_back(e);
    f.subsets.push_back(std::move(s));
  }
  return f;
}

struct Block {
  int cost = 0;
  std::uint64_t covers = 0;  // bit i: set i is cut when the block is taken
};

struct AonResult {
  int cost = 0;
  std::vector<int> selection;  // block indices, ascending
};

// Cheapest set of blocks whose cover masks together contain target.
inline std::optional<AonResult> all_or_nothing_dp(const std::vector<Block>& blocks, std::uint64_t target) {
  int u = static_cast<int>(blocks.size());
  std::uint64_t bits = target;
  int t = 0;
  while (bits) ++t, bits >>= 1;
  if (t > 24) throw std::invalid_argument("all-or-nothing: too many sets");
  const int inf = std::numeric_limits<int>::max() / 4;
  std::size_t width = std::size_t{1} << t;
  // z[i][U]: cheapest cut of U using blocks 0..i-1
  std::vector<std::vector<int>> z(u + 1, std::vector<int>(width, inf));
  z[0][0] = 0;
  for (int i = 1; i <= u; ++i) {
    const Block& bl = blocks[i - 1];
    for (std::size_t U = 0; U < width; ++U) {
      int best = z[i - 1][U];
      int rest = z[i - 1][U & ~bl.covers];
      if (rest < inf) best = std::min(best, bl.cost + rest);
      z[i][U] = best;
    }
  }
  if (z[u][target] >= inf) return std::nullopt;
  AonResult r;
  r.cost = z[u][target];
  std::size_t U = target;
  for (int i = u; i >= 1; --i) {
    if (z[i][U] == z[i - 1][U]) continue;
    r.selection.push_back(i - 1);
    U &= ~blocks[i - 1].covers;
  }
  std::reverse(r.selection.begin(), r.selection.end());
  return r;
}

// Behaviour of the outside world at the border of a region: which sets are
// still joined outside, how the border is linked outside, and which border
// classes see a terminal of each such set.
struct BorderGuess {
  std::uint64_t active = 0;
  std::vector<int> block_of;          // per border index
  int blocks = 0;
  std::vector<std::uint64_t> classes;  // per set, a mask over blocks
};

inline std::vector<BorderGuess> enumerate_guesses(int border, int t) {
  std::vector<BorderGuess> out;
  for (std::uint64_t act = 0; act < (std::uint64_t{1} << t); ++act)
    detail::for_each_set_partition(border, [&](const std::vector<int>& rgs, int nb) {
      std::vector<int> idx;
      for (int i = 0; i < t; ++i)
        if (act >> i & 1) idx.push_back(i);
      std::vector<std::uint64_t> cls(t, 0);
      while (true) {
        out.push_back({act, rgs, nb, cls});
        std::size_t j = 0;
        for (; j < idx.size(); ++j) {
          if (++cls[idx[j]] < (std::uint64_t{1} << nb)) break;
          cls[idx[j]] = 0;
        }
        if (j == idx.size()) break;
      }
    });
  return out;
}

// Number of guesses: sum over partitions P of the border of (1 + 2^|P|)^t.
inline long double guess_count(int border, int t) {
  long double r = 0;
  detail::for_each_set_partition(border, [&](const std::vector<int>&, int nb) {
    r += std::pow(1.0L + std::pow(2.0L, nb), t);
  });
  return r;
}

// q = r k + 1 for a border of 2k nodes.
inline long long compute_q(int k, int t) {
  long double q = guess_count(2 * k, t) * k + 1;
  if (q > 1e15L) throw std::overflow_error("q too large");
  return static_cast<long long>(q);
}

namespace detail {

// Smallest edge set of size <= k cutting all sets, lexicographically first
// among the smallest.
inline std::optional<EdgeSet> exhaustive_cut(const MultiGraph& g, const std::vector<NodeSet>& sets, int k) {
  EdgeSet pool = g.proper_edges();
  std::optional<EdgeSet> res;
  smc::detail::for_each_small_subset(static_cast<int>(pool.size()), k, [&](const std::vector<int>& idx) {
    std::vector<char> er(g.edge_capacity(), 0);
    for (int i : idx) er[pool[i]] = 1;
    if (!smc::detail::cuts_all(g, sets, er, {})) return false;
    EdgeSet s;
    for (int i : idx) s.push_back(pool[i]);
    res = s;
    return true;
  });
  return res;
}

inline bool smaller(const EdgeSet& a, const std::optional<EdgeSet>& b) {
  if (!b) return true;
  return a.size() != b->size() ? a.size() < b->size() : a < *b;
}

// Terminal sets of an active guess mapped through image.
inline std::optional<std::vector<NodeSet>> guess_sets(const BorderGuess& gs, const std::vector<NodeSet>& sets,
                                                      const NodeSet& border, const std::vector<char>& inner,
                                                      const std::vector<NodeId>& image) {
  std::vector<NodeSet> out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (!(gs.active >> i & 1)) continue;
    NodeSet s;
    for (std::size_t b = 0; b < border.size(); ++b)
      if (gs.classes[i] >> gs.block_of[b] & 1) s.push_back(image[border[b]]);
    for (NodeId v : sets[i])
      if (v < static_cast<NodeId>(inner.size()) && inner[v]) s.push_back(image[v]);
    normalize(s);
    if (s.size() < 2) return std::nullopt;
    out.push_back(s);
  }
  return out;
}

inline std::vector<NodeSet> border_groups(const BorderGuess& gs, const NodeSet& border,
                                          const std::vector<NodeId>& image) {
  std::vector<NodeSet> groups(gs.blocks);
  for (std::size_t b = 0; b < border.size(); ++b) groups[gs.block_of[b]].push_back(image[border[b]]);
  return groups;
}

inline std::vector<NodeId> compose(const std::vector<NodeId>& first, const std::vector<NodeId>& second) {
  std::vector<NodeId> out(first.size(), -1);
  for (std::size_t v = 0; v < first.size(); ++v)
    if (first[v] >= 0) out[v] = second[first[v]];
  return out;
}

// Non-loop edges with both ends in C + h, at least one in C.
inline EdgeSet block_edges(const MultiGraph& g, const std::vector<int>& lab, int c, NodeId h) {
  EdgeSet out;
  for (EdgeId e : g.proper_edges()) {
    auto [u, v] = g.endpoints(e);
    bool iu = lab[u] == c, iv = lab[v] == c;
    if ((iu || u == h) && (iv || v == h) && (iu || iv)) out.push_back(e);
  }
  return out;
}

}  // namespace detail

struct Region {
  MultiGraph graph;  // induced subgraph of the region, ids of the host kept
  NodeSet border;
};

struct RegionStats {
  int case1 = 0;
  int case2 = 0;
  long family_members = 0;
  long h_missing = 0;
};

// Best edge set (size <= k) for one guess, in the region's edge ids. Case 1
// for small regions, all-or-nothing cuts over the family otherwise.
inline std::optional<EdgeSet> process_region(const Region& R, const BorderGuess& gs, const SetFamily* family,
                                             long long q, int k, const std::vector<NodeSet>& sets,
                                             RegionStats* stats = nullptr) {
  const MultiGraph& gp = R.graph;
  std::vector<char> inner(gp.node_capacity(), 0);
  for (NodeId v : gp.nodes()) inner[v] = 1;
  for (NodeId b : R.border) inner[b] = 0;
  if (gp.node_count() <= q * (k + 1)) {
    if (stats) ++stats->case1;
    std::vector<NodeId> id(gp.node_capacity());
    for (NodeId v = 0; v < gp.node_capacity(); ++v) id[v] = v;
    auto tilde = identify_groups(gp, detail::border_groups(gs, R.border, id));
    auto ts = detail::guess_sets(gs, sets, R.border, inner, tilde.image);
    if (!ts) return std::nullopt;
    return detail::exhaustive_cut(tilde.graph, *ts, k);
  }
  if (stats) ++stats->case2;
  if (!family) throw std::invalid_argument("process_region: case 2 needs a set family");
  std::optional<EdgeSet> best;
  for (const EdgeSet& F : family->subsets) {
    if (stats) ++stats->family_members;
    MergeResult cf = contract_edges(gp, F);
    std::vector<int> pre(gp.node_capacity(), 0);
    for (NodeId v : gp.nodes()) ++pre[cf.image[v]];
    NodeSet heavy;
    for (NodeId v : cf.graph.nodes())
      if (pre[v] >= q + 1) heavy.push_back(v);
    if (heavy.empty()) {
      if (stats) ++stats->h_missing;
      continue;
    }
    MergeResult hf = identify_groups(cf.graph, {heavy});
    const MultiGraph& gF = hf.graph;
    std::vector<NodeId> img = detail::compose(cf.image, hf.image);
    NodeId h = hf.image[heavy[0]];
    std::vector<char> hm(gF.node_capacity(), 0);
    hm[h] = 1;
    auto lab = component_labels(gF, {}, hm);
    std::vector<int> touching;
    for (NodeId b : R.border)
      if (img[b] != h) touching.push_back(lab[img[b]]);
    normalize(touching);
    std::vector<EdgeSet> cblocks;
    for (int c : touching) cblocks.push_back(detail::block_edges(gF, lab, c, h));
    for (std::uint64_t ym = 0; ym < (std::uint64_t{1} << touching.size()); ++ym) {
      EdgeSet Y, Cn;
      for (std::size_t i = 0; i < touching.size(); ++i)
        (ym >> i & 1 ? Y : Cn).insert((ym >> i & 1 ? Y : Cn).end(), cblocks[i].begin(), cblocks[i].end());
      normalize(Y);
      if (static_cast<int>(Y.size()) > k) continue;
      MergeResult hr = contract_edges(without_edges(gF, Y), Cn);
      std::vector<NodeId> img2 = detail::compose(img, hr.image);
      MergeResult gh = identify_groups(hr.graph, detail::border_groups(gs, R.border, img2));
      const MultiGraph& G = gh.graph;
      std::vector<NodeId> fin = detail::compose(img2, gh.image);
      NodeId hh = gh.image[hr.image[h]];
      auto ts = detail::guess_sets(gs, sets, R.border, inner, fin);
      if (!ts) continue;
      auto glab = component_labels(G);
      std::vector<NodeSet> live;
      for (auto& s : *ts)
        if (!smc::detail::set_is_separated(G, s, glab)) live.push_back(s);
      std::vector<char> hm2(G.node_capacity(), 0);
      hm2[hh] = 1;
      auto clab = component_labels(G, {}, hm2);
      int ncomp = 0;
      for (NodeId v : G.nodes()) ncomp = std::max(ncomp, clab[v] + 1);
      std::vector<Block> blocks(ncomp);
      std::vector<EdgeSet> bedges(ncomp);
      for (int c = 0; c < ncomp; ++c) {
        bedges[c] = detail::block_edges(G, clab, c, hh);
        blocks[c].cost = static_cast<int>(bedges[c].size());
      }
      for (std::size_t i = 0; i < live.size(); ++i)
        for (NodeId v : live[i])
          if (v != hh) blocks[clab[v]].covers |= std::uint64_t{1} << i;
      std::uint64_t target = live.empty() ? 0 : (std::uint64_t{1} << live.size()) - 1;
      auto dp = all_or_nothing_dp(blocks, target);
      if (!dp || static_cast<int>(Y.size()) + dp->cost > k) continue;
      EdgeSet cand = Y;
      for (int c : dp->selection) cand.insert(cand.end(), bedges[c].begin(), bedges[c].end());
      normalize(cand);
      if (detail::smaller(cand, best)) best = cand;
    }
  }
  return best;
}

struct Options {
  Regime regime = Regime::monte_carlo;
  double epsilon = 1e-3;
  std::uint64_t seed = 1;
  long long q = 0;  // 0: q = r k + 1
};

struct Report {
  int iterations = 0;
  int contracted_edges = 0;
  RegionStats regions;
  std::vector<int> node_counts;  // before each iteration
};

namespace detail {

inline std::optional<EdgeSet> solve_connected(MultiGraph g, std::vector<NodeSet> sets, int k, const Options& opt,
                                              std::mt19937_64& rng, Report* rep) {
  int t = static_cast<int>(sets.size());
  long long q = opt.q > 0 ? opt.q : compute_q(k, t);
  // per family failure bound; at most |V| iterations
  double eps = opt.epsilon / std::max(1, g.node_count());
  while (true) {
    if (static_cast<long long>(g.proper_edges().size()) <= q) return exhaustive_cut(g, sets, k);
    if (rep) ++rep->iterations, rep->node_counts.push_back(g.node_count());
    auto bs = extract_bordered_subgraph(g, static_cast<int>(std::min<long long>(q, g.node_count())), 2 * k);
    Region R{induced_subgraph(g, bs.nodes), bs.border};
    EdgeSet universe = R.graph.proper_edges();
    std::optional<SetFamily> fam;
    if (R.graph.node_count() > q * (k + 1)) {
      int n = static_cast<int>(universe.size());
      int a = static_cast<int>(std::min<long long>((2 * q - 1) * k, n));
      fam = build_set_family(universe, a, std::min(k, n), eps, opt.regime, rng);
    }
    std::vector<char> marked(g.edge_capacity(), 0);
    for (const auto& gs : enumerate_guesses(static_cast<int>(R.border.size()), t)) {
      auto m = process_region(R, gs, fam ? &*fam : nullptr, q, k, sets, rep ? &rep->regions : nullptr);
      if (m)
        for (EdgeId e : *m) marked[e] = 1;
    }
    EdgeSet drop;
    for (EdgeId e : universe)
      if (!marked[e]) drop.push_back(e);
    // only reachable with a q below r k + 1
    if (drop.empty()) return exhaustive_cut(g, sets, k);
    int before = g.node_count();
    MergeResult cr = contract_edges(g, drop);
    g = std::move(cr.graph);
    if (rep) rep->contracted_edges += static_cast<int>(drop.size());
    if (g.node_count() >= before) throw std::logic_error("contraction made no progress");
    for (auto& s : sets) {
      for (NodeId& v : s) v = cr.image[v];
      normalize(s);
      if (s.size() < 2) return std::nullopt;
    }
  }
}

}  // namespace detail

inline std::optional<CutSet> solve_edge_kt_rc(const Instance& inst, const Options& opt = {}, Report* rep = nullptr) {
  if (inst.variant != Variant::edge) throw std::invalid_argument("contraction solver handles the edge variant only");
  std::mt19937_64 rng(opt.seed);
  return smc::detail::solve_per_component(inst, [&](const Instance& sub) -> std::optional<CutSet> {
    auto r = detail::solve_connected(sub.graph, sub.sets, sub.k, opt, rng, rep);
    if (!r) return std::nullopt;
    return edge_cut(*r);
  });
}

}  // namespace smc::contract

#endif
