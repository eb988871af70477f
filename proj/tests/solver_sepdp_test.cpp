#include <gtest/gtest.h>

#include "smc/oracle.hpp"
#include "smc/sepdp.hpp"
#include "support.hpp"

using namespace smc;
using namespace smc::testing;

namespace {

// Plain search for the smallest edge set of size <= k cutting every set.
std::optional<int> brute_sets(const MultiGraph& g, const std::vector<NodeSet>& sets, int k,
                              const EdgeSet* pool_in = nullptr) {
  EdgeSet pool = pool_in ? *pool_in : g.proper_edges();
  int m = static_cast<int>(pool.size());
  std::optional<int> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    int c = __builtin_popcountll(mask);
    if (c > k || (best && c >= *best)) continue;
    std::vector<char> er(g.edge_capacity(), 0);
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1) er[pool[i]] = 1;
    bool ok = true;
    for (const auto& s : sets) {
      auto r = reachable_mask(g, {s[0]}, er);
      bool cut = false;
      for (NodeId v : s) cut = cut || !r[v];
      ok = ok && cut;
    }
    if (ok) best = c;
  }
  return best;
}

// u, v adjacent in the torso iff a u-v path avoids U in its interior.
bool torso_adjacent(const MultiGraph& h, const NodeSet& U, NodeId u, NodeId v) {
  auto inU = detail::as_mask(h.node_capacity(), U);
  std::vector<char> seen(h.node_capacity(), 0);
  std::vector<NodeId> st{u};
  seen[u] = 1;
  while (!st.empty()) {
    NodeId x = st.back();
    st.pop_back();
    for (EdgeId e : h.incident(x)) {
      NodeId w = h.opposite(e, x);
      if (w == v) return true;
      if (seen[w] || inU[w]) continue;
      seen[w] = 1;
      st.push_back(w);
    }
  }
  return false;
}

bool has_edge_between(const MultiGraph& g, NodeId a, NodeId b) {
  for (EdgeId e : g.incident(a))
    if (g.opposite(e, a) == b && a != b) return true;
  return false;
}

}  // namespace

TEST(TypeOf, PathSides) {
  MultiGraph g = path_graph(4);
  std::vector<NodeSet> sets{{0, 1}, {0, 3}, {0, 2}};
  EXPECT_EQ(sepdp::type_of(g, 0, {1}, sets), 0b110u);
  EXPECT_EQ(sepdp::type_of(g, 0, {}, sets), 0u);
}

TEST(Unipedal, StarNeedsOneEdgePerLeaf) {
  MultiGraph g(4);
  g.add_edge(0, 1), g.add_edge(0, 2), g.add_edge(0, 3);
  std::vector<NodeSet> sets{{0, 1}, {0, 2}};
  auto s = sepdp::solve_unipedal(g, 0, sets, 2);
  ASSERT_TRUE(s);
  EXPECT_EQ(*s, (EdgeSet{0, 1}));
  EXPECT_FALSE(sepdp::solve_unipedal(g, 0, sets, 1));
  EXPECT_THROW(sepdp::solve_unipedal(g, 3, sets, 2), std::invalid_argument);
}

TEST(Unipedal, SharedSeparatorCountsOnce) {
  // 0 - 1 then 1 fans out to 2 and 3: one edge cuts both sets
  MultiGraph g(4);
  g.add_edge(0, 1), g.add_edge(1, 2), g.add_edge(1, 3);
  auto s = sepdp::solve_unipedal(g, 0, {{0, 2}, {0, 3}}, 1);
  ASSERT_TRUE(s);
  EXPECT_EQ(*s, (EdgeSet{0}));
}

TEST(Unipedal, MatchesBruteForce) {
  Rng rng(11);
  for (int it = 0; it < 120; ++it) {
    int n = uniform(rng, 2, 7);
    MultiGraph g = random_connected(rng, n, uniform(rng, 0, 5), it % 4 == 0);
    NodeId y = uniform(rng, 0, n - 1);
    int t = uniform(rng, 1, 3);
    std::vector<NodeSet> sets;
    for (int i = 0; i < t; ++i) {
      NodeSet s = random_subset(rng, n, uniform(rng, 1, 3));
      s.push_back(y);
      normalize(s);
      if (s.size() < 2) s = {std::min(y, (y + 1) % n), std::max(y, (y + 1) % n)};
      sets.push_back(s);
    }
    int k = uniform(rng, 0, 4);
    auto want = brute_sets(g, sets, k);
    auto got = sepdp::solve_unipedal(g, y, sets, k);
    ASSERT_EQ(got.has_value(), want.has_value()) << it;
    if (got) {
      EXPECT_EQ(static_cast<int>(got->size()), *want) << it;
      std::vector<char> er = detail::as_mask(g.edge_capacity(), *got);
      EXPECT_TRUE(detail::cuts_all(g, sets, er, {})) << it;
    }
  }
}

TEST(GStar, HubHasHeavyEdges) {
  MultiGraph g = path_graph(3);
  auto gs = sepdp::build_gstar(g, {0, 2}, 2);
  EXPECT_EQ(gs.star, 3);
  EXPECT_EQ(gs.original_edges, 2);
  EXPECT_EQ(gs.graph.degree(gs.star), 6);
  auto r = gs.rewrite({{0, 1}, {0, 2}}, {0, 2});
  EXPECT_EQ(r[0], (NodeSet{1, 3}));
  EXPECT_EQ(r[1], (NodeSet{3}));
}

TEST(LineExpansion, Triangle) {
  auto L = sepdp::line_expansion(cycle_graph(3));
  EXPECT_EQ(L.graph.node_count(), 6);
  EXPECT_EQ(L.graph.edge_count(), 9);
  for (EdgeId e = 0; e < 3; ++e) EXPECT_EQ(L.node_edge[L.edge_node[e]], e);
}

TEST(LineExpansion, ParallelEdgesNotAdjacent) {
  MultiGraph g(2);
  g.add_edge(0, 1), g.add_edge(0, 1);
  auto L = sepdp::line_expansion(g);
  EXPECT_EQ(L.graph.node_count(), 4);
  EXPECT_EQ(L.graph.edge_count(), 4);
  EXPECT_FALSE(has_edge_between(L.graph, L.edge_node[0], L.edge_node[1]));
}

TEST(Torso, PathAndStar) {
  MultiGraph p = path_graph(3);
  auto t = sepdp::build_torso(p, {0, 2});
  EXPECT_EQ(t.node_count(), 2);
  EXPECT_EQ(t.edge_count(), 1);
  MultiGraph s(5);
  for (int i = 1; i < 5; ++i) s.add_edge(0, i);
  auto ts = sepdp::build_torso(s, {1, 2, 3, 4});
  EXPECT_EQ(ts.edge_count(), 6);
  auto tc = sepdp::build_torso(s, {0, 1});
  EXPECT_EQ(tc.edge_count(), 1);
}

TEST(Torso, MatchesPathDefinition) {
  Rng rng(12);
  for (int it = 0; it < 60; ++it) {
    int n = uniform(rng, 2, 10);
    MultiGraph h = random_connected(rng, n, uniform(rng, 0, 6));
    NodeSet U = random_subset(rng, n, uniform(rng, 1, n));
    auto t = sepdp::build_torso(h, U);
    for (std::size_t i = 0; i < U.size(); ++i)
      for (std::size_t j = i + 1; j < U.size(); ++j)
        EXPECT_EQ(has_edge_between(t, U[i], U[j]), torso_adjacent(h, U, U[i], U[j])) << it;
  }
}

TEST(ZRestricted, EnginesAgree) {
  Rng rng(13);
  for (int it = 0; it < 100; ++it) {
    int n = uniform(rng, 2, 7);
    MultiGraph g = random_connected(rng, n, uniform(rng, 0, 5), it % 3 == 0);
    std::vector<NodeSet> sets;
    for (int i = 0, t = uniform(rng, 1, 3); i < t; ++i) sets.push_back(random_subset(rng, n, uniform(rng, 2, 3)));
    EdgeSet all = g.proper_edges();
    EdgeSet Zp;
    for (EdgeId e : all)
      if (uniform(rng, 0, 2) > 0) Zp.push_back(e);
    int k = uniform(rng, 0, 3);
    auto want = brute_sets(g, sets, k, &Zp);
    auto a = sepdp::solve_z_restricted(g, sets, k, Zp, sepdp::Engine::exhaustive);
    auto b = sepdp::solve_z_restricted(g, sets, k, Zp, sepdp::Engine::treewidth);
    ASSERT_EQ(a.has_value(), want.has_value()) << it;
    ASSERT_EQ(b.has_value(), want.has_value()) << it;
    if (a) {
      EXPECT_EQ(static_cast<int>(a->size()), *want) << it;
      EXPECT_EQ(b->size(), a->size()) << it;
      for (EdgeId e : *b) EXPECT_TRUE(std::binary_search(Zp.begin(), Zp.end(), e)) << it;
      std::vector<char> er = detail::as_mask(g.edge_capacity(), *b);
      EXPECT_TRUE(detail::cuts_all(g, sets, er, {})) << it;
    }
  }
}

TEST(Multipedal, RejectsSetMissingY) {
  MultiGraph g = path_graph(4);
  EXPECT_THROW(sepdp::solve_multipedal(g, {0}, {{2, 3}}, 1), std::invalid_argument);
}

TEST(Multipedal, TraceStartsWithEmptySplit) {
  MultiGraph g = path_graph(4);
  std::vector<sepdp::SplitBranch> trace;
  auto s = sepdp::solve_multipedal(g, {0, 3}, {{0, 3}, {1, 3}}, 1, sepdp::Engine::exhaustive, &trace);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->size(), 1u);
  ASSERT_FALSE(trace.empty());
  EXPECT_EQ(trace[0].first_part, 0u);
}

TEST(SolveEdgeKt, MatchesOracle) {
  Rng rng(14);
  for (int it = 0; it < 150; ++it) {
    Instance inst = random_instance(rng, Variant::edge, uniform(rng, 2, 7), uniform(rng, 0, 5), uniform(rng, 1, 3), 3,
                                    uniform(rng, 0, 3), it % 4 == 0);
    auto want = oracle::brute_force_solve(inst);
    for (auto eng : {sepdp::Engine::exhaustive, sepdp::Engine::treewidth}) {
      auto got = sepdp::solve_edge_kt(inst, eng);
      ASSERT_EQ(got.has_value(), want.has_value()) << it;
      if (got) {
        EXPECT_EQ(got->size(), want->size()) << it;
        EXPECT_TRUE(verify_cut(inst, *got)) << it;
      }
    }
  }
}

TEST(SolveEdgeKt, RejectsNodeVariant) {
  Instance inst;
  inst.graph = path_graph(2);
  inst.variant = Variant::node;
  inst.sets = {{0, 1}};
  inst.k = 1;
  EXPECT_THROW(sepdp::solve_edge_kt(inst), std::invalid_argument);
}

TEST(HPrime, ComponentSharesOneNode) {
  // path 0-1-2 with only the edge 1-2 in Zp: nodes 0 and 1 share a node
  MultiGraph g = path_graph(3);
  auto L = sepdp::line_expansion(g);
  auto H = sepdp::build_Hprime(L.graph, {L.edge_node[1]}, g.nodes());
  EXPECT_EQ(H.rep[0], 0);
  EXPECT_EQ(H.rep[1], 0);
  EXPECT_EQ(H.rep[2], 2);
  EXPECT_EQ(H.graph.node_count(), 3);
  EXPECT_EQ(H.graph.edge_count(), 2);
}
