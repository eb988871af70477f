#include <gtest/gtest.h>

#include "smc/flow.hpp"
#include "smc/graph.hpp"
#include "smc/separation.hpp"
#include "support.hpp"

using namespace smc;
using namespace smc::testing;

TEST(Contract, PathCollapsesToSingleEdge) {
  MultiGraph g = path_graph(4);  // a-b (0), b-c (1), c-d (2)
  auto r = contract_edges(g, {0, 2});
  EXPECT_EQ(r.graph.node_count(), 2);
  EXPECT_EQ(r.graph.edge_count(), 1);
  EXPECT_TRUE(r.graph.has_edge(1));
  EXPECT_EQ(r.image[0], r.image[1]);
  EXPECT_EQ(r.image[2], r.image[3]);
  EXPECT_NE(r.image[0], r.image[2]);
}

TEST(Contract, TriangleKeepsParallelEdges) {
  MultiGraph g = cycle_graph(3);  // ab, bc, ca
  auto r = contract_edges(g, {0});
  EXPECT_EQ(r.graph.node_count(), 2);
  EXPECT_EQ(r.graph.edge_count(), 2);
  auto e1 = r.graph.endpoints(1), e2 = r.graph.endpoints(2);
  EXPECT_EQ(std::minmax(e1.u, e1.v), std::minmax(e2.u, e2.v));
}

TEST(Contract, OriginsAreMerged) {
  MultiGraph g = path_graph(3);
  auto r = contract_edges(g, {0, 1});
  EXPECT_EQ(r.graph.origins(0), (NodeSet{0, 1, 2}));
}

TEST(Identify, AdjacentNodesLeaveALoop) {
  MultiGraph g = path_graph(2);
  MultiGraph h = identify_nodes(g, 0, 1);
  EXPECT_EQ(h.node_count(), 1);
  EXPECT_EQ(h.edge_count(), 1);
  EXPECT_TRUE(h.is_loop(0));
}

TEST(Components, TwoTriangles) {
  MultiGraph g(6);
  g.add_edge(0, 1), g.add_edge(1, 2), g.add_edge(2, 0);
  g.add_edge(3, 4), g.add_edge(4, 5), g.add_edge(5, 3);
  auto p = components(g);
  ASSERT_EQ(p.blocks.size(), 2u);
  EXPECT_EQ(p.blocks[0], (NodeSet{0, 1, 2}));
  EXPECT_EQ(p.blocks[1], (NodeSet{3, 4, 5}));
}

TEST(Components, IsolatedNodes) {
  MultiGraph g(3);
  EXPECT_EQ(components(g).blocks.size(), 3u);
}

TEST(MinCut, K4) {
  auto c = min_edge_cut(complete_graph(4), {0}, {3});
  EXPECT_EQ(c.size(), 3u);
}

TEST(MinCut, PathSingleEdge) {
  auto c = min_edge_cut(path_graph(3), {0}, {2});
  EXPECT_EQ(c.size(), 1u);
}

TEST(MinCut, RejectsOverlappingSides) {
  EXPECT_THROW(min_edge_cut(path_graph(3), {0, 1}, {1}), std::invalid_argument);
}

TEST(MinCut, MatchesBruteForceOnRandomGraphs) {
  Rng rng(11);
  for (int it = 0; it < 150; ++it) {
    int n = uniform(rng, 2, 7);
    MultiGraph g = random_connected(rng, n, uniform(rng, 0, 6), true);
    NodeSet X{0}, Y{n - 1};
    if (n > 3 && it % 2) X.push_back(1);
    auto cut = min_edge_cut(g, X, Y);
    EXPECT_EQ(static_cast<int>(cut.size()), brute_min_cut(g, X, Y));
    std::vector<char> rm(g.edge_capacity(), 0);
    for (EdgeId e : cut) rm[e] = 1;
    auto r = reachable_mask(g, X, rm);
    for (NodeId y : Y) EXPECT_FALSE(r[y]);
  }
}

namespace {
// x=0, u=1, v=2, y=3; edges xu(0) xv(1) uy(2) vy(3)
MultiGraph diamond() {
  MultiGraph g(4);
  g.add_edge(0, 1), g.add_edge(0, 2), g.add_edge(1, 3), g.add_edge(2, 3);
  return g;
}
}  // namespace

TEST(MinimalCuts, Diamond) {
  auto cuts = enumerate_minimal_cuts(diamond(), 0, 3, 2);
  std::set<EdgeSet> got(cuts.begin(), cuts.end());
  std::set<EdgeSet> want{{0, 1}, {2, 3}, {0, 3}, {1, 2}};
  EXPECT_EQ(got, want);
}

TEST(MinimalCuts, BudgetZeroOnPath) {
  EXPECT_TRUE(enumerate_minimal_cuts(path_graph(3), 0, 2, 0).empty());
}

TEST(MinimalCuts, MatchBruteForce) {
  Rng rng(5);
  for (int it = 0; it < 120; ++it) {
    int n = uniform(rng, 2, 7);
    MultiGraph g = random_connected(rng, n, uniform(rng, 0, 5), it % 3 == 0);
    int l = uniform(rng, 0, 3);
    auto cuts = enumerate_minimal_cuts(g, 0, n - 1, l);
    std::set<EdgeSet> got(cuts.begin(), cuts.end());
    EXPECT_EQ(got.size(), cuts.size());
    EXPECT_EQ(got, brute_minimal_cuts(g, 0, n - 1, l));
  }
}

TEST(GoodSeparation, TwoTrianglesByABridge) {
  MultiGraph g(6);
  g.add_edge(0, 1), g.add_edge(1, 2), g.add_edge(2, 0);
  g.add_edge(3, 4), g.add_edge(4, 5), g.add_edge(5, 3);
  g.add_edge(2, 3);
  auto s = find_good_separation(g, 2, 1);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->first, (NodeSet{0, 1, 2}));
  EXPECT_EQ(s->second, (NodeSet{3, 4, 5}));
  EXPECT_EQ(s->crossing, (EdgeSet{6}));
  EXPECT_FALSE(find_good_separation(g, 3, 1));
}

TEST(GoodSeparation, NoneInK5) { EXPECT_FALSE(find_good_separation(complete_graph(5), 1, 3)); }

TEST(GoodSeparation, CrossingSetIsExactlyTheCut) {
  Rng rng(9);
  for (int it = 0; it < 80; ++it) {
    MultiGraph g = random_connected(rng, uniform(rng, 4, 8), uniform(rng, 0, 4));
    int a = uniform(rng, 0, 2), b = uniform(rng, 1, 3);
    auto s = find_good_separation(g, a, b);
    if (!s) continue;
    EXPECT_GT(static_cast<int>(s->first.size()), a);
    EXPECT_GT(static_cast<int>(s->second.size()), a);
    EXPECT_LE(static_cast<int>(s->crossing.size()), b);
    auto side = detail::as_mask(g.node_capacity(), s->first);
    EXPECT_EQ(boundary_edges(g, side), s->crossing);
    EXPECT_TRUE(is_connected(induced_subgraph(g, s->first)));
    EXPECT_TRUE(is_connected(induced_subgraph(g, s->second)));
  }
}

TEST(BorderedSubgraph, TwoK5sJoinedByAnEdge) {
  MultiGraph g(10);
  for (int base : {0, 5})
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) g.add_edge(base + i, base + j);
  g.add_edge(4, 5);
  auto b = extract_bordered_subgraph(g, 1, 2);
  EXPECT_EQ(b.nodes.size(), 5u);
  EXPECT_EQ(b.border.size(), 1u);
  EXPECT_FALSE(find_good_separation(induced_subgraph(g, b.nodes), 1, 1));
}

TEST(BorderedSubgraph, LongPath) {
  MultiGraph g = path_graph(30);
  auto b = extract_bordered_subgraph(g, 2, 2);
  EXPECT_LE(static_cast<int>(b.nodes.size()), 2 * 2 + 1);
  EXPECT_LE(b.border.size(), 2u);
  EXPECT_FALSE(find_good_separation(induced_subgraph(g, b.nodes), 2, 1));
}

TEST(BorderedSubgraph, BorderStaysWithinBound) {
  Rng rng(21);
  for (int it = 0; it < 40; ++it) {
    MultiGraph g = random_connected(rng, uniform(rng, 6, 14), uniform(rng, 0, 3));
    int b = 2 * uniform(rng, 1, 2);
    auto r = extract_bordered_subgraph(g, 1, b);
    EXPECT_LE(static_cast<int>(r.border.size()), b);
    EXPECT_TRUE(is_connected(induced_subgraph(g, r.nodes)));
  }
}

TEST(Contract, SizesFollowComponentsOfF) {
  Rng rng(3);
  for (int it = 0; it < 60; ++it) {
    MultiGraph g = random_connected(rng, uniform(rng, 2, 9), uniform(rng, 0, 6), true);
    EdgeSet F;
    for (EdgeId e : g.edges())
      if (uniform(rng, 0, 2) == 0) F.push_back(e);
    MultiGraph fg(g.node_capacity());
    for (EdgeId e : F) fg.add_edge(g.endpoints(e).u, g.endpoints(e).v);
    auto r = contract_edges(g, F);
    EXPECT_EQ(r.graph.node_count(), static_cast<int>(components(fg).blocks.size()));
    EXPECT_EQ(r.graph.edge_count(), g.edge_count() - static_cast<int>(F.size()));
  }
}
