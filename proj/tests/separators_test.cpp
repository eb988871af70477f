#include <gtest/gtest.h>

#include "smc/oracle.hpp"
#include "smc/separators.hpp"
#include "support.hpp"

using namespace smc;
using namespace smc::testing;

namespace {
MultiGraph diamond() {
  MultiGraph g(4);  // x=0 u=1 v=2 y=3
  g.add_edge(0, 1), g.add_edge(0, 2), g.add_edge(1, 3), g.add_edge(2, 3);
  return g;
}
}  // namespace

TEST(ReachableSet, PathCutInTheMiddle) {
  auto r = reachable_set(path_graph(4), {0}, {1});
  EXPECT_EQ(r.reached, (NodeSet{0, 1}));
  EXPECT_EQ(r.unreached, (NodeSet{2, 3}));
}

TEST(ImportantSeparators, Diamond) {
  EXPECT_EQ(enumerate_important_separators(diamond(), {0}, {3}, 2), (std::vector<EdgeSet>{{2, 3}}));
  EXPECT_TRUE(enumerate_important_separators(diamond(), {0}, {3}, 1).empty());
}

TEST(ImportantSeparators, DisconnectedGivesEmptySet) {
  MultiGraph g(3);
  g.add_edge(0, 1);
  EXPECT_EQ(enumerate_important_separators(g, {0}, {2}, 2), (std::vector<EdgeSet>{{}}));
}

TEST(ImportantSeparators, PathKeepsTheEdgeNextToY) {
  EXPECT_EQ(enumerate_important_separators(path_graph(4), {0}, {3}, 1), (std::vector<EdgeSet>{{2}}));
}

TEST(ImportantSeparators, MatchExhaustiveAndBound) {
  Rng rng(17);
  for (int it = 0; it < 120; ++it) {
    int n = uniform(rng, 2, 7);
    MultiGraph g = random_connected(rng, n, uniform(rng, 0, 5), it % 4 == 0);
    int l = uniform(rng, 0, 3);
    NodeSet X{0}, Y{n - 1};
    if (n >= 4 && it % 3 == 0) Y.push_back(n - 2);
    auto fast = enumerate_important_separators(g, X, Y, l);
    auto slow = oracle::important_separators_exhaustive(g, X, Y, l);
    EXPECT_EQ(fast, slow);
    EXPECT_LE(fast.size(), static_cast<std::size_t>(1) << (2 * l));
  }
}

TEST(ComputeZ, PathAndBruteUnion) {
  EXPECT_EQ(compute_Z(path_graph(4), {0, 3}, 1), (EdgeSet{0, 1, 2}));
  EXPECT_TRUE(compute_Z(path_graph(4), {0}, 2).empty());
  Rng rng(19);
  for (int it = 0; it < 60; ++it) {
    int n = uniform(rng, 3, 7);
    MultiGraph g = random_connected(rng, n, uniform(rng, 0, 4));
    NodeSet Y = random_subset(rng, n, uniform(rng, 2, 3));
    int k = uniform(rng, 1, 2);
    std::set<EdgeId> want;
    for (std::size_t i = 0; i < Y.size(); ++i)
      for (std::size_t j = i + 1; j < Y.size(); ++j)
        for (const auto& c : brute_minimal_cuts(g, Y[i], Y[j], k)) want.insert(c.begin(), c.end());
    EXPECT_EQ(compute_Z(g, Y, k), EdgeSet(want.begin(), want.end()));
  }
}

TEST(Decompose, StarSplitsPerLeaf) {
  MultiGraph g(4);
  g.add_edge(0, 1), g.add_edge(0, 2), g.add_edge(0, 3);
  auto recs = decompose_closest_cut(g, {0}, {0, 1, 2});
  ASSERT_EQ(recs.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(recs[i].source, i + 1);
    EXPECT_EQ(recs[i].edges, (EdgeSet{i}));
    EXPECT_EQ(recs[i].reachable, (NodeSet{i + 1}));
  }
}

TEST(Decompose, RejectsNonMinimalCut) {
  EXPECT_THROW(decompose_closest_cut(path_graph(4), {0}, {1, 2}), PreconditionError);
}

TEST(Decompose, PartsAreDisjointImportantSeparators) {
  Rng rng(23);
  int checked = 0;
  for (int it = 0; it < 30; ++it) {
    int n = uniform(rng, 3, 7);
    MultiGraph g = random_connected(rng, n, uniform(rng, 0, 3));
    NodeSet Y{0};
    for (const auto& S : oracle::enumerate_closest_cuts(g, Y, 3)) {
      auto recs = decompose_closest_cut(g, Y, S);
      EdgeSet all;
      auto rs = reachable_set(g, Y, S);
      NodeSet unreached;
      for (const auto& r : recs) {
        EXPECT_TRUE(oracle::check_important(g, {r.source}, Y, r.edges));
        all.insert(all.end(), r.edges.begin(), r.edges.end());
        unreached.insert(unreached.end(), r.reachable.begin(), r.reachable.end());
      }
      std::sort(all.begin(), all.end());
      std::sort(unreached.begin(), unreached.end());
      EXPECT_EQ(std::adjacent_find(all.begin(), all.end()), all.end());
      EXPECT_EQ(all, S);
      EXPECT_EQ(unreached, rs.unreached);
      ++checked;
    }
  }
  EXPECT_GT(checked, 50);
}
