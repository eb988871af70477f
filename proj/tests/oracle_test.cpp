#include <gtest/gtest.h>

#include "smc/format.hpp"
#include "smc/oracle.hpp"
#include "support.hpp"

using namespace smc;
using namespace smc::testing;

namespace {
MultiGraph star(int leaves) {
  MultiGraph g(leaves + 1);
  for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

long binom(int n, int r) {
  long c = 1;
  for (int i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return c;
}

// y=0, s1..s3 = 1..3, v1=4, v2=5
MultiGraph counterexample() {
  MultiGraph g(6);
  g.add_edge(0, 1), g.add_edge(0, 2), g.add_edge(0, 3);
  g.add_edge(1, 4), g.add_edge(2, 4), g.add_edge(2, 5), g.add_edge(3, 5);
  return g;
}
}  // namespace

TEST(BruteForce, PathTakesFirstEdge) {
  Instance inst = parse_instance("variant edge\nnodes 3\nedge 1 2\nedge 2 3\nterms 1 3\nk 1\n");
  auto s = oracle::brute_force_solve(inst);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->members, (std::vector<int>{0}));
}

TEST(BruteForce, TriangleNeedsTwo) {
  Instance inst;
  inst.graph = cycle_graph(3);
  inst.sets = {{0, 1}};
  inst.k = 1;
  EXPECT_FALSE(oracle::brute_force_solve(inst));
  inst.k = 2;
  auto s = oracle::brute_force_solve(inst);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->members, (std::vector<int>{0, 1}));
}

TEST(BruteForce, NodeVariantMayDeleteTerminals) {
  Instance inst;
  inst.graph = complete_graph(3);
  inst.variant = Variant::node;
  inst.sets = {{0, 1}};
  inst.k = 1;
  auto s = oracle::brute_force_solve(inst);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->members, (std::vector<int>{0}));
  inst.variant = Variant::rnode;
  EXPECT_FALSE(oracle::brute_force_solve(inst));
}

TEST(BruteForce, OptimalSizeMatchesPlainEnumeration) {
  Rng rng(2);
  for (int it = 0; it < 200; ++it) {
    auto var = static_cast<Variant>(it % 3);
    Instance inst = random_instance(rng, var, uniform(rng, 3, 7), uniform(rng, 0, 4), uniform(rng, 1, 3), 3,
                                    uniform(rng, 0, 3));
    auto s = oracle::brute_force_solve(inst);
    int want = brute_optimum(inst);
    EXPECT_EQ(s ? s->size() : -1, want);
    if (s) EXPECT_TRUE(naive_cuts(inst, *s));
  }
}

TEST(ClosestCuts, StarCountsAreBinomial) {
  for (int n = 1; n <= 6; ++n) {
    auto cuts = oracle::enumerate_closest_cuts(star(n), {0}, n);
    std::vector<long> by_size(n + 1, 0);
    for (const auto& c : cuts) by_size[c.size()]++;
    for (int l = 0; l <= n; ++l) EXPECT_EQ(by_size[l], binom(n, l)) << n << " " << l;
  }
}

TEST(ClosestCuts, SingleEdge) {
  MultiGraph g(2);
  g.add_edge(0, 1);
  auto cuts = oracle::enumerate_closest_cuts(g, {0}, 1);
  ASSERT_EQ(cuts.size(), 2u);
  EXPECT_TRUE(cuts[0].empty());
  EXPECT_EQ(cuts[1], (EdgeSet{0}));
}

TEST(ClosestCuts, EnumerationAgreesWithChecker) {
  Rng rng(3);
  for (int it = 0; it < 40; ++it) {
    MultiGraph g = random_connected(rng, uniform(rng, 2, 6), uniform(rng, 0, 3));
    NodeSet Y{0};
    auto cuts = oracle::enumerate_closest_cuts(g, Y, 2);
    std::set<EdgeSet> in(cuts.begin(), cuts.end());
    EdgeSet pool = g.proper_edges();
    detail::for_each_small_subset(static_cast<int>(pool.size()), 2, [&](const std::vector<int>& idx) {
      EdgeSet S;
      for (int i : idx) S.push_back(pool[i]);
      EXPECT_EQ(in.count(S) == 1, oracle::check_closest(g, Y, S));
      return false;
    });
  }
}

TEST(Important, Diamond) {
  MultiGraph g(4);  // x=0 u=1 v=2 y=3
  g.add_edge(0, 1), g.add_edge(0, 2), g.add_edge(1, 3), g.add_edge(2, 3);
  EXPECT_TRUE(oracle::check_important(g, {0}, {3}, {2, 3}));
  EXPECT_FALSE(oracle::check_important(g, {0}, {3}, {0, 1}));
  EXPECT_FALSE(oracle::check_important(g, {0}, {3}, {0, 3}));
  EXPECT_FALSE(oracle::check_important(g, {0}, {3}, {2}));
  auto all = oracle::important_separators_exhaustive(g, {0}, {3}, 2);
  EXPECT_EQ(all, (std::vector<EdgeSet>{{2, 3}}));
}

TEST(NodeCounterexample, ClosestButNotADisjointUnion) {
  MultiGraph g = counterexample();
  EXPECT_TRUE(oracle::check_closest_node(g, {0}, {1, 2, 3}));
  EXPECT_TRUE(oracle::check_important_node(g, {4}, {0}, {1, 2}));
  EXPECT_TRUE(oracle::check_important_node(g, {5}, {0}, {2, 3}));
  EXPECT_FALSE(oracle::check_important_node(g, {4}, {0}, {1, 2, 3}));
}
