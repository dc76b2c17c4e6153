#include <gtest/gtest.h>

#include <cmath>

#include "flowforge/hld.hpp"
#include "oracles.hpp"

using namespace flowforge;

namespace {

RootedTreeArray path_tree(std::size_t n) {
  RootedTreeArray t;
  t.children.resize(n);
  for (Vertex v = 0; v + 1 < n; ++v) t.children[v].push_back(v + 1);
  return t;
}

RootedTreeArray star_tree(std::size_t leaves) {
  RootedTreeArray t;
  t.children.resize(leaves + 1);
  for (Vertex v = 1; v <= leaves; ++v) t.children[0].push_back(v);
  return t;
}

// Complete binary tree with heap numbering: children of v are 2v+1, 2v+2.
RootedTreeArray binary_tree(std::size_t n) {
  RootedTreeArray t;
  t.children.resize(n);
  for (Vertex v = 1; v < n; ++v) t.children[(v - 1) / 2].push_back(v);
  return t;
}

}  // namespace

TEST(SubtreeSizes, Fixtures) {
  EXPECT_EQ(subtree_sizes(path_tree(1)), std::vector<std::size_t>{1});
  EXPECT_EQ(subtree_sizes(path_tree(4)), (std::vector<std::size_t>{4, 3, 2, 1}));
}

TEST(SubtreeSizes, MatchRecursiveDefinition) {
  const RootedTreeArray t = random_rooted_tree(200, 11);
  const auto size = subtree_sizes(t);
  EXPECT_EQ(size[0], 200u);
  for (Vertex v = 0; v < 200; ++v) {
    std::size_t sum = 1;
    for (Vertex c : t.children[v]) sum += size[c];
    EXPECT_EQ(size[v], sum);
  }
}

TEST(Hld, PathIsOneChain) {
  const HeavyChains c = heavy_light_decomposition(path_tree(6));
  ASSERT_EQ(c.chains.size(), 1u);
  EXPECT_EQ(c.chains[0], (std::vector<Vertex>{0, 1, 2, 3, 4, 5}));
}

TEST(Hld, StarTieBreak) {
  const HeavyChains c = heavy_light_decomposition(star_tree(3));
  ASSERT_EQ(c.chains.size(), 3u);
  EXPECT_EQ(c.chains[0], (std::vector<Vertex>{0, 1}));
  EXPECT_EQ(c.chain_of[2] == c.chain_of[3], false);
}

TEST(Hld, CompleteBinaryTree) {
  const RootedTreeArray t = binary_tree(7);
  const HeavyChains c = heavy_light_decomposition(t);
  ASSERT_EQ(c.chains.size(), 4u);
  EXPECT_EQ(c.chains[0], (std::vector<Vertex>{0, 1, 3}));
  // The other chains are {2, 5}, {4} and {6}.
  EXPECT_EQ(c.chain_of[2], c.chain_of[5]);
  EXPECT_NE(c.chain_of[4], c.chain_of[6]);
  const auto stats = chain_intersection_stats(t, c);
  EXPECT_EQ(stats.per_vertex, (std::vector<std::size_t>{1, 1, 2, 1, 2, 2, 3}));
  EXPECT_DOUBLE_EQ(stats.average, 12.0 / 7.0);
}

TEST(ChainIntersections, PathAndStar) {
  const RootedTreeArray p = path_tree(5);
  const auto ps = chain_intersection_stats(p, heavy_light_decomposition(p));
  EXPECT_EQ(ps.per_vertex, std::vector<std::size_t>(5, 1));
  EXPECT_DOUBLE_EQ(ps.average, 1.0);

  const RootedTreeArray s = star_tree(3);
  const auto ss = chain_intersection_stats(s, heavy_light_decomposition(s));
  EXPECT_EQ(ss.per_vertex, (std::vector<std::size_t>{1, 1, 2, 2}));
  EXPECT_DOUBLE_EQ(ss.average, 1.5);
}

TEST(ChainIntersections, MatchesAncestorWalk) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const RootedTreeArray t = random_rooted_tree(1 + seed % 300, seed);
    const HeavyChains c = heavy_light_decomposition(t);
    ASSERT_EQ(chain_intersection_stats(t, c).per_vertex, oracle::chain_counts_by_walk(t, c)) << "seed " << seed;
  }
}

TEST(CheckDecomposition, RandomTreesAreClean) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const RootedTreeArray t = random_rooted_tree(2 + seed * 7, seed);
    EXPECT_EQ(check_decomposition(t, heavy_light_decomposition(t)).total(), 0u);
  }
}

TEST(CheckDecomposition, FlagsBrokenDecompositions) {
  const RootedTreeArray t = binary_tree(7);
  HeavyChains c = heavy_light_decomposition(t);
  HeavyChains merged = c;
  merged.chain_of[2] = 0;  // 0 now has two children on its chain
  EXPECT_GT(check_decomposition(t, merged).branching, 0u);
  EXPECT_GT(check_decomposition(t, merged).partition, 0u);
  HeavyChains missing = c;
  missing.chains.pop_back();
  EXPECT_GT(check_decomposition(t, missing).partition, 0u);

  // A caterpillar split into singletons crosses more chains than log2 n + 1.
  const RootedTreeArray p = path_tree(16);
  HeavyChains singletons;
  for (Vertex v = 0; v < 16; ++v) {
    singletons.chains.push_back({v});
    singletons.chain_of.push_back(v);
  }
  EXPECT_EQ(check_decomposition(p, singletons).chain_depth, 1u);
}

TEST(ChainIntersections, LogarithmicOnRandomTrees) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const RootedTreeArray t = random_rooted_tree(1000, seed);
    const auto s = chain_intersection_stats(t, heavy_light_decomposition(t));
    EXPECT_LE(s.average / std::log(1000.0), 1.3);
  }
}
