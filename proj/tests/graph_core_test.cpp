#include <gtest/gtest.h>

#include <cmath>

#include "flowforge/graph.hpp"
#include "flowforge/shortest_path.hpp"
#include "flowforge/stretch.hpp"
#include "oracles.hpp"

using namespace flowforge;

namespace {

WeightedGraph path_graph(std::size_t n, double w = 1.0) {
  WeightedGraph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1, w);
  return g;
}

WeightedGraph cycle_graph(std::size_t n) {
  WeightedGraph g = path_graph(n);
  g.add_edge(n - 1, 0, 1.0);
  return g;
}

}  // namespace

TEST(ErdosRenyi, FullProbabilityGivesCompleteGraph) {
  const auto s = erdos_renyi(5, 1.0, 7);
  EXPECT_EQ(s.graph.n(), 5u);
  EXPECT_EQ(s.graph.m(), 10u);
  EXPECT_EQ(s.resamples, 0u);
}

TEST(ErdosRenyi, SingleVertex) {
  const auto s = erdos_renyi(1, 0.3, 7);
  EXPECT_EQ(s.graph.n(), 1u);
  EXPECT_EQ(s.graph.m(), 0u);
}

TEST(ErdosRenyi, EdgeCountWithinBinomialBand) {
  // Binomial(1225, 0.2): mean 245, sd 14; 6 sd = 84.
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = erdos_renyi(50, 0.2, derive_seed(42, seed));
    EXPECT_NEAR(static_cast<double>(s.graph.m()), 245.0, 84.0) << "seed " << seed;
    EXPECT_TRUE(is_connected(s.graph));
  }
}

TEST(ErdosRenyi, SameSeedSameGraph) {
  EXPECT_EQ(erdos_renyi(60, 0.1, 5, WeightMode::kUniform1To10).graph,
            erdos_renyi(60, 0.1, 5, WeightMode::kUniform1To10).graph);
}

TEST(ErdosRenyi, RejectsBadArguments) {
  EXPECT_THROW(erdos_renyi(0, 0.5, 1), std::invalid_argument);
  EXPECT_THROW(erdos_renyi(5, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(erdos_renyi(5, 1.5, 1), std::invalid_argument);
}

TEST(RandomTree, SmallCases) {
  EXPECT_EQ(random_rooted_tree(1, 3).children, std::vector<std::vector<Vertex>>{{}});
  EXPECT_EQ(random_rooted_tree(2, 3).children, (std::vector<std::vector<Vertex>>{{1}, {}}));
}

TEST(RandomTree, ParentsPrecedeChildren) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const std::vector<Vertex> parent = random_rooted_tree(10, seed).parents();
    for (Vertex k = 1; k < 10; ++k) ASSERT_LT(parent[k], k);
  }
}

TEST(RootedTreeArray, ParentsRejectsMalformedLists) {
  RootedTreeArray two_parents{{{1, 2}, {2}, {}}};
  EXPECT_THROW(two_parents.parents(), std::invalid_argument);
  RootedTreeArray unreachable{{{}, {2}, {1}}};
  EXPECT_THROW(unreachable.parents(), std::invalid_argument);
}

TEST(Dijkstra, WeightedPath) {
  WeightedGraph g(3);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 2.0);
  EXPECT_EQ(dijkstra(g, 0).dist, (std::vector<double>{0.0, 1.0, 3.0}));
  EXPECT_EQ(dijkstra(WeightedGraph(1), 0).dist, std::vector<double>{0.0});
}

TEST(Dijkstra, MatchesBellmanFord) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const std::size_t n = 2 + rng.index(49);
    const auto g = erdos_renyi(n, 0.3, seed, WeightMode::kUniform1To10).graph;
    const Vertex src = rng.index(n);
    const auto sp = dijkstra(g, src);
    const auto ref = oracle::bellman_ford(g, src);
    for (Vertex v = 0; v < n; ++v) ASSERT_NEAR(sp.dist[v], ref[v], 1e-9 * (1.0 + ref[v]));
    // Predecessor edges reproduce the distances.
    for (Vertex v = 0; v < n; ++v) {
      if (v == src) continue;
      const Edge& e = g.edge(sp.pred[v]);
      const Vertex from = e.u == v ? e.v : e.u;
      ASSERT_EQ(from, sp.pred_vertex[v]);
      ASSERT_NEAR(sp.dist[from] + e.w, sp.dist[v], 1e-9 * (1.0 + sp.dist[v]));
    }
  }
}

TEST(GraphRadius, Fixtures) {
  EXPECT_EQ(graph_radius(erdos_renyi(5, 1.0, 1).graph, 3), 1.0);
  EXPECT_EQ(graph_radius(path_graph(5), 0), 4.0);
}

TEST(GraphRadius, EqualsMaxDistance) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = erdos_renyi(30, 0.2, seed, WeightMode::kUniform1To10).graph;
    const auto ref = oracle::bellman_ford(g, 0);
    EXPECT_NEAR(graph_radius(g, 0), *std::max_element(ref.begin(), ref.end()), 1e-9);
  }
}

TEST(Stretch, TreeIsItsOwnTree) {
  const auto g = path_graph(6, 2.5);
  EXPECT_DOUBLE_EQ(stretch(g, SpanningTree{{0, 1, 2, 3, 4}}), 5.0);
}

TEST(Stretch, SmallCycles) {
  EXPECT_DOUBLE_EQ(stretch(cycle_graph(3), SpanningTree{{0, 1}}), 4.0);
  EXPECT_DOUBLE_EQ(stretch(cycle_graph(4), SpanningTree{{0, 1, 2}}), 6.0);
  EXPECT_DOUBLE_EQ(stretch(cycle_graph(9), SpanningTree{{1, 2, 3, 4, 5, 6, 7, 8}}), 2.0 * 9 - 2);
}

TEST(Stretch, RejectsNonSpanning) {
  EXPECT_THROW(stretch(cycle_graph(4), SpanningTree{{0, 1}}), std::invalid_argument);
}

TEST(IsSpanningTree, Triangle) {
  const auto k3 = cycle_graph(3);
  EXPECT_TRUE(is_spanning_tree(k3, SpanningTree{{0, 1}}));
  EXPECT_FALSE(is_spanning_tree(k3, SpanningTree{{0, 1, 2}}));
  EXPECT_FALSE(is_spanning_tree(k3, SpanningTree{{0}}));
  EXPECT_FALSE(is_spanning_tree(k3, SpanningTree{{0, 0}}));
  EXPECT_FALSE(is_spanning_tree(k3, SpanningTree{{0, 7}}));
}

TEST(DisjointSets, CountsComponents) {
  DisjointSets s(5);
  EXPECT_TRUE(s.unite(0, 1));
  EXPECT_FALSE(s.unite(1, 0));
  EXPECT_TRUE(s.unite(3, 4));
  EXPECT_EQ(s.components(), 3u);
  EXPECT_EQ(s.find(4), s.find(3));
}
