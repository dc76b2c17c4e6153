#include <gtest/gtest.h>

#include "flowforge/mcmf.hpp"
#include "oracles.hpp"

using namespace flowforge;

TEST(EdmondsKarp, SingleArc) {
  const DirectedFlowNetwork net{2, {{0, 1, 5}}};
  const MaxFlowResult r = edmonds_karp(net, 0, 1);
  EXPECT_EQ(r.value, 5);
  EXPECT_EQ(r.flow, std::vector<std::int64_t>{5});
}

TEST(EdmondsKarp, TwoDisjointPaths) {
  const DirectedFlowNetwork net{4, {{0, 1, 1}, {1, 3, 1}, {0, 2, 1}, {2, 3, 1}}};
  EXPECT_EQ(edmonds_karp(net, 0, 3).value, 2);
}

TEST(EdmondsKarp, RejectsSameEndpoints) {
  EXPECT_THROW(edmonds_karp(DirectedFlowNetwork{2, {{0, 1, 1}}}, 1, 1), std::invalid_argument);
}

TEST(EdmondsKarp, EqualsEnumeratedMinCut) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    DirectedFlowNetwork net;
    net.n = 2 + rng.index(7);
    const std::size_t arcs = rng.index(3 * net.n);
    for (std::size_t i = 0; i < arcs; ++i) {
      const Vertex a = rng.index(net.n);
      const Vertex b = rng.index(net.n);
      if (a != b) net.arcs.push_back({a, b, rng.uniform_int(0, 9)});
    }
    const MaxFlowResult r = edmonds_karp(net, 0, net.n - 1);
    ASSERT_EQ(r.value, oracle::min_cut_by_enumeration(net, 0, net.n - 1)) << "seed " << seed;
    std::vector<std::int64_t> excess(net.n, 0);
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
      ASSERT_GE(r.flow[i], 0);
      ASSERT_LE(r.flow[i], net.arcs[i].cap);
      excess[net.arcs[i].head] += r.flow[i];
      excess[net.arcs[i].tail] -= r.flow[i];
    }
    for (Vertex v = 1; v + 1 < net.n; ++v) ASSERT_EQ(excess[v], 0);
    ASSERT_EQ(excess[net.n - 1], r.value);
  }
}

TEST(Ssp, TreeHasUniqueFlow) {
  FlowProblem p;
  p.graph = WeightedGraph(4);
  p.add_arc(0, 1, -9, 9, 4);
  p.add_arc(1, 2, -9, 9, -2);
  p.add_arc(3, 1, -9, 9, 1);
  p.dem = {-2, 0, 5, -3};
  const auto r = ssp_min_cost(p);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->flow, (std::vector<std::int64_t>{2, 5, 3}));
  EXPECT_EQ(r->cost, 8 - 10 + 3);
}

TEST(Ssp, CheapRouteSaturatesFirst) {
  FlowProblem p;
  p.graph = WeightedGraph(3);
  p.add_arc(0, 1, 0, 3, 1);
  p.add_arc(1, 2, 0, 3, 1);
  p.add_arc(0, 2, 0, 5, 5);
  p.dem = {-4, 0, 4};
  const auto r = ssp_min_cost(p);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->flow, (std::vector<std::int64_t>{3, 3, 1}));
  EXPECT_EQ(r->cost, 11);
}

TEST(Ssp, NegativeCycleIsSaturated) {
  FlowProblem p;
  p.graph = WeightedGraph(3);
  p.add_arc(0, 1, -2, 2, -1);
  p.add_arc(1, 2, -2, 2, -1);
  p.add_arc(2, 0, -2, 2, -1);
  p.dem = {0, 0, 0};
  EXPECT_EQ(ssp_min_cost(p)->cost, -6);
}

TEST(Ssp, Infeasible) {
  FlowProblem p;
  p.graph = WeightedGraph(2);
  p.add_arc(0, 1, 0, 2, 1);
  p.dem = {-3, 3};
  EXPECT_FALSE(ssp_min_cost(p).has_value());
  EXPECT_FALSE(brute_force_min_cost(p).has_value());
}

TEST(BruteForce, SingleForcedEdge) {
  FlowProblem p;
  p.graph = WeightedGraph(2);
  p.add_arc(0, 1, -3, 3, 7);
  p.dem = {-2, 2};
  const auto r = brute_force_min_cost(p);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->flow, std::vector<std::int64_t>{2});
  EXPECT_EQ(r->cost, 14);
}

TEST(BruteForce, RejectsLargeInstances) {
  FlowProblem p;
  p.graph = WeightedGraph(7);
  p.add_arc(0, 1, 0, 1, 1);
  p.dem.assign(7, 0);
  EXPECT_THROW(brute_force_min_cost(p), std::invalid_argument);
  FlowProblem wide;
  wide.graph = WeightedGraph(2);
  wide.add_arc(0, 1, 0, 7, 1);
  wide.dem = {0, 0};
  EXPECT_THROW(brute_force_min_cost(wide), std::invalid_argument);
}

TEST(Ssp, AgreesWithBruteForce) {
  std::size_t infeasible = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const FlowProblem p = oracle::tiny_flow_problem(seed, true);
    const auto a = ssp_min_cost(p);
    const auto b = brute_force_min_cost(p);
    ASSERT_EQ(a.has_value(), b.has_value()) << "seed " << seed;
    if (!a) {
      ++infeasible;
      continue;
    }
    ASSERT_EQ(a->cost, b->cost) << "seed " << seed;
    ASSERT_EQ(flow_cost(p, a->flow), a->cost);
    ASSERT_EQ(net_inflow(p, a->flow), p.dem);
    for (EdgeId e = 0; e < p.m(); ++e) {
      ASSERT_GE(a->flow[e], p.lo[e]);
      ASSERT_LE(a->flow[e], p.hi[e]);
    }
  }
  EXPECT_GT(infeasible, 0u);
}
