#pragma once

#include <bit>
#include <stdexcept>
#include <vector>

#include "flowforge/graph.hpp"

namespace flowforge {

inline bool is_spanning_tree(const WeightedGraph& g, std::span<const EdgeId> tree) {
  if (g.n() == 0) return tree.empty();
  if (tree.size() != g.n() - 1) return false;
  DisjointSets sets(g.n());
  for (EdgeId e : tree) {
    if (e >= g.m()) return false;
    if (!sets.unite(g.edge(e).u, g.edge(e).v)) return false;
  }
  return sets.components() == 1;
}

inline bool is_spanning_tree(const WeightedGraph& g, const SpanningTree& t) {
  return is_spanning_tree(g, std::span<const EdgeId>(t.edges));
}

/// Weighted distances in a spanning tree, answered through binary-lifting LCA.
class TreeDistance {
 public:
  TreeDistance(const WeightedGraph& g, std::span<const EdgeId> tree) {
    if (!is_spanning_tree(g, tree)) throw std::invalid_argument("tree does not span the graph");
    const std::size_t n = g.n();
    std::vector<std::vector<Incidence>> adj(n);
    for (EdgeId e : tree) {
      adj[g.edge(e).u].push_back({g.edge(e).v, e});
      adj[g.edge(e).v].push_back({g.edge(e).u, e});
    }
    levels_ = std::max<std::size_t>(1, std::bit_width(n));
    up_.assign(levels_, std::vector<Vertex>(n, 0));
    depth_.assign(n, 0);
    root_dist_.assign(n, 0.0);
    if (n == 0) return;
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (const Incidence& inc : adj[v]) {
        if (seen[inc.to]) continue;
        seen[inc.to] = 1;
        up_[0][inc.to] = v;
        depth_[inc.to] = depth_[v] + 1;
        root_dist_[inc.to] = root_dist_[v] + g.edge(inc.edge).w;
        stack.push_back(inc.to);
      }
    }
    for (std::size_t k = 1; k < levels_; ++k) {
      for (Vertex v = 0; v < n; ++v) up_[k][v] = up_[k - 1][up_[k - 1][v]];
    }
  }

  Vertex lca(Vertex a, Vertex b) const {
    if (depth_[a] < depth_[b]) std::swap(a, b);
    std::size_t diff = depth_[a] - depth_[b];
    for (std::size_t k = 0; diff != 0; ++k, diff >>= 1) {
      if (diff & 1U) a = up_[k][a];
    }
    if (a == b) return a;
    for (std::size_t k = levels_; k-- > 0;) {
      if (up_[k][a] != up_[k][b]) {
        a = up_[k][a];
        b = up_[k][b];
      }
    }
    return up_[0][a];
  }

  double distance(Vertex a, Vertex b) const {
    return root_dist_[a] + root_dist_[b] - 2.0 * root_dist_[lca(a, b)];
  }

 private:
  std::size_t levels_ = 1;
  std::vector<std::vector<Vertex>> up_;
  std::vector<std::size_t> depth_;
  std::vector<double> root_dist_;
};

/// Total stretch: sum over graph edges of d_T(u, v) / w(u, v).
inline double stretch(const WeightedGraph& g, const SpanningTree& t) {
  const TreeDistance dist(g, t.edges);
  double total = 0.0;
  for (const Edge& e : g.edges()) total += dist.distance(e.u, e.v) / e.w;
  return total;
}

}  // namespace flowforge
