#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowforge/random.hpp"

namespace flowforge {

using Vertex = std::size_t;
using EdgeId = std::size_t;

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

/// An undirected edge. The stored (u, v) order is the edge's implicit
/// direction wherever a direction is needed (flows, gradients).
struct Edge {
  Vertex u;
  Vertex v;
  double w;

  Vertex other(Vertex x) const { return x == u ? v : u; }
};

struct Incidence {
  Vertex to;
  EdgeId edge;
};

/// Undirected graph with positive edge weights and dense edge ids.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(std::size_t n) : adjacency_(n) {}

  std::size_t n() const { return adjacency_.size(); }
  std::size_t m() const { return edges_.size(); }

  EdgeId add_edge(Vertex u, Vertex v, double w = 1.0) {
    if (u >= n() || v >= n()) throw std::out_of_range("add_edge: vertex out of range");
    if (u == v) throw std::invalid_argument("add_edge: self-loop at vertex " + std::to_string(u));
    if (!(w > 0.0) || w == std::numeric_limits<double>::infinity()) {
      throw std::invalid_argument("add_edge: weight must be positive and finite");
    }
    const EdgeId id = edges_.size();
    edges_.push_back({u, v, w});
    adjacency_[u].push_back({v, id});
    adjacency_[v].push_back({u, id});
    return id;
  }

  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Incidence> neighbors(Vertex v) const { return adjacency_.at(v); }

  void set_weight(EdgeId e, double w) {
    if (!(w > 0.0)) throw std::invalid_argument("set_weight: weight must be positive");
    edges_.at(e).w = w;
  }

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    if (a.n() != b.n() || a.m() != b.m()) return false;
    for (EdgeId e = 0; e < a.m(); ++e) {
      const Edge& x = a.edges_[e];
      const Edge& y = b.edges_[e];
      if (x.u != y.u || x.v != y.v || x.w != y.w) return false;
    }
    return true;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

/// Edge-id subset of a WeightedGraph, sorted ascending.
struct SpanningTree {
  std::vector<EdgeId> edges;
};

/// Rooted tree stored as child lists; the root is vertex 0.
struct RootedTreeArray {
  std::vector<std::vector<Vertex>> children;

  std::size_t n() const { return children.size(); }

  /// Parent of every vertex (kNoVertex for the root). Throws when the child
  /// lists do not describe a tree rooted at 0.
  std::vector<Vertex> parents() const {
    const std::size_t count = n();
    std::vector<Vertex> parent(count, kNoVertex);
    std::size_t links = 0;
    for (Vertex p = 0; p < count; ++p) {
      for (Vertex c : children[p]) {
        if (c >= count) throw std::invalid_argument("tree: child id out of range");
        if (c == 0) throw std::invalid_argument("tree: root listed as a child");
        if (parent[c] != kNoVertex) throw std::invalid_argument("tree: vertex has two parents");
        parent[c] = p;
        ++links;
      }
    }
    if (count > 0 && links != count - 1) throw std::invalid_argument("tree: wrong number of links");
    // Every vertex must reach the root.
    std::vector<char> seen(count, 0);
    std::vector<Vertex> stack;
    if (count > 0) stack.push_back(0);
    std::size_t reached = 0;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      if (seen[v]) throw std::invalid_argument("tree: cycle");
      seen[v] = 1;
      ++reached;
      for (Vertex c : children[v]) stack.push_back(c);
    }
    if (reached != count) throw std::invalid_argument("tree: not connected to the root");
    return parent;
  }

  friend bool operator==(const RootedTreeArray&, const RootedTreeArray&) = default;
};

/// Union-find with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1), components_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --components_;
    return true;
  }

  std::size_t components() const { return components_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t components_;
};

inline bool is_connected(const WeightedGraph& g) {
  if (g.n() <= 1) return true;
  DisjointSets sets(g.n());
  for (const Edge& e : g.edges()) sets.unite(e.u, e.v);
  return sets.components() == 1;
}

enum class WeightMode { kUnit, kUniform1To10 };

struct ErdosRenyiSample {
  WeightedGraph graph;
  std::size_t resamples = 0;
};

inline constexpr std::size_t kMaxErdosRenyiResamples = 1000;

/// G(n, p), resampled with successive sub-seeds until connected.
inline ErdosRenyiSample erdos_renyi(std::size_t n, double p, std::uint64_t seed,
                                    WeightMode weights = WeightMode::kUnit) {
  if (n < 1) throw std::invalid_argument("erdos_renyi: n must be at least 1");
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("erdos_renyi: p must be in (0, 1]");
  for (std::size_t attempt = 0; attempt < kMaxErdosRenyiResamples; ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    WeightedGraph g(n);
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (!rng.bernoulli(p)) continue;
        const double w = weights == WeightMode::kUnit ? 1.0 : rng.uniform(1.0, 10.0);
        g.add_edge(u, v, w);
      }
    }
    if (is_connected(g)) return {std::move(g), attempt};
  }
  throw std::invalid_argument("erdos_renyi: no connected sample in 1000 attempts; p too small for n");
}

/// Random recursive tree: vertex k picks its parent uniformly from 0..k-1.
inline RootedTreeArray random_rooted_tree(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_rooted_tree: n must be at least 1");
  Rng rng(seed);
  RootedTreeArray tree;
  tree.children.resize(n);
  for (Vertex k = 1; k < n; ++k) tree.children[rng.index(k)].push_back(k);
  return tree;
}

}  // namespace flowforge
