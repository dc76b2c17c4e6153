#pragma once

#include <cstddef>
#include <vector>

#include "flowforge/graph.hpp"

namespace flowforge {

/// Vertex-disjoint heavy chains; each chain lists vertices from its head
/// downwards and chain 0 starts at the root.
struct HeavyChains {
  std::vector<std::vector<Vertex>> chains;
  std::vector<std::size_t> chain_of;
};

/// size(v) = 1 + sum of the children's sizes.
inline std::vector<std::size_t> subtree_sizes(const RootedTreeArray& tree) {
  const std::size_t n = tree.n();
  std::vector<std::size_t> size(n, 1);
  if (n == 0) return size;
  // Preorder, then accumulate in reverse so children finish before parents.
  std::vector<Vertex> order;
  order.reserve(n);
  std::vector<Vertex> stack{0};
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (Vertex c : tree.children[v]) stack.push_back(c);
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (Vertex c : tree.children[*it]) size[*it] += size[c];
  }
  return size;
}

/// Heavy child of v: the child with the largest subtree, smaller id on ties.
inline Vertex heavy_child(const RootedTreeArray& tree, const std::vector<std::size_t>& size, Vertex v) {
  Vertex best = kNoVertex;
  for (Vertex c : tree.children[v]) {
    if (best == kNoVertex || size[c] > size[best] || (size[c] == size[best] && c < best)) best = c;
  }
  return best;
}

/// Heavy-light decomposition in O(n).
inline HeavyChains heavy_light_decomposition(const RootedTreeArray& tree) {
  const std::size_t n = tree.n();
  HeavyChains out;
  out.chain_of.assign(n, 0);
  if (n == 0) return out;
  const std::vector<std::size_t> size = subtree_sizes(tree);

  std::vector<Vertex> heads{0};
  while (!heads.empty()) {
    const Vertex head = heads.back();
    heads.pop_back();
    const std::size_t id = out.chains.size();
    std::vector<Vertex>& chain = out.chains.emplace_back();
    for (Vertex v = head; v != kNoVertex; v = heavy_child(tree, size, v)) {
      chain.push_back(v);
      out.chain_of[v] = id;
    }
    // Light children of the deepest vertex are explored first.
    for (Vertex v : chain) {
      const Vertex heavy = heavy_child(tree, size, v);
      for (Vertex c : tree.children[v]) {
        if (c != heavy) heads.push_back(c);
      }
    }
  }
  return out;
}

struct ChainIntersectionStats {
  double average = 0.0;
  std::vector<std::size_t> per_vertex;  // chains meeting {u} + ancestors(u)
};

/// For every u, the number of distinct heavy chains meeting the root path of
/// u. Chains are vertex-disjoint paths, so a root path leaves a chain at most
/// once; the count is one plus the number of chain changes along the path.
inline ChainIntersectionStats chain_intersection_stats(const RootedTreeArray& tree, const HeavyChains& chains) {
  const std::size_t n = tree.n();
  ChainIntersectionStats stats;
  stats.per_vertex.assign(n, 0);
  if (n == 0) return stats;
  std::vector<Vertex> stack{0};
  stats.per_vertex[0] = 1;
  std::size_t total = 0;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    total += stats.per_vertex[v];
    for (Vertex c : tree.children[v]) {
      stats.per_vertex[c] = stats.per_vertex[v] + (chains.chain_of[c] != chains.chain_of[v] ? 1 : 0);
      stack.push_back(c);
    }
  }
  stats.average = static_cast<double>(total) / static_cast<double>(n);
  return stats;
}

struct HldViolations {
  std::size_t partition = 0;    // vertex missing, duplicated, or mislabelled
  std::size_t branching = 0;    // vertex with two children on its own chain
  std::size_t chain_depth = 0;  // root-leaf path meeting > floor(log2 n) + 1 chains

  std::size_t total() const { return partition + branching + chain_depth; }
};

/// Checks the structural guarantees of a decomposition against its tree.
inline HldViolations check_decomposition(const RootedTreeArray& tree, const HeavyChains& chains) {
  const std::size_t n = tree.n();
  HldViolations out;
  if (chains.chain_of.size() != n) {
    out.partition = n;
    return out;
  }
  const std::vector<Vertex> parent = tree.parents();
  std::vector<std::size_t> seen(n, 0);
  for (std::size_t id = 0; id < chains.chains.size(); ++id) {
    const auto& chain = chains.chains[id];
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const Vertex v = chain[i];
      if (v >= n) {
        ++out.partition;
        continue;
      }
      ++seen[v];
      if (chains.chain_of[v] != id) ++out.partition;
      if (i > 0 && parent[v] != chain[i - 1]) ++out.partition;
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (seen[v] != 1) ++out.partition;
    std::size_t same = 0;
    for (Vertex c : tree.children[v]) same += chains.chain_of[c] == chains.chain_of[v] ? 1 : 0;
    if (same > 1) ++out.branching;
  }
  std::size_t limit = 1;
  for (std::size_t x = n; x > 1; x >>= 1) ++limit;
  const ChainIntersectionStats stats = chain_intersection_stats(tree, chains);
  for (Vertex v = 0; v < n; ++v) {
    if (tree.children[v].empty() && stats.per_vertex[v] > limit) ++out.chain_depth;
  }
  return out;
}

}  // namespace flowforge
