#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "flowforge/graph.hpp"

namespace flowforge {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct ShortestPaths {
  std::vector<double> dist;      // kInfinity when unreached
  std::vector<EdgeId> pred;      // edge used to reach the vertex, kNoEdge at the source
  std::vector<Vertex> pred_vertex;
};

/// Dijkstra over an implicit digraph. `for_each_arc(v, relax)` must call
/// `relax(to, length, edge_id)` once per arc leaving v; lengths must be
/// nonnegative. Among equal tentative distances the smaller vertex id is
/// settled first, and a predecessor is only replaced by a strictly shorter
/// path, so the result is deterministic.
///
/// Vertices farther than `cutoff` are left unsettled; every vertex whose
/// true distance is at most `cutoff` is settled exactly.
template <class ForEachArc>
ShortestPaths dijkstra_with(std::size_t n, Vertex src, ForEachArc&& for_each_arc,
                            double cutoff = kInfinity) {
  ShortestPaths sp{std::vector<double>(n, kInfinity), std::vector<EdgeId>(n, kNoEdge),
                   std::vector<Vertex>(n, kNoVertex)};
  std::vector<char> done(n, 0);
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  sp.dist.at(src) = 0.0;
  heap.push({0.0, src});
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (done[v] || d > sp.dist[v]) continue;
    if (d > cutoff) break;
    done[v] = 1;
    for_each_arc(v, [&](Vertex to, double length, EdgeId edge) {
      const double nd = d + length;
      if (!done[to] && nd < sp.dist[to]) {
        sp.dist[to] = nd;
        sp.pred[to] = edge;
        sp.pred_vertex[to] = v;
        heap.push({nd, to});
      }
    });
  }
  return sp;
}

inline ShortestPaths dijkstra(const WeightedGraph& g, Vertex src) {
  if (src >= g.n()) throw std::out_of_range("dijkstra: source out of range");
  return dijkstra_with(g.n(), src, [&](Vertex v, auto&& relax) {
    for (const Incidence& inc : g.neighbors(v)) relax(inc.to, g.edge(inc.edge).w, inc.edge);
  });
}

/// Vertices on the shortest path from the source to `target`, source first.
inline std::vector<Vertex> path_to(const ShortestPaths& sp, Vertex target) {
  if (sp.dist.at(target) == kInfinity) throw std::invalid_argument("path_to: target unreachable");
  std::vector<Vertex> path;
  for (Vertex v = target; v != kNoVertex; v = sp.pred_vertex[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

/// max_v d(x0, v).
inline double graph_radius(const WeightedGraph& g, Vertex x0) {
  const ShortestPaths sp = dijkstra(g, x0);
  double r = 0.0;
  for (double d : sp.dist) r = std::max(r, d);
  return r;
}

}  // namespace flowforge
