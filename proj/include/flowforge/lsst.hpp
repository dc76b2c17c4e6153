#pragma once

// Low-stretch spanning trees by hierarchical petal decomposition.
//
// A petal is grown around a target t inside a "cone digraph" that reweights
// every edge by shortest-path distances from the decomposition center x0:
//
//   len(u -> v) = w(u, v) + d(x0, u) - d(x0, v)  >= 0.
//
// Walking away from x0 along a shortest path is free; walking towards it costs
// twice the edge weight. Petals are carved off the remainder graph one at a
// time, the stigma X_0 is what is left, and each piece is decomposed again.

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "flowforge/graph.hpp"
#include "flowforge/shortest_path.hpp"

namespace flowforge {

struct ConeArc {
  Vertex from;
  Vertex to;
  double length;
  EdgeId edge;
};

struct ConeDigraph {
  std::size_t n = 0;
  std::vector<ConeArc> arcs;  // arcs 2e and 2e+1 come from edge e
};

struct Petal {
  std::vector<Vertex> vertices;  // sorted
  Vertex center = kNoVertex;
  std::vector<Vertex> path;       // shortest x0 -> t path, x0 first
  std::vector<EdgeId> path_edges; // path_edges[i] joins path[i] and path[i+1]
  std::size_t center_index = 0;   // path[center_index] == center
};

struct PetalDecomposition {
  // Index 0 is the stigma; index j >= 1 is the j-th petal in carving order.
  std::vector<std::vector<Vertex>> Xs;
  std::vector<Vertex> xs;
  std::vector<Vertex> ts;
  std::vector<Vertex> ys;            // ys[0] == kNoVertex
  std::vector<EdgeId> connectors;    // edge (xs[j], ys[j]); connectors[0] == kNoEdge
  bool special_first = false;
  double radius = 0.0;
  std::vector<double> weights;       // edge weights after path halving
};

/// Which distances decide whether a vertex is far enough to seed a petal.
enum class Eligibility { kRemainder, kOriginal };

struct PetalOptions {
  Eligibility eligibility = Eligibility::kRemainder;
};

namespace detail {

// Rounding can leave a true zero as +-1e-16; such arcs must stay free, or a
// ball may keep a vertex while dropping its shortest-path descendants.
inline double cone_length(double w, double du, double dv) {
  const double len = w + du - dv;
  const double scale = std::max({w, std::abs(du), std::abs(dv)});
  return len <= 1e-12 * scale ? 0.0 : len;
}

/// A graph restricted to alive vertices, with overridden edge weights.
struct Remainder {
  const WeightedGraph& graph;
  const std::vector<double>& weights;
  const std::vector<char>& alive;
};

inline ShortestPaths remainder_distances(const Remainder& y, Vertex src) {
  return dijkstra_with(y.graph.n(), src, [&](Vertex v, auto&& relax) {
    for (const Incidence& inc : y.graph.neighbors(v)) {
      if (y.alive[inc.to]) relax(inc.to, y.weights[inc.edge], inc.edge);
    }
  });
}

/// create_petal on the remainder, reusing distances from x0 computed on it.
inline Petal create_petal(const Remainder& y, const ShortestPaths& from_x0, Vertex x0, Vertex t,
                          double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("create_petal: radius must be nonnegative");
  if (t >= y.graph.n() || !y.alive[t]) throw std::invalid_argument("create_petal: target not in graph");
  if (from_x0.dist[t] == kInfinity) throw std::invalid_argument("create_petal: target unreachable");

  Petal petal;
  petal.path = path_to(from_x0, t);
  if (petal.path.front() != x0) throw std::logic_error("create_petal: distances not rooted at x0");
  for (std::size_t i = 1; i < petal.path.size(); ++i) petal.path_edges.push_back(from_x0.pred[petal.path[i]]);

  // Furthest path vertex from t (path distance) still within r of t.
  std::size_t center = petal.path.size() - 1;
  double along = 0.0;
  for (std::size_t i = center; i-- > 0;) {
    along += y.weights[petal.path_edges[i]];
    if (along > r) break;
    center = i;
  }
  petal.center_index = center;
  petal.center = petal.path[center];

  // Arcs on the t -> center segment, directed towards x0, get half the edge weight.
  std::unordered_map<EdgeId, Vertex> halved_from;
  for (std::size_t i = center; i + 1 < petal.path.size(); ++i) {
    halved_from.emplace(petal.path_edges[i], petal.path[i + 1]);
  }

  const double ball = r / 2.0;
  const ShortestPaths cone = dijkstra_with(
      y.graph.n(), t,
      [&](Vertex v, auto&& relax) {
        for (const Incidence& inc : y.graph.neighbors(v)) {
          if (!y.alive[inc.to]) continue;
          const double w = y.weights[inc.edge];
          const auto h = halved_from.find(inc.edge);
          const double len = (h != halved_from.end() && h->second == v)
                                 ? w / 2.0
                                 : cone_length(w, from_x0.dist[v], from_x0.dist[inc.to]);
          relax(inc.to, len, inc.edge);
        }
      },
      ball);
  for (Vertex v = 0; v < y.graph.n(); ++v) {
    if (y.alive[v] && cone.dist[v] <= ball) petal.vertices.push_back(v);
  }
  return petal;
}

inline PetalDecomposition petal_decomposition(const WeightedGraph& g, std::vector<double> weights,
                                              Vertex x0, Vertex t, const PetalOptions& options) {
  const std::size_t n = g.n();
  if (x0 >= n) throw std::invalid_argument("petal_decomposition: center " + std::to_string(x0) + " not in graph");
  if (t >= n) throw std::invalid_argument("petal_decomposition: target " + std::to_string(t) + " not in graph");

  PetalDecomposition out;
  out.weights = std::move(weights);
  std::vector<char> alive(n, 1);
  const Remainder y{g, out.weights, alive};

  const ShortestPaths initial = remainder_distances(y, x0);
  for (double d : initial.dist) {
    if (d == kInfinity) throw std::invalid_argument("petal_decomposition: graph not connected");
    out.radius = std::max(out.radius, d);
  }
  const double r = out.radius;

  out.Xs.emplace_back();
  out.xs.push_back(x0);
  out.ts.push_back(t);
  out.ys.push_back(kNoVertex);
  out.connectors.push_back(kNoEdge);
  if (r == 0.0) {
    // Zero radius: the center is the whole graph, nothing to carve.
    out.Xs[0].push_back(x0);
    return out;
  }

  auto carve = [&](Vertex target, const ShortestPaths& from_x0) {
    Petal petal = create_petal(y, from_x0, x0, target, r / 8.0);
    if (petal.center_index == 0) throw std::logic_error("petal_decomposition: petal swallowed its center x0");
    const Vertex toward = petal.path[petal.center_index - 1];
    for (Vertex v : petal.vertices) alive[v] = 0;
    if (alive[toward] == 0) throw std::logic_error("petal_decomposition: y_j inside its own petal");
    for (std::size_t i = petal.center_index; i < petal.path_edges.size(); ++i) {
      out.weights[petal.path_edges[i]] /= 2.0;
    }
    out.Xs.push_back(std::move(petal.vertices));
    out.xs.push_back(petal.center);
    out.ts.push_back(target);
    out.ys.push_back(toward);
    out.connectors.push_back(petal.path_edges[petal.center_index - 1]);
  };

  if (t != x0 && initial.dist[t] > 5.0 * r / 8.0) {
    carve(t, initial);
    out.special_first = true;
  }
  while (true) {
    const ShortestPaths from_x0 = remainder_distances(y, x0);
    const std::vector<double>& eligible_dist =
        options.eligibility == Eligibility::kRemainder ? from_x0.dist : initial.dist;
    Vertex target = kNoVertex;
    for (Vertex v = 0; v < n; ++v) {
      if (alive[v] && eligible_dist[v] >= 3.0 * r / 4.0) {
        target = v;
        break;
      }
    }
    if (target == kNoVertex) break;
    if (from_x0.dist[target] == kInfinity) throw std::logic_error("petal_decomposition: remainder disconnected");
    carve(target, from_x0);
  }

  for (Vertex v = 0; v < n; ++v) {
    if (alive[v]) out.Xs[0].push_back(v);
  }
  if (!alive[t]) out.ts[0] = x0;
  return out;
}

inline std::vector<double> edge_weights(const WeightedGraph& g) {
  std::vector<double> w(g.m());
  for (EdgeId e = 0; e < g.m(); ++e) w[e] = g.edge(e).w;
  return w;
}

class HierarchicalBuilder {
 public:
  HierarchicalBuilder(std::size_t depth_cap, const PetalOptions& options)
      : depth_cap_(depth_cap), options_(options) {}

  void run(const WeightedGraph& g, const std::vector<EdgeId>& to_original, Vertex x0, Vertex t,
           std::size_t depth, std::vector<EdgeId>& out) {
    if (g.n() <= 1) return;
    if (depth > depth_cap_) {
      throw std::logic_error("hierarchical_petal_decomposition: recursion depth cap " +
                             std::to_string(depth_cap_) + " exceeded");
    }
    const PetalDecomposition dec = petal_decomposition(g, edge_weights(g), x0, t, options_);
    for (std::size_t j = 1; j < dec.Xs.size(); ++j) out.push_back(to_original[dec.connectors[j]]);

    std::vector<Vertex> local(g.n(), kNoVertex);
    for (std::size_t j = 0; j < dec.Xs.size(); ++j) {
      const std::vector<Vertex>& part = dec.Xs[j];
      if (part.size() >= g.n()) throw std::logic_error("hierarchical_petal_decomposition: no progress");
      for (std::size_t i = 0; i < part.size(); ++i) local[part[i]] = i;
      WeightedGraph sub(part.size());
      std::vector<EdgeId> sub_to_original;
      for (Vertex v : part) {
        for (const Incidence& inc : g.neighbors(v)) {
          if (local[inc.to] == kNoVertex || v >= inc.to) continue;
          sub.add_edge(local[v], local[inc.to], dec.weights[inc.edge]);
          sub_to_original.push_back(to_original[inc.edge]);
        }
      }
      run(sub, sub_to_original, local[dec.xs[j]], local[dec.ts[j]], depth + 1, out);
      for (Vertex v : part) local[v] = kNoVertex;
    }
  }

 private:
  std::size_t depth_cap_;
  PetalOptions options_;
};

}  // namespace detail

/// The cone digraph of Y around x0: two arcs per edge, all lengths >= 0.
inline ConeDigraph cone_digraph(const WeightedGraph& y, Vertex x0) {
  const ShortestPaths sp = dijkstra(y, x0);
  ConeDigraph cone{y.n(), {}};
  cone.arcs.reserve(2 * y.m());
  for (EdgeId e = 0; e < y.m(); ++e) {
    const Edge& edge = y.edge(e);
    cone.arcs.push_back({edge.u, edge.v, detail::cone_length(edge.w, sp.dist[edge.u], sp.dist[edge.v]), e});
    cone.arcs.push_back({edge.v, edge.u, detail::cone_length(edge.w, sp.dist[edge.v], sp.dist[edge.u]), e});
  }
  return cone;
}

/// Petal of radius r around t, carved relative to the center x0.
inline Petal create_petal(const WeightedGraph& y, Vertex x0, Vertex t, double r) {
  if (x0 >= y.n() || t >= y.n()) throw std::invalid_argument("create_petal: vertex not in graph");
  const std::vector<double> weights = detail::edge_weights(y);
  const std::vector<char> alive(y.n(), 1);
  const detail::Remainder rem{y, weights, alive};
  return detail::create_petal(rem, detail::remainder_distances(rem, x0), x0, t, r);
}

inline PetalDecomposition petal_decomposition(const WeightedGraph& g, Vertex x0, Vertex t,
                                              const PetalOptions& options = {}) {
  return detail::petal_decomposition(g, detail::edge_weights(g), x0, t, options);
}

inline std::size_t default_depth_cap(std::size_t n) {
  return 10 * static_cast<std::size_t>(std::ceil(std::log2(std::max<std::size_t>(n, 1)))) + 20;
}

inline SpanningTree hierarchical_petal_decomposition(const WeightedGraph& g, Vertex x0, Vertex t,
                                                     const PetalOptions& options = {}) {
  if (g.n() == 0) return {};
  if (x0 >= g.n() || t >= g.n()) throw std::invalid_argument("hierarchical_petal_decomposition: vertex not in graph");
  if (!is_connected(g)) throw std::invalid_argument("hierarchical_petal_decomposition: graph not connected");
  std::vector<EdgeId> identity(g.m());
  for (EdgeId e = 0; e < g.m(); ++e) identity[e] = e;
  SpanningTree tree;
  detail::HierarchicalBuilder builder(default_depth_cap(g.n()), options);
  builder.run(g, identity, x0, t, 0, tree.edges);
  std::sort(tree.edges.begin(), tree.edges.end());
  return tree;
}

/// Low-stretch spanning tree rooted at x0.
inline SpanningTree lsst(const WeightedGraph& g, Vertex x0 = 0, const PetalOptions& options = {}) {
  return hierarchical_petal_decomposition(g, x0, x0, options);
}

}  // namespace flowforge
