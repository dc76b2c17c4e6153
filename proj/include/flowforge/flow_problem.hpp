#pragma once

// Min-cost flow instances with lower and upper capacities.
//
// Edge e of `graph` is directed tail = edge(e).u -> head = edge(e).v. The
// demand of a vertex is the net inflow it must receive:
//   dem[v] = sum_{head(e) = v} f_e - sum_{tail(e) = v} f_e.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowforge/graph.hpp"

namespace flowforge {

struct FlowProblem {
  WeightedGraph graph;  // weights unused; edge order is the arc order
  std::vector<std::int64_t> cost;
  std::vector<std::int64_t> lo;
  std::vector<std::int64_t> hi;
  std::vector<std::int64_t> dem;
  std::int64_t U = 0;  // max |lo|, |hi|
  std::int64_t C = 0;  // max |cost|

  std::size_t n() const { return graph.n(); }
  std::size_t m() const { return graph.m(); }
  Vertex tail(EdgeId e) const { return graph.edge(e).u; }
  Vertex head(EdgeId e) const { return graph.edge(e).v; }

  EdgeId add_arc(Vertex tail, Vertex head, std::int64_t lower, std::int64_t upper, std::int64_t c) {
    const EdgeId e = graph.add_edge(tail, head, 1.0);
    lo.push_back(lower);
    hi.push_back(upper);
    cost.push_back(c);
    U = std::max({U, std::abs(lower), std::abs(upper)});
    C = std::max(C, std::abs(c));
    return e;
  }

  /// Recomputes U and C from the data.
  void refresh_bounds() {
    U = 0;
    C = 0;
    for (EdgeId e = 0; e < m(); ++e) {
      U = std::max({U, std::abs(lo[e]), std::abs(hi[e])});
      C = std::max(C, std::abs(cost[e]));
    }
  }

  void validate() const {
    if (cost.size() != m() || lo.size() != m() || hi.size() != m()) {
      throw std::invalid_argument("flow problem: per-edge arrays do not match the edge count");
    }
    if (dem.size() != n()) throw std::invalid_argument("flow problem: demand vector does not match n");
    if (std::accumulate(dem.begin(), dem.end(), std::int64_t{0}) != 0) {
      throw std::invalid_argument("flow problem: demands do not sum to zero");
    }
    for (EdgeId e = 0; e < m(); ++e) {
      if (!(lo[e] < hi[e])) throw std::invalid_argument("flow problem: edge " + std::to_string(e) + " has lo >= hi");
    }
  }
};

/// Net inflow at every vertex.
template <class T>
std::vector<T> net_inflow(const FlowProblem& p, const std::vector<T>& f) {
  std::vector<T> out(p.n(), T{});
  for (EdgeId e = 0; e < p.m(); ++e) {
    out[p.head(e)] += f[e];
    out[p.tail(e)] -= f[e];
  }
  return out;
}

template <class T>
T flow_cost(const FlowProblem& p, const std::vector<T>& f) {
  T total{};
  for (EdgeId e = 0; e < p.m(); ++e) total += static_cast<T>(p.cost[e]) * f[e];
  return total;
}

/// Largest violation of conservation, |net_inflow(f) - dem|.
inline double conservation_error(const FlowProblem& p, const std::vector<double>& f) {
  const std::vector<double> in = net_inflow(p, f);
  double worst = 0.0;
  for (Vertex v = 0; v < p.n(); ++v) worst = std::max(worst, std::fabs(in[v] - static_cast<double>(p.dem[v])));
  return worst;
}

inline bool strictly_interior(const FlowProblem& p, const std::vector<double>& f) {
  if (f.size() != p.m()) return false;
  for (EdgeId e = 0; e < p.m(); ++e) {
    if (!(static_cast<double>(p.lo[e]) < f[e] && f[e] < static_cast<double>(p.hi[e]))) return false;
  }
  return true;
}

}  // namespace flowforge
