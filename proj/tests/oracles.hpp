#pragma once

// Independent reference implementations used only by the tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <vector>

#include "flowforge/flowforge.hpp"

namespace oracle {

using flowforge::EdgeId;
using flowforge::Vertex;

inline std::vector<double> bellman_ford(const flowforge::WeightedGraph& g, Vertex src) {
  std::vector<double> d(g.n(), flowforge::kInfinity);
  d[src] = 0.0;
  for (std::size_t round = 0; round + 1 < g.n(); ++round) {
    bool changed = false;
    for (const auto& e : g.edges()) {
      if (d[e.u] + e.w < d[e.v]) d[e.v] = d[e.u] + e.w, changed = true;
      if (d[e.v] + e.w < d[e.u]) d[e.u] = d[e.v] + e.w, changed = true;
    }
    if (!changed) break;
  }
  return d;
}

/// Distinct chains met by the walk from u to the root, with a seen-set.
inline std::vector<std::size_t> chain_counts_by_walk(const flowforge::RootedTreeArray& t,
                                                     const flowforge::HeavyChains& c) {
  const std::vector<Vertex> parent = t.parents();
  std::vector<std::size_t> out(t.n());
  for (Vertex u = 0; u < t.n(); ++u) {
    std::set<std::size_t> seen;
    for (Vertex v = u; v != flowforge::kNoVertex; v = parent[v]) seen.insert(c.chain_of[v]);
    out[u] = seen.size();
  }
  return out;
}

/// Minimum s-t cut by enumerating every vertex subset containing s but not t.
inline std::int64_t min_cut_by_enumeration(const flowforge::DirectedFlowNetwork& net, Vertex s, Vertex t) {
  const std::size_t n = net.n;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (!(mask >> s & 1U) || (mask >> t & 1U)) continue;
    std::int64_t cut = 0;
    for (const auto& a : net.arcs) {
      if ((mask >> a.tail & 1U) && !(mask >> a.head & 1U)) cut += a.cap;
    }
    best = std::min(best, cut);
  }
  return best;
}

/// Potential recomputed directly from its definition.
inline double potential(const flowforge::FlowProblem& p, const std::vector<double>& f, double f_star) {
  const double a = 1.0 / (1000.0 * std::log(static_cast<double>(p.m()) * static_cast<double>(p.U)));
  double cf = 0.0;
  double barrier = 0.0;
  for (EdgeId e = 0; e < p.m(); ++e) {
    cf += static_cast<double>(p.cost[e]) * f[e];
    barrier += std::pow(static_cast<double>(p.hi[e]) - f[e], -a) + std::pow(f[e] - static_cast<double>(p.lo[e]), -a);
  }
  return 20.0 * static_cast<double>(p.m()) * std::log(cf - f_star) + barrier;
}

inline std::vector<double> lengths(const flowforge::FlowProblem& p, const std::vector<double>& f) {
  const double a = 1.0 / (1000.0 * std::log(static_cast<double>(p.m()) * static_cast<double>(p.U)));
  std::vector<double> out;
  for (EdgeId e = 0; e < p.m(); ++e) {
    out.push_back(1.0 / std::pow(static_cast<double>(p.hi[e]) - f[e], 1.0 + a) +
                  1.0 / std::pow(f[e] - static_cast<double>(p.lo[e]), 1.0 + a));
  }
  return out;
}

/// Closed-form OLS via the 2x2 normal equations.
inline std::pair<double, double> normal_equations(const std::vector<double>& x, const std::vector<double>& y) {
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const long double n = static_cast<long double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += static_cast<long double>(x[i]) * x[i];
    sxy += static_cast<long double>(x[i]) * y[i];
  }
  const long double det = n * sxx - sx * sx;
  const long double slope = (n * sxy - sx * sy) / det;
  const long double intercept = (sy - slope * sx) / n;
  return {static_cast<double>(slope), static_cast<double>(intercept)};
}

/// Tiny random min-cost instance within the brute-force limits. Demands come
/// from a random integer flow inside the bounds, so it is always feasible
/// unless `allow_infeasible` perturbs them.
inline flowforge::FlowProblem tiny_flow_problem(std::uint64_t seed, bool allow_infeasible = false) {
  flowforge::Rng rng(seed);
  const std::size_t n = 2 + rng.index(5);  // 2..6
  const std::size_t m = 1 + rng.index(9);  // 1..9
  flowforge::FlowProblem p;
  p.graph = flowforge::WeightedGraph(n);
  std::vector<std::int64_t> f;
  for (std::size_t i = 0; i < m; ++i) {
    const Vertex a = rng.index(n);
    Vertex b = rng.index(n - 1);
    if (b >= a) ++b;
    const std::int64_t lo = rng.uniform_int(-3, 2);
    const std::int64_t hi = lo + rng.uniform_int(1, 6);
    p.add_arc(a, b, lo, hi, rng.uniform_int(-5, 9));
    f.push_back(rng.uniform_int(lo, hi));
  }
  p.dem = flowforge::net_inflow(p, f);
  if (allow_infeasible && rng.bernoulli(0.3)) {
    const Vertex a = rng.index(n);
    Vertex b = rng.index(n - 1);
    if (b >= a) ++b;
    const std::int64_t k = rng.uniform_int(1, 8);
    p.dem[a] += k;
    p.dem[b] -= k;
  }
  return p;
}

}  // namespace oracle
