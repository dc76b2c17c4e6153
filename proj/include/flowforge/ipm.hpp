#pragma once

// Potential-reduction interior point method for min-cost flow, descending
// along fundamental cycles of a low-stretch tree built on the current
// barrier lengths.
//
//   alpha = 1 / (1000 ln(mU))
//   Phi(f) = 20m ln(c.f - F*) + sum_e (hi - f)^-alpha + (f - lo)^-alpha
//   g_e    = 20m c_e / (c.f - F*) + alpha (hi - f)^(-1-alpha) - alpha (f - lo)^(-1-alpha)
//   len_e  = (hi - f)^(-1-alpha) + (f - lo)^(-1-alpha)

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowforge/flow_problem.hpp"
#include "flowforge/lsst.hpp"
#include "flowforge/mcmf.hpp"
#include "flowforge/random.hpp"
#include "flowforge/stretch.hpp"

namespace flowforge {

inline double alpha(std::size_t m, std::int64_t U) {
  const double mu = static_cast<double>(m) * static_cast<double>(U);
  if (!(mu > 1.0)) throw std::invalid_argument("alpha: m * U must exceed 1");
  return 1.0 / (1000.0 * std::log(mu));
}

inline double alpha(const FlowProblem& p) { return alpha(p.m(), p.U); }

namespace detail {

inline void require_interior(const FlowProblem& p, const std::vector<double>& f) {
  if (!strictly_interior(p, f)) throw std::invalid_argument("flow is not strictly inside the capacity bounds");
}

inline double cost_gap(const FlowProblem& p, const std::vector<double>& f, double f_star) {
  const double gap = flow_cost(p, f) - f_star;
  if (!(gap > 0.0)) throw std::invalid_argument("cost gap c.f - F* must be positive");
  return gap;
}

}  // namespace detail

inline std::vector<double> lengths(const FlowProblem& p, const std::vector<double>& f) {
  detail::require_interior(p, f);
  const double a = alpha(p);
  std::vector<double> len(p.m());
  for (EdgeId e = 0; e < p.m(); ++e) {
    const double up = static_cast<double>(p.hi[e]) - f[e];
    const double down = f[e] - static_cast<double>(p.lo[e]);
    len[e] = std::pow(up, -1.0 - a) + std::pow(down, -1.0 - a);
  }
  return len;
}

inline std::vector<double> gradient(const FlowProblem& p, const std::vector<double>& f, double f_star) {
  detail::require_interior(p, f);
  const double gap = detail::cost_gap(p, f, f_star);
  const double a = alpha(p);
  const double scale = 20.0 * static_cast<double>(p.m()) / gap;
  std::vector<double> g(p.m());
  for (EdgeId e = 0; e < p.m(); ++e) {
    const double up = static_cast<double>(p.hi[e]) - f[e];
    const double down = f[e] - static_cast<double>(p.lo[e]);
    g[e] = scale * static_cast<double>(p.cost[e]) + a * std::pow(up, -1.0 - a) - a * std::pow(down, -1.0 - a);
  }
  return g;
}

inline double potential(const FlowProblem& p, const std::vector<double>& f, double f_star) {
  detail::require_interior(p, f);
  const double gap = detail::cost_gap(p, f, f_star);
  const double a = alpha(p);
  double phi = 20.0 * static_cast<double>(p.m()) * std::log(gap);
  for (EdgeId e = 0; e < p.m(); ++e) {
    phi += std::pow(static_cast<double>(p.hi[e]) - f[e], -a) + std::pow(f[e] - static_cast<double>(p.lo[e]), -a);
  }
  return phi;
}

struct CycleChoice {
  std::vector<int> delta;  // circulation with entries in {-1, 0, 1}
  double ratio = 0.0;      // <g, delta> / <len, |delta|>, never positive
  EdgeId off_tree = kNoEdge;
};

/// Over all fundamental cycles of `tree` (both orientations), the one with
/// the most negative <g, delta> / <len, |delta|>. Ties go to the smaller
/// off-tree edge id.
inline CycleChoice best_fundamental_cycle(const FlowProblem& p, const SpanningTree& tree,
                                          const std::vector<double>& g, const std::vector<double>& len) {
  const std::size_t n = p.n();
  if (!is_spanning_tree(p.graph, tree)) throw std::invalid_argument("best_fundamental_cycle: tree does not span");
  if (tree.edges.size() == p.m()) throw std::invalid_argument("best_fundamental_cycle: graph is a tree");

  // Root the tree at 0. gpre[v] is the signed gradient sum root -> v (an
  // edge counts +1 when walked tail -> head), lpre[v] the length sum.
  std::vector<std::vector<EdgeId>> adj(n);
  std::vector<char> in_tree(p.m(), 0);
  for (EdgeId e : tree.edges) {
    in_tree[e] = 1;
    adj[p.tail(e)].push_back(e);
    adj[p.head(e)].push_back(e);
  }
  std::vector<Vertex> parent(n, kNoVertex);
  std::vector<EdgeId> up_edge(n, kNoEdge);
  std::vector<std::size_t> depth(n, 0);
  std::vector<double> gpre(n, 0.0);
  std::vector<double> lpre(n, 0.0);
  std::vector<Vertex> stack{0};
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (EdgeId e : adj[v]) {
      const Vertex w = p.tail(e) == v ? p.head(e) : p.tail(e);
      if (seen[w]) continue;
      seen[w] = 1;
      parent[w] = v;
      up_edge[w] = e;
      depth[w] = depth[v] + 1;
      gpre[w] = gpre[v] + (p.tail(e) == v ? g[e] : -g[e]);
      lpre[w] = lpre[v] + len[e];
      stack.push_back(w);
    }
  }
  auto lca = [&](Vertex a, Vertex b) {
    while (depth[a] > depth[b]) a = parent[a];
    while (depth[b] > depth[a]) b = parent[b];
    while (a != b) {
      a = parent[a];
      b = parent[b];
    }
    return a;
  };

  CycleChoice best;
  best.ratio = std::numeric_limits<double>::infinity();
  for (EdgeId e = 0; e < p.m(); ++e) {
    if (in_tree[e]) continue;
    // Cycle: e from tail a to head b, then the tree path b -> a.
    const Vertex a = p.tail(e);
    const Vertex b = p.head(e);
    const double gsum = g[e] + gpre[a] - gpre[b];
    const double lsum = len[e] + lpre[a] + lpre[b] - 2.0 * lpre[lca(a, b)];
    const double ratio = -std::fabs(gsum) / lsum;
    if (ratio < best.ratio) {
      best.ratio = ratio;
      best.off_tree = e;
    }
  }

  // Materialise the chosen cycle, oriented so that <g, delta> <= 0.
  const EdgeId e = best.off_tree;
  best.delta.assign(p.m(), 0);
  best.delta[e] = 1;
  const Vertex a = p.tail(e);
  const Vertex b = p.head(e);
  const Vertex top = lca(a, b);
  // b up to the lca: walking child -> parent.
  for (Vertex v = b; v != top; v = parent[v]) best.delta[up_edge[v]] = p.tail(up_edge[v]) == v ? 1 : -1;
  // lca down to a: walking parent -> child.
  for (Vertex v = a; v != top; v = parent[v]) best.delta[up_edge[v]] = p.head(up_edge[v]) == v ? 1 : -1;
  // Report the ratio of the cycle itself rather than the prefix-sum
  // estimate, so ratio < 0 guarantees <g, delta> < 0.
  double gsum = 0.0;
  double lsum = 0.0;
  for (EdgeId x = 0; x < p.m(); ++x) {
    gsum += g[x] * best.delta[x];
    lsum += len[x] * std::abs(best.delta[x]);
  }
  if (gsum > 0.0) {
    for (int& d : best.delta) d = -d;
  }
  best.ratio = -std::fabs(gsum) / lsum;
  return best;
}

/// Same as above on the tree the solver would use: lsst of the graph with
/// barrier lengths as weights.
inline CycleChoice best_fundamental_cycle(const FlowProblem& p, const std::vector<double>& f, double f_star) {
  const std::vector<double> len = lengths(p, f);
  WeightedGraph weighted(p.n());
  for (EdgeId e = 0; e < p.m(); ++e) weighted.add_edge(p.tail(e), p.head(e), len[e]);
  return best_fundamental_cycle(p, lsst(weighted), gradient(p, f, f_star), len);
}

inline constexpr int kMaxHalvings = 60;

/// eta = kappa^2 / (50 |<g, delta>|), halved until f + eta delta is strictly
/// interior and lowers Phi. nullopt when 60 halvings do not help.
inline std::optional<std::vector<double>> step(const FlowProblem& p, const std::vector<double>& f,
                                               const std::vector<int>& delta, double kappa, double f_star) {
  const std::vector<double> g = gradient(p, f, f_star);
  double gd = 0.0;
  for (EdgeId e = 0; e < p.m(); ++e) gd += g[e] * delta[e];
  if (gd == 0.0) throw std::invalid_argument("step: <g, delta> must be nonzero");
  const double phi = potential(p, f, f_star);
  double eta = kappa * kappa / (50.0 * std::fabs(gd));
  std::vector<double> next(p.m());
  for (int k = 0; k <= kMaxHalvings; ++k, eta /= 2.0) {
    for (EdgeId e = 0; e < p.m(); ++e) next[e] = f[e] + eta * delta[e];
    if (!strictly_interior(p, next)) continue;
    if (flow_cost(p, next) - f_star <= 0.0) continue;
    if (potential(p, next, f_star) < phi) return next;
  }
  return std::nullopt;
}

/// kappa default exp(-(ln m)^(7/8) ln ln m), clamped into (0, 1).
inline double default_kappa(std::size_t m) {
  const double lm = std::log(static_cast<double>(std::max<std::size_t>(m, 3)));
  return std::min(0.5, std::exp(-std::pow(lm, 7.0 / 8.0) * std::log(lm)));
}

enum class IpmStatus { kConverged, kStalled, kIterationLimit, kNoCycles };

inline const char* to_string(IpmStatus s) {
  switch (s) {
    case IpmStatus::kConverged: return "converged";
    case IpmStatus::kStalled: return "stalled";
    case IpmStatus::kIterationLimit: return "iteration-limit";
    case IpmStatus::kNoCycles: return "no-cycles";
  }
  return "?";
}

struct IpmOptions {
  double kappa = 0.0;         // 0 selects default_kappa(m)
  std::size_t max_iter = 200000;
  double gap_tol = -1.0;      // negative selects 1e-6 max(1, |F*|)
  bool adaptive_kappa = true; // use max(kappa, |ratio|) each iteration
  double kappa_cap = std::numeric_limits<double>::infinity();
};

struct IpmReport {
  std::vector<double> flow;
  std::vector<double> potential_trace;  // Phi(f0), then one entry per accepted step
  std::size_t iterations = 0;
  double f_star = 0.0;
  double final_cost = 0.0;
  double gap = 0.0;
  double kappa = 0.0;
  IpmStatus status = IpmStatus::kIterationLimit;
};

inline IpmReport solve(const FlowProblem& p, const std::vector<double>& f0, double f_star,
                       const IpmOptions& opt = {}) {
  p.validate();
  detail::require_interior(p, f0);
  if (conservation_error(p, f0) > 1e-9) throw std::invalid_argument("solve: initial flow violates conservation");

  IpmReport rep;
  rep.f_star = f_star;
  rep.kappa = opt.kappa > 0.0 ? opt.kappa : default_kappa(p.m());
  const double tol = opt.gap_tol >= 0.0 ? opt.gap_tol : 1e-6 * std::max(1.0, std::fabs(f_star));
  std::vector<double> f = f0;
  auto finish = [&](IpmStatus s) {
    rep.status = s;
    rep.final_cost = flow_cost(p, f);
    rep.gap = rep.final_cost - f_star;
    rep.flow = f;
    return rep;
  };
  if (flow_cost(p, f) - f_star <= tol) return finish(IpmStatus::kConverged);
  if (p.m() + 1 == p.n() || p.m() < p.n()) return finish(IpmStatus::kNoCycles);
  rep.potential_trace.push_back(potential(p, f, f_star));

  for (rep.iterations = 0; rep.iterations < opt.max_iter;) {
    const CycleChoice c = best_fundamental_cycle(p, f, f_star);
    if (!(c.ratio < 0.0)) return finish(IpmStatus::kStalled);
    double kappa = rep.kappa;
    if (opt.adaptive_kappa) kappa = std::max(kappa, std::min(opt.kappa_cap, -c.ratio));
    std::optional<std::vector<double>> next = step(p, f, c.delta, kappa, f_star);
    if (!next) return finish(IpmStatus::kStalled);
    f = std::move(*next);
    if (conservation_error(p, f) > 1e-6 * std::max<double>(1.0, static_cast<double>(p.U))) {
      throw std::logic_error("solve: step broke flow conservation");
    }
    ++rep.iterations;
    rep.potential_trace.push_back(potential(p, f, f_star));
    if (flow_cost(p, f) - f_star <= tol) return finish(IpmStatus::kConverged);
  }
  return finish(IpmStatus::kIterationLimit);
}

struct InteriorInstance {
  FlowProblem problem;
  std::vector<double> f0;
};

/// Random connected instance (random recursive spanning tree plus extra
/// edges, random orientations) around an integer flow f0 with slack >= 2 on
/// every edge; demands are f0's net inflow.
inline InteriorInstance generate_interior_instance(std::size_t n, std::size_t extra_edges, std::int64_t U,
                                                   std::int64_t C, std::uint64_t seed, bool signed_costs = false) {
  if (n < 2) throw std::invalid_argument("generate_interior_instance: n must be at least 2");
  if (U < 2) throw std::invalid_argument("generate_interior_instance: U must be at least 2");
  if (C < 1) throw std::invalid_argument("generate_interior_instance: C must be at least 1");
  Rng rng(seed);
  InteriorInstance out;
  FlowProblem& p = out.problem;
  p.graph = WeightedGraph(n);
  std::vector<std::int64_t> f0;
  auto add = [&](Vertex a, Vertex b) {
    if (rng.bernoulli(0.5)) std::swap(a, b);
    const std::int64_t slack = rng.uniform_int(2, std::max<std::int64_t>(2, U / 2));
    const std::int64_t center = rng.uniform_int(-(U - slack), U - slack);
    const std::int64_t c = signed_costs ? rng.uniform_int(-C, C) : rng.uniform_int(1, C);
    p.add_arc(a, b, center - slack, center + slack, c);
    f0.push_back(center);
  };
  for (Vertex v = 1; v < n; ++v) add(rng.index(v), v);
  for (std::size_t i = 0; i < extra_edges; ++i) {
    const Vertex a = rng.index(n);
    Vertex b = rng.index(n - 1);
    if (b >= a) ++b;
    add(a, b);
  }
  p.dem = net_inflow(p, f0);
  p.refresh_bounds();
  out.f0.assign(f0.begin(), f0.end());
  return out;
}

/// A strictly interior feasible flow: the average of, for every edge, a
/// feasible flow pushing it as high as possible and one pushing it as low as
/// possible. nullopt when the instance is infeasible or some edge takes the
/// same bound in every feasible flow (then no interior point exists).
inline std::optional<std::vector<double>> find_interior_point(const FlowProblem& p) {
  p.validate();
  const std::size_t m = p.m();
  std::vector<std::int64_t> sum(m, 0);
  std::vector<char> above(m, 0);
  std::vector<char> below(m, 0);
  FlowProblem probe = p;
  for (EdgeId e = 0; e < m; ++e) {
    for (std::int64_t sign : {-1, 1}) {
      std::fill(probe.cost.begin(), probe.cost.end(), 0);
      probe.cost[e] = sign;
      const std::optional<MinCostResult> r = ssp_min_cost(probe);
      if (!r) return std::nullopt;
      for (EdgeId a = 0; a < m; ++a) {
        sum[a] += r->flow[a];
        above[a] |= r->flow[a] > p.lo[a] ? 1 : 0;
        below[a] |= r->flow[a] < p.hi[a] ? 1 : 0;
      }
    }
  }
  std::vector<double> f(m);
  for (EdgeId e = 0; e < m; ++e) {
    if (!above[e] || !below[e]) return std::nullopt;
    f[e] = static_cast<double>(sum[e]) / static_cast<double>(2 * m);
  }
  return f;
}

}  // namespace flowforge
