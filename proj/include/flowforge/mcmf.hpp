#pragma once

// Exact classical flow algorithms, all in int64 arithmetic: Edmonds-Karp
// max flow, successive shortest paths for min-cost flow with lower bounds,
// and an exhaustive search for tiny instances.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "flowforge/flow_problem.hpp"

namespace flowforge {

struct Arc {
  Vertex tail;
  Vertex head;
  std::int64_t cap;
  std::int64_t cost = 0;
};

struct DirectedFlowNetwork {
  std::size_t n = 0;
  std::vector<Arc> arcs;
};

struct MaxFlowResult {
  std::int64_t value = 0;
  std::vector<std::int64_t> flow;  // per arc of the input network
};

namespace detail {

// Residual graph with paired arcs: arc 2i is forward, 2i + 1 its reverse.
class Residual {
 public:
  explicit Residual(std::size_t n) : out_(n) {}

  std::size_t add(Vertex u, Vertex v, std::int64_t cap, std::int64_t cost) {
    const std::size_t id = to_.size();
    push(u, v, cap, cost);
    push(v, u, 0, -cost);
    return id;
  }

  std::size_t n() const { return out_.size(); }
  const std::vector<std::size_t>& out(Vertex v) const { return out_[v]; }
  Vertex to(std::size_t a) const { return to_[a]; }
  std::int64_t cap(std::size_t a) const { return cap_[a]; }
  std::int64_t cost(std::size_t a) const { return cost_[a]; }
  std::int64_t flow(std::size_t a) const { return cap_[a ^ 1U]; }  // of a forward arc

  void push_flow(std::size_t a, std::int64_t x) {
    cap_[a] -= x;
    cap_[a ^ 1U] += x;
  }

 private:
  std::vector<std::vector<std::size_t>> out_;
  std::vector<Vertex> to_;
  std::vector<std::int64_t> cap_;
  std::vector<std::int64_t> cost_;

  void push(Vertex u, Vertex v, std::int64_t cap, std::int64_t cost) {
    out_[u].push_back(to_.size());
    to_.push_back(v);
    cap_.push_back(cap);
    cost_.push_back(cost);
  }
};

inline std::int64_t max_flow(Residual& r, Vertex s, Vertex t) {
  std::int64_t total = 0;
  std::vector<std::size_t> via(r.n());
  while (true) {
    std::fill(via.begin(), via.end(), std::numeric_limits<std::size_t>::max());
    std::vector<char> seen(r.n(), 0);
    std::queue<Vertex> queue;
    queue.push(s);
    seen[s] = 1;
    while (!queue.empty() && !seen[t]) {
      const Vertex x = queue.front();
      queue.pop();
      for (std::size_t a : r.out(x)) {
        if (r.cap(a) > 0 && !seen[r.to(a)]) {
          seen[r.to(a)] = 1;
          via[r.to(a)] = a;
          queue.push(r.to(a));
        }
      }
    }
    if (!seen[t]) return total;
    std::int64_t push = std::numeric_limits<std::int64_t>::max();
    for (Vertex v = t; v != s; v = r.to(via[v] ^ 1U)) push = std::min(push, r.cap(via[v]));
    for (Vertex v = t; v != s; v = r.to(via[v] ^ 1U)) r.push_flow(via[v], push);
    total += push;
  }
}

}  // namespace detail

/// BFS augmenting paths until none remain.
inline MaxFlowResult edmonds_karp(const DirectedFlowNetwork& net, Vertex s, Vertex t) {
  if (s == t) throw std::invalid_argument("edmonds_karp: source equals sink");
  if (s >= net.n || t >= net.n) throw std::invalid_argument("edmonds_karp: terminal out of range");
  detail::Residual r(net.n);
  std::vector<std::size_t> ids;
  for (const Arc& a : net.arcs) {
    if (a.tail >= net.n || a.head >= net.n) throw std::invalid_argument("edmonds_karp: arc endpoint out of range");
    if (a.cap < 0) throw std::invalid_argument("edmonds_karp: negative capacity");
    ids.push_back(r.add(a.tail, a.head, a.cap, a.cost));
  }
  MaxFlowResult out;
  out.value = detail::max_flow(r, s, t);
  for (std::size_t id : ids) out.flow.push_back(r.flow(id));
  return out;
}

struct MinCostResult {
  std::vector<std::int64_t> flow;
  std::int64_t cost = 0;
};

/// Exact min-cost flow. Returns nullopt when no flow meets the bounds and
/// demands.
inline std::optional<MinCostResult> ssp_min_cost(const FlowProblem& p) {
  p.validate();
  const std::size_t n = p.n();
  const std::size_t m = p.m();
  // Shift to x = f - lo (0 <= x <= hi - lo), then pre-saturate negative-cost
  // arcs so every residual arc starts with nonnegative cost.
  std::vector<std::int64_t> need(p.dem.begin(), p.dem.end());  // required net inflow of x
  std::vector<std::int64_t> base(m, 0);
  for (EdgeId e = 0; e < m; ++e) {
    base[e] = p.lo[e];
    if (p.cost[e] < 0) base[e] = p.hi[e];
    need[p.head(e)] -= base[e];
    need[p.tail(e)] += base[e];
  }
  const Vertex S = n;
  const Vertex T = n + 1;
  detail::Residual r(n + 2);
  std::vector<std::size_t> ids(m);
  for (EdgeId e = 0; e < m; ++e) {
    const std::int64_t span = p.hi[e] - p.lo[e];
    if (p.cost[e] < 0) {
      // Residual room is only the undo direction: head -> tail at cost -c.
      ids[e] = r.add(p.head(e), p.tail(e), span, -p.cost[e]);
    } else {
      ids[e] = r.add(p.tail(e), p.head(e), span, p.cost[e]);
    }
  }
  std::int64_t supply = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (need[v] < 0) {
      r.add(S, v, -need[v], 0);
      supply += -need[v];
    } else if (need[v] > 0) {
      r.add(v, T, need[v], 0);
    }
  }

  // Feasibility first: can all supply reach the sinks at all?
  {
    detail::Residual probe = r;
    if (detail::max_flow(probe, S, T) != supply) return std::nullopt;
  }

  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> pot(n + 2, 0);
  std::vector<std::int64_t> dist(n + 2);
  std::vector<std::size_t> via(n + 2);
  std::int64_t sent = 0;
  while (sent < supply) {
    std::fill(dist.begin(), dist.end(), kInf);
    using Item = std::pair<std::int64_t, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[S] = 0;
    heap.push({0, S});
    while (!heap.empty()) {
      const auto [d, x] = heap.top();
      heap.pop();
      if (d > dist[x]) continue;
      for (std::size_t a : r.out(x)) {
        if (r.cap(a) <= 0) continue;
        const Vertex y = r.to(a);
        const std::int64_t reduced = r.cost(a) + pot[x] - pot[y];
        if (reduced < 0) throw std::logic_error("ssp_min_cost: negative reduced cost");
        if (d + reduced < dist[y]) {
          dist[y] = d + reduced;
          via[y] = a;
          heap.push({dist[y], y});
        }
      }
    }
    if (dist[T] >= kInf) throw std::logic_error("ssp_min_cost: sink unreachable after feasibility check");
    for (Vertex v = 0; v < n + 2; ++v) {
      if (dist[v] < kInf) pot[v] += dist[v];
    }
    std::int64_t push = supply - sent;
    for (Vertex v = T; v != S; v = r.to(via[v] ^ 1U)) push = std::min(push, r.cap(via[v]));
    for (Vertex v = T; v != S; v = r.to(via[v] ^ 1U)) r.push_flow(via[v], push);
    sent += push;
  }

  MinCostResult out;
  out.flow.resize(m);
  for (EdgeId e = 0; e < m; ++e) {
    const std::int64_t moved = r.flow(ids[e]);
    out.flow[e] = p.cost[e] < 0 ? base[e] - moved : base[e] + moved;
  }
  out.cost = flow_cost(p, out.flow);
  return out;
}

inline constexpr std::size_t kBruteForceMaxVertices = 6;
inline constexpr std::size_t kBruteForceMaxEdges = 9;
inline constexpr std::int64_t kBruteForceMaxRange = 6;

/// Exhaustive search over integer flows; only for tiny instances.
inline std::optional<MinCostResult> brute_force_min_cost(const FlowProblem& p) {
  p.validate();
  if (p.n() > kBruteForceMaxVertices || p.m() > kBruteForceMaxEdges) {
    throw std::invalid_argument("brute_force_min_cost: instance too large");
  }
  for (EdgeId e = 0; e < p.m(); ++e) {
    if (p.hi[e] - p.lo[e] > kBruteForceMaxRange) throw std::invalid_argument("brute_force_min_cost: range too wide");
  }
  const std::size_t n = p.n();
  const std::size_t m = p.m();
  // Range of net inflow the still-unassigned edges can add at each vertex.
  std::vector<std::int64_t> room_lo(n, 0);
  std::vector<std::int64_t> room_hi(n, 0);
  for (EdgeId e = 0; e < m; ++e) {
    room_lo[p.head(e)] += p.lo[e];
    room_hi[p.head(e)] += p.hi[e];
    room_lo[p.tail(e)] -= p.hi[e];
    room_hi[p.tail(e)] -= p.lo[e];
  }
  std::vector<std::int64_t> inflow(n, 0);
  std::vector<std::int64_t> f(m, 0);
  std::optional<MinCostResult> best;

  auto feasible_so_far = [&](Vertex v) {
    const std::int64_t missing = p.dem[v] - inflow[v];
    return room_lo[v] <= missing && missing <= room_hi[v];
  };
  std::function<void(EdgeId, std::int64_t)> search = [&](EdgeId e, std::int64_t cost) {
    if (e == m) {
      for (Vertex v = 0; v < n; ++v) {
        if (inflow[v] != p.dem[v]) return;
      }
      if (!best || cost < best->cost) best = MinCostResult{f, cost};
      return;
    }
    const Vertex a = p.tail(e);
    const Vertex b = p.head(e);
    room_lo[b] -= p.lo[e];
    room_hi[b] -= p.hi[e];
    room_lo[a] += p.hi[e];
    room_hi[a] += p.lo[e];
    for (std::int64_t x = p.lo[e]; x <= p.hi[e]; ++x) {
      f[e] = x;
      inflow[b] += x;
      inflow[a] -= x;
      if (feasible_so_far(a) && feasible_so_far(b)) search(e + 1, cost + p.cost[e] * x);
      inflow[b] -= x;
      inflow[a] += x;
    }
    room_lo[b] += p.lo[e];
    room_hi[b] += p.hi[e];
    room_lo[a] -= p.hi[e];
    room_hi[a] -= p.lo[e];
  };
  for (Vertex v = 0; v < n; ++v) {
    if (!feasible_so_far(v)) return std::nullopt;
  }
  search(0, 0);
  return best;
}

}  // namespace flowforge
