#pragma once

// Slow mirror of DynTreeForest: every path operation walks the tree with a
// BFS. Used only as a test oracle.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flowforge/link_cut.hpp"

namespace flowforge {

class NaiveForest {
 public:
  NaiveForest(std::size_t n, double epsilon) : epsilon_(epsilon), adj_(n) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
      throw std::invalid_argument("NaiveForest: epsilon must be positive and finite");
    }
  }

  std::size_t n() const { return adj_.size(); }
  double epsilon() const { return epsilon_; }
  std::size_t edge_count() const { return edges_.size(); }

  EdgeHandle link(Vertex u, Vertex v, double g, double len) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("link: self-loop");
    if (!(len > 0.0) || !std::isfinite(len)) throw std::invalid_argument("edge length must be positive and finite");
    if (connected(u, v)) throw std::invalid_argument("link: endpoints already in the same tree");
    const EdgeHandle h = next_handle_++;
    edges_.emplace(h, Rec{u, v, g, len, 0.0, 0.0});
    adj_[u].push_back(h);
    adj_[v].push_back(h);
    return h;
  }

  void cut(EdgeHandle h) {
    const Rec& r = rec(h);
    for (Vertex x : {r.tail, r.head}) {
      auto& list = adj_[x];
      list.erase(std::find(list.begin(), list.end(), h));
    }
    edges_.erase(h);
  }

  void update_edge_value(EdgeHandle h, EdgeValue which, double value) {
    if (which == EdgeValue::kGradient) {
      set_gradient(h, value);
    } else {
      set_length(h, value);
    }
  }

  void set_gradient(EdgeHandle h, double g) { rec(h).g = g; }

  void set_length(EdgeHandle h, double len) {
    if (!(len > 0.0) || !std::isfinite(len)) throw std::invalid_argument("edge length must be positive and finite");
    rec(h).len = len;
  }

  PathSums path_sums(Vertex u, Vertex v) const {
    PathSums s;
    for (const auto& [h, sign] : path(u, v)) {
      const Rec& r = edges_.at(h);
      s.gsum += sign * r.g;
      s.labs += r.len;
    }
    return s;
  }

  void add_signed_flow(Vertex u, Vertex v, double eta) {
    for (const auto& [h, sign] : path(u, v)) edges_.at(h).f += sign * eta;
  }

  void add_abs_flow(Vertex u, Vertex v, double eta) {
    if (!(eta >= 0.0)) throw std::invalid_argument("add_abs_flow: eta must be nonnegative");
    for (const auto& [h, sign] : path(u, v)) {
      edges_.at(h).f += eta;
      edges_.at(h).a += eta;
    }
  }

  double flow(EdgeHandle h) const { return rec(h).f; }
  double accumulator(EdgeHandle h) const { return rec(h).a; }
  double gradient(EdgeHandle h) const { return rec(h).g; }
  double length(EdgeHandle h) const { return rec(h).len; }
  EdgeEnds ends(EdgeHandle h) const { return {rec(h).tail, rec(h).head}; }

  /// Full scan of every edge.
  std::vector<EdgeHandle> detect() {
    std::vector<EdgeHandle> out;
    for (auto& [h, r] : edges_) {
      if (r.len * r.a >= epsilon_) {
        out.push_back(h);
        r.a = 0.0;
      }
    }
    return out;
  }

  bool connected(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    return !bfs(u, v).empty() || u == v;
  }

  std::optional<EdgeHandle> find_edge(Vertex u, Vertex v) const {
    if (u >= n() || v >= n()) return std::nullopt;
    for (EdgeHandle h : adj_[u]) {
      const Rec& r = edges_.at(h);
      if (r.tail == v || r.head == v) return h;
    }
    return std::nullopt;
  }

  std::vector<EdgeHandle> edges() const {
    std::vector<EdgeHandle> out;
    for (const auto& [h, r] : edges_) out.push_back(h);
    return out;
  }

  /// Vertices in the tree containing v, ascending.
  std::vector<Vertex> component(Vertex v) const {
    check_vertex(v);
    std::vector<char> seen(n(), 0);
    std::vector<Vertex> out{v};
    seen[v] = 1;
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (EdgeHandle h : adj_[out[i]]) {
        const Rec& r = edges_.at(h);
        const Vertex y = r.tail == out[i] ? r.head : r.tail;
        if (!seen[y]) {
          seen[y] = 1;
          out.push_back(y);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t components() const {
    DisjointSets sets(n());
    for (const auto& [h, r] : edges_) sets.unite(r.tail, r.head);
    return sets.components();
  }

 private:
  struct Rec {
    Vertex tail;
    Vertex head;
    double g;
    double len;
    double f;
    double a;
  };

  double epsilon_;
  std::vector<std::vector<EdgeHandle>> adj_;
  std::map<EdgeHandle, Rec> edges_;
  EdgeHandle next_handle_ = 0;

  void check_vertex(Vertex v) const {
    if (v >= n()) throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
  }

  Rec& rec(EdgeHandle h) {
    const auto it = edges_.find(h);
    if (it == edges_.end()) throw std::invalid_argument("edge handle " + std::to_string(h) + " is not in the forest");
    return it->second;
  }
  const Rec& rec(EdgeHandle h) const { return const_cast<NaiveForest*>(this)->rec(h); }

  // Parent edge of every vertex reached from u; empty when v is unreachable.
  std::vector<EdgeHandle> bfs(Vertex u, Vertex v) const {
    std::vector<EdgeHandle> via(n(), kNoEdge);
    std::vector<char> seen(n(), 0);
    std::vector<Vertex> queue{u};
    seen[u] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const Vertex x = queue[i];
      for (EdgeHandle h : adj_[x]) {
        const Rec& r = edges_.at(h);
        const Vertex y = r.tail == x ? r.head : r.tail;
        if (seen[y]) continue;
        seen[y] = 1;
        via[y] = h;
        queue.push_back(y);
      }
    }
    if (!seen[v] || u == v) return {};
    return via;
  }

  /// Edges on the u..v path with sign +1 when traversed tail -> head.
  std::vector<std::pair<EdgeHandle, int>> path(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v) return {};
    const std::vector<EdgeHandle> via = bfs(u, v);
    if (via.empty()) throw std::invalid_argument("path query: endpoints are in different trees");
    std::vector<std::pair<EdgeHandle, int>> out;
    for (Vertex x = v; x != u;) {
      const Rec& r = edges_.at(via[x]);
      const Vertex prev = r.tail == x ? r.head : r.tail;
      out.emplace_back(via[x], r.tail == prev ? 1 : -1);
      x = prev;
    }
    std::reverse(out.begin(), out.end());
    return out;
  }
};

}  // namespace flowforge
