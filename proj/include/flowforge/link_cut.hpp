#pragma once

// Link-cut forest with per-edge gradient, length, flow and DETECT
// accumulators.
//
// Every forest edge is its own splay node sitting between its two endpoint
// nodes, so edge values never have to move when the tree is re-rooted. A
// node's `dir` is +1 when the edge's stored tail lies on the shallow (left,
// in-order earlier) side of it, so a path read left to right yields the
// signed sums directly.
//
// DETECT keeps slack = eps/len - A on every edge with a subtree minimum.
// After each abs-flow update the touched path is searched for slack <= 0;
// hits are confirmed exactly (len * A >= eps) and parked in a hot set until
// the next detect() or a length change.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flowforge/graph.hpp"

namespace flowforge {

using EdgeHandle = std::uint64_t;

enum class EdgeValue { kGradient, kLength };

struct PathSums {
  double gsum = 0.0;  // sum of sign(e) * g_e along u -> v
  double labs = 0.0;  // sum of len_e along the path
};

struct EdgeEnds {
  Vertex tail;
  Vertex head;
};

class DynTreeForest {
 public:
  DynTreeForest(std::size_t n, double epsilon) : n_(n), epsilon_(epsilon), nodes_(n) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
      throw std::invalid_argument("DynTreeForest: epsilon must be positive and finite");
    }
  }

  std::size_t n() const { return n_; }
  double epsilon() const { return epsilon_; }
  std::size_t edge_count() const { return handles_.size(); }

  EdgeHandle link(Vertex u, Vertex v, double g, double len) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("link: self-loop");
    check_length(len);
    if (connected(u, v)) {
      throw std::invalid_argument("link: " + std::to_string(u) + " and " + std::to_string(v) +
                                  " are already in the same tree");
    }
    const int e = allocate();
    Node& x = nodes_[e];
    x.is_edge = true;
    x.tail = u;
    x.head = v;
    x.g = g;
    x.len = len;
    x.dir = 1;  // u becomes the shallow side below
    x.key = epsilon_ / len;
    pull(e);

    // A fresh node is already the root of its own represented tree.
    nodes_[e].parent = static_cast<int>(u);  // path-parent: e hangs below u
    evert(static_cast<int>(v));
    nodes_[v].parent = e;

    const EdgeHandle h = next_handle_++;
    handles_.emplace(h, e);
    by_ends_.emplace(ends_key(u, v), h);
    nodes_[e].handle = h;
    return h;
  }

  void cut(EdgeHandle h) {
    const int e = node_of(h);
    const Vertex a = nodes_[e].tail;
    const Vertex b = nodes_[e].head;
    evert(static_cast<int>(a));
    access(static_cast<int>(b));
    splay(e);
    Node& x = nodes_[e];
    // The access left exactly the path a, e, b in this splay tree.
    if (x.left != kNil) nodes_[x.left].parent = kNil;
    if (x.right != kNil) nodes_[x.right].parent = kNil;
    x.left = x.right = kNil;
    x.parent = kNil;

    hot_.erase(h);
    by_ends_.erase(ends_key(a, b));
    handles_.erase(h);
    x = Node{};
    free_.push_back(e);
  }

  void update_edge_value(EdgeHandle h, EdgeValue which, double value) {
    if (which == EdgeValue::kGradient) {
      set_gradient(h, value);
    } else {
      set_length(h, value);
    }
  }

  void set_gradient(EdgeHandle h, double g) {
    const int e = node_of(h);
    splay(e);
    nodes_[e].g = g;
    pull(e);
  }

  void set_length(EdgeHandle h, double len) {
    check_length(len);
    const int e = node_of(h);
    splay(e);
    Node& x = nodes_[e];
    x.len = len;
    if (x.len * x.a >= epsilon_) {
      x.hot = true;
      x.key = kInf;
      hot_.insert(h);
    } else {
      x.hot = false;
      x.key = epsilon_ / x.len - x.a;
      hot_.erase(h);
    }
    pull(e);
  }

  PathSums path_sums(Vertex u, Vertex v) {
    const int root = expose_path(u, v);
    return {nodes_[root].gsum, nodes_[root].lsum};
  }

  void add_signed_flow(Vertex u, Vertex v, double eta) {
    const int root = expose_path(u, v);
    apply_signed(root, eta);
  }

  void add_abs_flow(Vertex u, Vertex v, double eta) {
    if (!(eta >= 0.0)) throw std::invalid_argument("add_abs_flow: eta must be nonnegative");
    const int root = expose_path(u, v);
    apply_abs(root, eta);
    collect_hot(root);
  }

  double flow(EdgeHandle h) { return settled(h).f; }
  double accumulator(EdgeHandle h) { return settled(h).a; }
  double gradient(EdgeHandle h) { return settled(h).g; }
  double length(EdgeHandle h) { return settled(h).len; }

  EdgeEnds ends(EdgeHandle h) const {
    const Node& x = nodes_[node_of(h)];
    return {x.tail, x.head};
  }

  /// Edges with len * A >= eps, ascending by handle; their A is reset to 0.
  std::vector<EdgeHandle> detect() {
    std::vector<EdgeHandle> out(hot_.begin(), hot_.end());
    for (EdgeHandle h : out) {
      const int e = node_of(h);
      splay(e);
      Node& x = nodes_[e];
      x.a = 0.0;
      x.hot = false;
      x.key = epsilon_ / x.len;
      pull(e);
    }
    hot_.clear();
    return out;
  }

  bool connected(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) return true;
    return find_root(static_cast<int>(u)) == find_root(static_cast<int>(v));
  }

  std::optional<EdgeHandle> find_edge(Vertex u, Vertex v) const {
    const auto it = by_ends_.find(ends_key(u, v));
    if (it == by_ends_.end()) return std::nullopt;
    return it->second;
  }

  /// Live handles in ascending order.
  std::vector<EdgeHandle> edges() const {
    std::vector<EdgeHandle> out;
    out.reserve(handles_.size());
    for (const auto& [h, node] : handles_) out.push_back(h);
    return out;
  }

 private:
  static constexpr int kNil = -1;
  static constexpr double kInf = std::numeric_limits<double>::infinity();
  // Candidates for the hot set are nodes whose slack is within this fraction
  // of eps/len; the exact product test then decides.
  static constexpr double kSlackMargin = 1e-9;

  struct Node {
    int left = kNil;
    int right = kNil;
    int parent = kNil;  // splay parent, or path-parent when not a child of it
    bool rev = false;
    bool is_edge = false;
    bool hot = false;
    int dir = 1;
    Vertex tail = kNoVertex;
    Vertex head = kNoVertex;
    EdgeHandle handle = 0;
    double g = 0.0;
    double len = 0.0;
    double f = 0.0;
    double a = 0.0;
    double key = kInf;
    // Subtree aggregates.
    double gsum = 0.0;
    double lsum = 0.0;
    double keymin = kInf;
    double ratio_max = 0.0;  // max eps/len, scales the candidate margin
    // Pending tags for the children.
    double ps = 0.0;
    double pa = 0.0;
  };

  std::size_t n_;
  double epsilon_;
  std::vector<Node> nodes_;
  std::vector<int> free_;
  std::map<EdgeHandle, int> handles_;
  std::map<std::pair<Vertex, Vertex>, EdgeHandle> by_ends_;
  std::set<EdgeHandle> hot_;
  EdgeHandle next_handle_ = 0;

  static std::pair<Vertex, Vertex> ends_key(Vertex u, Vertex v) { return {std::min(u, v), std::max(u, v)}; }

  void check_vertex(Vertex v) const {
    if (v >= n_) throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
  }

  static void check_length(double len) {
    if (!(len > 0.0) || !std::isfinite(len)) throw std::invalid_argument("edge length must be positive and finite");
  }

  int node_of(EdgeHandle h) const {
    const auto it = handles_.find(h);
    if (it == handles_.end()) throw std::invalid_argument("edge handle " + std::to_string(h) + " is not in the forest");
    return it->second;
  }

  Node& settled(EdgeHandle h) {
    const int e = node_of(h);
    splay(e);
    return nodes_[e];
  }

  int allocate() {
    if (!free_.empty()) {
      const int e = free_.back();
      free_.pop_back();
      return e;
    }
    nodes_.emplace_back();
    return static_cast<int>(nodes_.size() - 1);
  }

  bool is_root(int x) const {
    const int p = nodes_[x].parent;
    return p == kNil || (nodes_[p].left != x && nodes_[p].right != x);
  }

  void pull(int x) {
    Node& n = nodes_[x];
    n.gsum = n.is_edge ? n.dir * n.g : 0.0;
    n.lsum = n.is_edge ? n.len : 0.0;
    n.keymin = n.key;
    n.ratio_max = n.is_edge ? epsilon_ / n.len : 0.0;
    for (int c : {n.left, n.right}) {
      if (c == kNil) continue;
      const Node& k = nodes_[c];
      n.gsum += k.gsum;
      n.lsum += k.lsum;
      n.keymin = std::min(n.keymin, k.keymin);
      n.ratio_max = std::max(n.ratio_max, k.ratio_max);
    }
  }

  void apply_rev(int x) {
    if (x == kNil) return;
    Node& n = nodes_[x];
    std::swap(n.left, n.right);
    n.dir = -n.dir;
    n.gsum = -n.gsum;
    n.ps = -n.ps;
    n.rev = !n.rev;
  }

  void apply_signed(int x, double eta) {
    if (x == kNil) return;
    Node& n = nodes_[x];
    if (n.is_edge) n.f += n.dir * eta;
    n.ps += eta;
  }

  void apply_abs(int x, double eta) {
    if (x == kNil) return;
    Node& n = nodes_[x];
    if (n.is_edge) {
      n.f += eta;
      n.a += eta;
      if (!n.hot) n.key = epsilon_ / n.len - n.a;
    }
    if (n.keymin != kInf) n.keymin -= eta;
    n.pa += eta;
  }

  void push(int x) {
    Node& n = nodes_[x];
    if (n.rev) {
      apply_rev(n.left);
      apply_rev(n.right);
      n.rev = false;
    }
    if (n.ps != 0.0) {
      apply_signed(n.left, n.ps);
      apply_signed(n.right, n.ps);
      n.ps = 0.0;
    }
    if (n.pa != 0.0) {
      apply_abs(n.left, n.pa);
      apply_abs(n.right, n.pa);
      n.pa = 0.0;
    }
  }

  void rotate(int x) {
    const int p = nodes_[x].parent;
    const int g = nodes_[p].parent;
    const bool p_root = is_root(p);
    if (nodes_[p].left == x) {
      const int b = nodes_[x].right;
      nodes_[p].left = b;
      if (b != kNil) nodes_[b].parent = p;
      nodes_[x].right = p;
    } else {
      const int b = nodes_[x].left;
      nodes_[p].right = b;
      if (b != kNil) nodes_[b].parent = p;
      nodes_[x].left = p;
    }
    nodes_[p].parent = x;
    nodes_[x].parent = g;
    if (!p_root) {
      if (nodes_[g].left == p) {
        nodes_[g].left = x;
      } else {
        nodes_[g].right = x;
      }
    }
    pull(p);
    pull(x);
  }

  void splay(int x) {
    // Push pending tags from the splay root down to x first.
    std::vector<int> chain{x};
    for (int y = x; !is_root(y); y = nodes_[y].parent) chain.push_back(nodes_[y].parent);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) push(*it);
    while (!is_root(x)) {
      const int p = nodes_[x].parent;
      if (!is_root(p)) {
        const int g = nodes_[p].parent;
        const bool zigzig = (nodes_[g].left == p) == (nodes_[p].left == x);
        rotate(zigzig ? p : x);
      }
      rotate(x);
    }
  }

  void access(int x) {
    int last = kNil;
    for (int y = x; y != kNil; y = nodes_[y].parent) {
      splay(y);
      nodes_[y].right = last;
      pull(y);
      last = y;
    }
    splay(x);
  }

  void evert(int x) {
    access(x);
    apply_rev(x);
  }

  int find_root(int x) {
    access(x);
    int r = x;
    while (true) {
      push(r);
      if (nodes_[r].left == kNil) break;
      r = nodes_[r].left;
    }
    splay(r);
    return r;
  }

  /// Makes the u..v path one splay tree rooted at v with u leftmost.
  int expose_path(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (!connected(u, v)) {
      throw std::invalid_argument("path query: " + std::to_string(u) + " and " + std::to_string(v) +
                                  " are in different trees");
    }
    evert(static_cast<int>(u));
    access(static_cast<int>(v));
    return static_cast<int>(v);
  }

  /// Moves every edge of the splay tree at x whose len * A reached eps into
  /// the hot set.
  void collect_hot(int x) {
    if (x == kNil) return;
    Node& n = nodes_[x];
    if (!(n.keymin <= kSlackMargin * n.ratio_max)) return;
    push(x);
    collect_hot(n.left);
    collect_hot(n.right);
    if (n.is_edge && !n.hot) {
      if (n.len * n.a >= epsilon_) {
        n.hot = true;
        n.key = kInf;
        hot_.insert(n.handle);
      } else {
        n.key = epsilon_ / n.len - n.a;
      }
    }
    pull(x);
  }
};

}  // namespace flowforge
