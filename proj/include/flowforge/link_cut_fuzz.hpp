#pragma once

// Replayable operation scripts for the dynamic forest, a random script
// generator, and a differential runner against the naive mirror.
//
// Generated values are small dyadic rationals, so every sum and product the
// two structures form is exact and DETECT sets can be compared for equality.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "flowforge/link_cut.hpp"
#include "flowforge/naive_forest.hpp"
#include "flowforge/random.hpp"

namespace flowforge {

enum class OpKind { kLink, kCut, kSetG, kSetL, kPAdd, kAAdd, kQueryFlow, kQueryPath, kDetect };

/// One script line. Edges are named by their endpoints; LINK uses x = g and
/// y = len, SETG/SETL/PADD/AADD use x.
struct ScriptOp {
  OpKind kind = OpKind::kDetect;
  Vertex u = 0;
  Vertex v = 0;
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const ScriptOp&, const ScriptOp&) = default;
};

struct Script {
  std::size_t n = 0;
  double epsilon = 1.0;
  std::vector<ScriptOp> ops;

  friend bool operator==(const Script&, const Script&) = default;
};

/// What a query or detect produced. Detected edges are reported as sorted
/// (min, max) endpoint pairs so different structures compare directly.
struct Observation {
  std::size_t op_index = 0;
  std::vector<double> values;
  std::vector<std::pair<Vertex, Vertex>> detected;
};

struct FuzzOptions {
  std::size_t n = 256;
  std::size_t ops = 10000;
  double epsilon = 16.0;
};

inline Script generate_script(const FuzzOptions& opt, std::uint64_t seed) {
  if (opt.n < 2) throw std::invalid_argument("generate_script: need at least 2 vertices");
  Rng rng(seed);
  NaiveForest mirror(opt.n, opt.epsilon);
  Script script{opt.n, opt.epsilon, {}};
  script.ops.reserve(opt.ops);

  auto dyadic = [&](std::int64_t lo, std::int64_t hi, double denom) {
    return static_cast<double>(rng.uniform_int(lo, hi)) / denom;
  };
  auto random_edge = [&]() {
    const std::vector<EdgeHandle> live = mirror.edges();
    return mirror.ends(live[rng.index(live.size())]);
  };
  auto random_pair_in_tree = [&]() {
    const Vertex u = rng.index(opt.n);
    const std::vector<Vertex> comp = mirror.component(u);
    return std::pair{u, comp[rng.index(comp.size())]};
  };

  while (script.ops.size() < opt.ops) {
    const double roll = rng.uniform01();
    const bool has_edges = mirror.edge_count() > 0;
    // Bias towards linking while the forest is sparse so paths get long.
    const double link_share = mirror.edge_count() < opt.n * 3 / 4 ? 0.35 : 0.10;
    ScriptOp op;
    if (roll < link_share || !has_edges) {
      const Vertex u = rng.index(opt.n);
      const Vertex v = rng.index(opt.n);
      if (mirror.connected(u, v)) continue;
      op = {OpKind::kLink, u, v, dyadic(-32, 32, 4.0), dyadic(1, 16, 8.0)};
      mirror.link(u, v, op.x, op.y);
    } else {
      const double r = rng.uniform01();
      if (r < 0.10) {
        const EdgeEnds e = random_edge();
        op = {OpKind::kCut, e.tail, e.head};
        mirror.cut(*mirror.find_edge(e.tail, e.head));
      } else if (r < 0.20) {
        const EdgeEnds e = random_edge();
        op = {OpKind::kSetG, e.tail, e.head, dyadic(-32, 32, 4.0)};
      } else if (r < 0.26) {
        const EdgeEnds e = random_edge();
        op = {OpKind::kSetL, e.tail, e.head, dyadic(1, 16, 8.0)};
        mirror.set_length(*mirror.find_edge(e.tail, e.head), op.x);
      } else if (r < 0.44) {
        const auto [u, v] = random_pair_in_tree();
        op = {OpKind::kPAdd, u, v, dyadic(-16, 16, 4.0)};
      } else if (r < 0.64) {
        const auto [u, v] = random_pair_in_tree();
        op = {OpKind::kAAdd, u, v, dyadic(0, 16, 4.0)};
        mirror.add_abs_flow(u, v, op.x);
      } else if (r < 0.76) {
        const EdgeEnds e = random_edge();
        op = {OpKind::kQueryFlow, e.tail, e.head};
      } else if (r < 0.94) {
        const auto [u, v] = random_pair_in_tree();
        op = {OpKind::kQueryPath, u, v};
      } else {
        op = {OpKind::kDetect};
      }
    }
    script.ops.push_back(op);
  }
  return script;
}

/// Runs a script on any forest with the DynTreeForest interface and returns
/// the observations of every query and detect.
template <class Forest>
std::vector<Observation> replay(const Script& script) {
  Forest forest(script.n, script.epsilon);
  std::vector<Observation> out;
  auto edge = [&](const ScriptOp& op) {
    const auto h = forest.find_edge(op.u, op.v);
    if (!h) {
      throw std::invalid_argument("script: no edge " + std::to_string(op.u) + "-" + std::to_string(op.v));
    }
    return *h;
  };
  for (std::size_t i = 0; i < script.ops.size(); ++i) {
    const ScriptOp& op = script.ops[i];
    switch (op.kind) {
      case OpKind::kLink:
        forest.link(op.u, op.v, op.x, op.y);
        break;
      case OpKind::kCut:
        forest.cut(edge(op));
        break;
      case OpKind::kSetG:
        forest.set_gradient(edge(op), op.x);
        break;
      case OpKind::kSetL:
        forest.set_length(edge(op), op.x);
        break;
      case OpKind::kPAdd:
        forest.add_signed_flow(op.u, op.v, op.x);
        break;
      case OpKind::kAAdd:
        forest.add_abs_flow(op.u, op.v, op.x);
        break;
      case OpKind::kQueryFlow:
        out.push_back({i, {forest.flow(edge(op))}, {}});
        break;
      case OpKind::kQueryPath: {
        const PathSums s = forest.path_sums(op.u, op.v);
        out.push_back({i, {s.gsum, s.labs}, {}});
        break;
      }
      case OpKind::kDetect: {
        Observation obs{i, {}, {}};
        for (EdgeHandle h : forest.detect()) {
          const EdgeEnds e = forest.ends(h);
          obs.detected.emplace_back(std::min(e.tail, e.head), std::max(e.tail, e.head));
        }
        std::sort(obs.detected.begin(), obs.detected.end());
        out.push_back(std::move(obs));
        break;
      }
    }
  }
  return out;
}

inline bool close_relative(double a, double b, double rel = 1e-9) {
  return a == b || std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b));
}

struct FuzzReport {
  std::size_t observations = 0;
  std::size_t divergences = 0;
  std::string first_divergence;  // empty when none
};

inline FuzzReport compare_with_mirror(const Script& script) {
  const std::vector<Observation> fast = replay<DynTreeForest>(script);
  const std::vector<Observation> slow = replay<NaiveForest>(script);
  FuzzReport report;
  report.observations = slow.size();
  auto diverge = [&](std::size_t op, const std::string& what) {
    if (report.divergences++ == 0) {
      std::ostringstream msg;
      msg << "op " << op << ": " << what;
      report.first_divergence = msg.str();
    }
  };
  if (fast.size() != slow.size()) {
    diverge(0, "observation counts differ");
    return report;
  }
  for (std::size_t i = 0; i < slow.size(); ++i) {
    const Observation& a = fast[i];
    const Observation& b = slow[i];
    bool same = a.op_index == b.op_index && a.values.size() == b.values.size() && a.detected == b.detected;
    for (std::size_t k = 0; same && k < a.values.size(); ++k) same = close_relative(a.values[k], b.values[k]);
    if (!same) {
      std::ostringstream what;
      what << "fast {";
      for (double x : a.values) what << ' ' << x;
      what << " | " << a.detected.size() << " detected } vs mirror {";
      for (double x : b.values) what << ' ' << x;
      what << " | " << b.detected.size() << " detected }";
      diverge(b.op_index, what.str());
    }
  }
  return report;
}

}  // namespace flowforge
