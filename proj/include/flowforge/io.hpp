#pragma once

// Text formats:
//
//   graph    "n m", then m lines "u v w" (0-indexed, edge-id order)
//   tree     "n", then n lines of space-separated children, "-" for none
//   min-cost "p min n m", "n v d" for every nonzero demand (d = required
//            net inflow), "a u v lo hi cost" per arc; 1-indexed, "c" lines
//            are comments
//   script   "INIT n eps", then one forest operation per line
//
// Writers emit the canonical form; reading a canonical file and writing it
// back reproduces it byte for byte. Doubles use the shortest text that
// round-trips.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "flowforge/flow_problem.hpp"
#include "flowforge/graph.hpp"
#include "flowforge/link_cut_fuzz.hpp"

namespace flowforge {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// File could not be opened, read, or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace detail {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /// Next non-empty line split into tokens; false at end of input.
  bool next(std::vector<std::string_view>& tokens, bool skip_comments = false) {
    while (std::getline(in_, text_)) {
      ++line_;
      if (!text_.empty() && text_.back() == '\r') text_.pop_back();
      split(tokens);
      if (tokens.empty()) continue;
      if (skip_comments && tokens[0] == "c") continue;
      return true;
    }
    return false;
  }

  std::size_t line() const { return line_; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }

  template <class T>
  T number(std::string_view tok) const {
    T value{};
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
      fail("expected a number, got '" + std::string(tok) + "'");
    }
    return value;
  }

 private:
  std::istream& in_;
  std::string text_;
  std::size_t line_ = 0;

  void split(std::vector<std::string_view>& tokens) const {
    tokens.clear();
    std::string_view s(text_);
    std::size_t i = 0;
    while (i < s.size()) {
      while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
      const std::size_t start = i;
      while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
      if (i > start) tokens.push_back(s.substr(start, i - start));
    }
  }
};

}  // namespace detail

// ---- graphs ----

inline void write_graph(std::ostream& out, const WeightedGraph& g) {
  out << g.n() << ' ' << g.m() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << format_double(e.w) << '\n';
}

inline WeightedGraph read_graph(std::istream& in) {
  detail::LineReader r(in);
  std::vector<std::string_view> tok;
  if (!r.next(tok)) r.fail("missing header 'n m'");
  if (tok.size() != 2) r.fail("header must be 'n m'");
  const auto n = r.number<std::size_t>(tok[0]);
  const auto m = r.number<std::size_t>(tok[1]);
  WeightedGraph g(n);
  for (std::size_t i = 0; i < m; ++i) {
    if (!r.next(tok)) r.fail("expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    if (tok.size() != 3) r.fail("edge line must be 'u v w'");
    const auto u = r.number<std::size_t>(tok[0]);
    const auto v = r.number<std::size_t>(tok[1]);
    const auto w = r.number<double>(tok[2]);
    if (u >= n || v >= n) r.fail("vertex out of range");
    if (u == v) r.fail("self-loop at vertex " + std::to_string(u));
    if (!(w > 0.0) || !std::isfinite(w)) r.fail("weight must be positive and finite");
    g.add_edge(u, v, w);
  }
  if (r.next(tok)) r.fail("unexpected content after the last edge");
  return g;
}

// ---- rooted trees ----

inline void write_tree(std::ostream& out, const RootedTreeArray& t) {
  out << t.n() << '\n';
  for (const auto& kids : t.children) {
    if (kids.empty()) {
      out << "-\n";
      continue;
    }
    for (std::size_t i = 0; i < kids.size(); ++i) out << (i ? " " : "") << kids[i];
    out << '\n';
  }
}

inline RootedTreeArray read_tree(std::istream& in) {
  detail::LineReader r(in);
  std::vector<std::string_view> tok;
  if (!r.next(tok)) r.fail("missing header 'n'");
  if (tok.size() != 1) r.fail("header must be 'n'");
  const auto n = r.number<std::size_t>(tok[0]);
  if (n == 0) r.fail("tree must have at least one vertex");
  RootedTreeArray t;
  t.children.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (!r.next(tok)) r.fail("expected " + std::to_string(n) + " child lists, found " + std::to_string(v));
    if (tok.size() == 1 && tok[0] == "-") continue;
    for (std::string_view s : tok) {
      const auto c = r.number<std::size_t>(s);
      if (c >= n) r.fail("child id out of range");
      t.children[v].push_back(c);
    }
  }
  if (r.next(tok)) r.fail("unexpected content after the last child list");
  try {
    t.parents();
  } catch (const std::invalid_argument& e) {
    throw ParseError(r.line(), e.what());
  }
  return t;
}

// ---- min-cost flow instances ----

inline void write_min_cost(std::ostream& out, const FlowProblem& p) {
  out << "p min " << p.n() << ' ' << p.m() << '\n';
  for (Vertex v = 0; v < p.n(); ++v) {
    if (p.dem[v] != 0) out << "n " << v + 1 << ' ' << p.dem[v] << '\n';
  }
  for (EdgeId e = 0; e < p.m(); ++e) {
    out << "a " << p.tail(e) + 1 << ' ' << p.head(e) + 1 << ' ' << p.lo[e] << ' ' << p.hi[e] << ' ' << p.cost[e]
        << '\n';
  }
}

inline FlowProblem read_min_cost(std::istream& in) {
  detail::LineReader r(in);
  std::vector<std::string_view> tok;
  if (!r.next(tok, true)) r.fail("missing problem line 'p min n m'");
  if (tok.size() != 4 || tok[0] != "p" || tok[1] != "min") r.fail("problem line must be 'p min n m'");
  const auto n = r.number<std::size_t>(tok[2]);
  const auto m = r.number<std::size_t>(tok[3]);
  FlowProblem p;
  p.graph = WeightedGraph(n);
  p.dem.assign(n, 0);
  std::vector<char> has_demand(n, 0);
  auto vertex = [&](std::string_view s) {
    const auto v = r.number<std::size_t>(s);
    if (v < 1 || v > n) r.fail("vertex " + std::string(s) + " out of range 1.." + std::to_string(n));
    return v - 1;
  };
  while (r.next(tok, true)) {
    if (tok[0] == "n") {
      if (tok.size() != 3) r.fail("demand line must be 'n v d'");
      const Vertex v = vertex(tok[1]);
      if (has_demand[v]) r.fail("duplicate demand for vertex " + std::string(tok[1]));
      has_demand[v] = 1;
      p.dem[v] = r.number<std::int64_t>(tok[2]);
    } else if (tok[0] == "a") {
      if (tok.size() != 6) r.fail("arc line must be 'a u v lo hi cost'");
      const Vertex u = vertex(tok[1]);
      const Vertex v = vertex(tok[2]);
      if (u == v) r.fail("self-loop at vertex " + std::string(tok[1]));
      const auto lo = r.number<std::int64_t>(tok[3]);
      const auto hi = r.number<std::int64_t>(tok[4]);
      if (!(lo < hi)) r.fail("arc needs lo < hi");
      p.add_arc(u, v, lo, hi, r.number<std::int64_t>(tok[5]));
    } else {
      r.fail("unknown line type '" + std::string(tok[0]) + "'");
    }
  }
  if (p.m() != m) throw ParseError(r.line(), "header promised " + std::to_string(m) + " arcs, found " + std::to_string(p.m()));
  std::int64_t total = 0;
  for (std::int64_t d : p.dem) total += d;
  if (total != 0) throw ParseError(r.line(), "demands do not sum to zero");
  return p;
}

// ---- forest scripts ----

inline void write_script(std::ostream& out, const Script& s) {
  out << "INIT " << s.n << ' ' << format_double(s.epsilon) << '\n';
  for (const ScriptOp& op : s.ops) {
    switch (op.kind) {
      case OpKind::kLink:
        out << "LINK " << op.u << ' ' << op.v << ' ' << format_double(op.x) << ' ' << format_double(op.y);
        break;
      case OpKind::kCut: out << "CUT " << op.u << ' ' << op.v; break;
      case OpKind::kSetG: out << "SETG " << op.u << ' ' << op.v << ' ' << format_double(op.x); break;
      case OpKind::kSetL: out << "SETL " << op.u << ' ' << op.v << ' ' << format_double(op.x); break;
      case OpKind::kPAdd: out << "PADD " << op.u << ' ' << op.v << ' ' << format_double(op.x); break;
      case OpKind::kAAdd: out << "AADD " << op.u << ' ' << op.v << ' ' << format_double(op.x); break;
      case OpKind::kQueryFlow: out << "QF " << op.u << ' ' << op.v; break;
      case OpKind::kQueryPath: out << "QP " << op.u << ' ' << op.v; break;
      case OpKind::kDetect: out << "DET"; break;
    }
    out << '\n';
  }
}

inline Script read_script(std::istream& in) {
  detail::LineReader r(in);
  std::vector<std::string_view> tok;
  if (!r.next(tok)) r.fail("missing header 'INIT n eps'");
  if (tok.size() != 3 || tok[0] != "INIT") r.fail("header must be 'INIT n eps'");
  Script s;
  s.n = r.number<std::size_t>(tok[1]);
  s.epsilon = r.number<double>(tok[2]);
  if (!(s.epsilon > 0.0)) r.fail("epsilon must be positive");
  struct Shape {
    std::string_view name;
    OpKind kind;
    std::size_t values;  // numbers after "u v"
  };
  static constexpr Shape kShapes[] = {
      {"LINK", OpKind::kLink, 2}, {"CUT", OpKind::kCut, 0},       {"SETG", OpKind::kSetG, 1},
      {"SETL", OpKind::kSetL, 1}, {"PADD", OpKind::kPAdd, 1},     {"AADD", OpKind::kAAdd, 1},
      {"QF", OpKind::kQueryFlow, 0}, {"QP", OpKind::kQueryPath, 0},
  };
  while (r.next(tok)) {
    if (tok[0] == "DET") {
      if (tok.size() != 1) r.fail("DET takes no arguments");
      s.ops.push_back({OpKind::kDetect});
      continue;
    }
    const Shape* shape = nullptr;
    for (const Shape& sh : kShapes) {
      if (sh.name == tok[0]) shape = &sh;
    }
    if (!shape) r.fail("unknown operation '" + std::string(tok[0]) + "'");
    if (tok.size() != 3 + shape->values) r.fail(std::string(shape->name) + ": wrong number of arguments");
    ScriptOp op{shape->kind, r.number<std::size_t>(tok[1]), r.number<std::size_t>(tok[2])};
    if (op.u >= s.n || op.v >= s.n) r.fail("vertex out of range");
    if (shape->values >= 1) op.x = r.number<double>(tok[3]);
    if (shape->values >= 2) op.y = r.number<double>(tok[4]);
    s.ops.push_back(op);
  }
  return s;
}

// ---- files ----

template <class Reader>
auto read_file(const std::string& path, Reader&& reader) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return reader(in);
}

template <class Writer>
void write_file(const std::string& path, Writer&& writer) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  writer(out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace flowforge
