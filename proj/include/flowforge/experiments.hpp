#pragma once

// Parameter sweeps behind the benchmark figures, and their CSV / gnuplot
// output. Trial i at grid point g uses seed derive_seed(derive_seed(seed, g), i),
// so any single trial can be replayed on its own.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowforge/fit.hpp"
#include "flowforge/graph.hpp"
#include "flowforge/hld.hpp"
#include "flowforge/lsst.hpp"
#include "flowforge/random.hpp"
#include "flowforge/rebuilding_game.hpp"
#include "flowforge/stretch.hpp"

namespace flowforge {

struct ExperimentConfig {
  std::string name;
  std::vector<std::size_t> grid;
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  bool record_timing = true;  // off: seconds columns are written as "-"
  double p = 0.1;             // edge probability for the random graphs

  void validate() const;
};

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"lsst-stretch", "lsst-time", "hld-intersections", "hld-time",
                                                 "rebuild-cost"};
  return names;
}

inline void ExperimentConfig::validate() const {
  bool known = false;
  for (const auto& s : experiment_names()) known = known || s == name;
  if (!known) throw std::invalid_argument("unknown experiment '" + name + "'");
  if (grid.empty()) throw std::invalid_argument("experiment grid is empty");
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must be in (0, 1]");
}

/// Grid and trial count used by the published figures.
inline ExperimentConfig default_experiment(const std::string& name) {
  ExperimentConfig cfg;
  cfg.name = name;
  if (name == "lsst-stretch" || name == "lsst-time") {
    for (std::size_t n = 50; n <= 400; n += 50) cfg.grid.push_back(n);
    cfg.trials = 10;
  } else if (name == "hld-intersections" || name == "hld-time") {
    for (std::size_t n = 64; n <= 4096; n *= 2) cfg.grid.push_back(n);
    cfg.trials = 1000;
  } else if (name == "rebuild-cost") {
    for (std::size_t m = 8; m <= 64; ++m) cfg.grid.push_back(m);
    cfg.trials = 20;
  }
  cfg.validate();
  return cfg;
}

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline std::uint64_t trial_seed(const ExperimentConfig& cfg, std::size_t point, std::size_t trial) {
  return derive_seed(derive_seed(cfg.seed, point), trial);
}

}  // namespace detail

// ---- sweeps ----

struct LsstPoint {
  std::size_t n = 0;
  double mean_m = 0.0;
  double x = 0.0;  // mean over trials of m ln n ln ln n
  double mean_stretch = 0.0;
  double mean_seconds = 0.0;  // lsst construction only
  std::size_t spanning = 0;   // trials whose output passed is_spanning_tree
  double mean_ratio = 0.0;    // mean of stretch / (m ln n ln ln n)
};

inline std::vector<LsstPoint> lsst_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<LsstPoint> out;
  for (std::size_t n : cfg.grid) {
    if (n < 3) throw std::invalid_argument("lsst sweep: n must be at least 3");
    LsstPoint pt;
    pt.n = n;
    const double scale = std::log(static_cast<double>(n)) * std::log(std::log(static_cast<double>(n)));
    for (std::size_t i = 0; i < cfg.trials; ++i) {
      const WeightedGraph g = erdos_renyi(n, cfg.p, detail::trial_seed(cfg, n, i)).graph;
      const detail::Stopwatch clock;
      const SpanningTree t = lsst(g, 0);
      pt.mean_seconds += clock.seconds();
      const double m = static_cast<double>(g.m());
      const double s = stretch(g, t);
      pt.spanning += is_spanning_tree(g, t) ? 1 : 0;
      pt.mean_m += m;
      pt.x += m * scale;
      pt.mean_stretch += s;
      pt.mean_ratio += s / (m * scale);
    }
    const double k = static_cast<double>(cfg.trials);
    pt.mean_m /= k;
    pt.x /= k;
    pt.mean_stretch /= k;
    pt.mean_seconds /= k;
    pt.mean_ratio /= k;
    out.push_back(pt);
  }
  return out;
}

struct HldPoint {
  std::size_t n = 0;
  double ln_n = 0.0;
  double avg_intersections = 0.0;  // mean over trees of the per-tree average
  double quotient = 0.0;           // avg_intersections / ln n
  double seconds = 0.0;            // mean decomposition time per tree
  HldViolations violations;        // summed over all trees
};

inline std::vector<HldPoint> hld_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<HldPoint> out;
  for (std::size_t n : cfg.grid) {
    if (n < 2) throw std::invalid_argument("hld sweep: n must be at least 2");
    HldPoint pt;
    pt.n = n;
    pt.ln_n = std::log(static_cast<double>(n));
    for (std::size_t i = 0; i < cfg.trials; ++i) {
      const RootedTreeArray tree = random_rooted_tree(n, detail::trial_seed(cfg, n, i));
      const detail::Stopwatch clock;
      const HeavyChains chains = heavy_light_decomposition(tree);
      pt.seconds += clock.seconds();
      pt.avg_intersections += chain_intersection_stats(tree, chains).average;
      const HldViolations v = check_decomposition(tree, chains);
      pt.violations.partition += v.partition;
      pt.violations.branching += v.branching;
      pt.violations.chain_depth += v.chain_depth;
    }
    const double k = static_cast<double>(cfg.trials);
    pt.avg_intersections /= k;
    pt.seconds /= k;
    pt.quotient = pt.avg_intersections / pt.ln_n;
    out.push_back(pt);
  }
  return out;
}

struct RebuildPoint {
  RebuildConfig config;  // K is the largest K over the trials
  double x = 0.0;        // mean over trials of cost_scale()
  double ledger_cost = 0.0;
  double seconds = 0.0;
  double worst_cost_ratio = 0.0;  // max over trials of cost / cost_scale
  std::uint64_t weight_forced_rounds = 0;
};

inline std::vector<RebuildPoint> rebuild_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<RebuildPoint> out;
  for (std::size_t m : cfg.grid) {
    RebuildPoint pt;
    pt.config = derive_config(m);
    std::size_t K = 1;
    for (std::size_t i = 0; i < cfg.trials; ++i) {
      RebuildConfig trial = pt.config;
      const RebuildWeights w = sample_weights(trial.T, detail::trial_seed(cfg, m, i));
      trial.K = w.K;
      K = std::max(K, w.K);
      const detail::Stopwatch clock;
      const Transcript tr = play(trial, w.W);
      pt.seconds += clock.seconds();
      pt.x += trial.cost_scale();
      pt.ledger_cost += tr.cost;
      pt.worst_cost_ratio = std::max(pt.worst_cost_ratio, tr.cost / trial.cost_scale());
      pt.weight_forced_rounds += tr.weight_forced_rounds;
    }
    const double k = static_cast<double>(cfg.trials);
    pt.config.K = K;
    pt.x /= k;
    pt.ledger_cost /= k;
    pt.seconds /= k;
    out.push_back(pt);
  }
  return out;
}

// ---- tables ----

enum class ColumnKind { kInteger, kReal, kSeconds };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::kReal;
};

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;
  bool timing_recorded = true;
  std::size_t fit_x = 0;  // column indices of the fitted line
  std::size_t fit_y = 0;
  std::optional<FitResult> fit;  // empty when fewer than two usable points
};

inline std::vector<double> table_column(const Table& t, std::size_t col) {
  std::vector<double> out;
  out.reserve(t.rows.size());
  for (const auto& row : t.rows) out.push_back(row[col]);
  return out;
}

namespace detail {

inline void attach_fit(Table& t) {
  if (t.columns[t.fit_y].kind == ColumnKind::kSeconds && !t.timing_recorded) return;
  if (t.rows.size() < 2) return;
  const std::vector<double> xs = table_column(t, t.fit_x);
  const std::vector<double> ys = table_column(t, t.fit_y);
  for (double x : xs) {
    if (x != xs.front()) {
      t.fit = fit_line(xs, ys);
      return;
    }
  }
}

}  // namespace detail

/// Runs the named sweep and returns its table with the fitted line.
inline Table run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  Table t;
  t.timing_recorded = cfg.record_timing;
  const bool lsst_exp = cfg.name == "lsst-stretch" || cfg.name == "lsst-time";
  const bool hld_exp = cfg.name == "hld-intersections" || cfg.name == "hld-time";
  if (lsst_exp) {
    t.columns = {{"n", ColumnKind::kInteger},
                 {"m", ColumnKind::kReal},
                 {"x", ColumnKind::kReal},
                 {"mean_stretch", ColumnKind::kReal},
                 {"mean_seconds", ColumnKind::kSeconds}};
    for (const LsstPoint& p : lsst_sweep(cfg)) {
      t.rows.push_back({static_cast<double>(p.n), p.mean_m, p.x, p.mean_stretch, p.mean_seconds});
    }
    t.fit_x = 2;
    t.fit_y = cfg.name == "lsst-stretch" ? 3 : 4;
  } else if (hld_exp) {
    t.columns = {{"n", ColumnKind::kInteger},
                 {"ln_n", ColumnKind::kReal},
                 {"avg_intersections", ColumnKind::kReal},
                 {"quotient", ColumnKind::kReal},
                 {"seconds", ColumnKind::kSeconds}};
    for (const HldPoint& p : hld_sweep(cfg)) {
      t.rows.push_back({static_cast<double>(p.n), p.ln_n, p.avg_intersections, p.quotient, p.seconds});
    }
    if (cfg.name == "hld-intersections") {
      t.fit_x = 1;
      t.fit_y = 2;
    } else {
      t.fit_x = 0;
      t.fit_y = 4;
    }
  } else {
    t.columns = {{"m", ColumnKind::kInteger}, {"d", ColumnKind::kInteger},         {"k", ColumnKind::kReal},
                 {"C_r", ColumnKind::kReal},  {"K", ColumnKind::kInteger},         {"T", ColumnKind::kInteger},
                 {"x", ColumnKind::kReal},    {"ledger_cost", ColumnKind::kReal}, {"seconds", ColumnKind::kSeconds}};
    for (const RebuildPoint& p : rebuild_sweep(cfg)) {
      const RebuildConfig& c = p.config;
      t.rows.push_back({static_cast<double>(c.m), static_cast<double>(c.d), c.k, c.c_r, static_cast<double>(c.K),
                        static_cast<double>(c.T), p.x, p.ledger_cost, p.seconds});
    }
    t.fit_x = 6;
    t.fit_y = 7;
  }
  detail::attach_fit(t);
  return t;
}

enum class TableFormat { kCsv, kDat };

namespace detail {

inline std::string format_cell(double v, ColumnKind kind, bool timing) {
  char buf[64];
  switch (kind) {
    case ColumnKind::kInteger: std::snprintf(buf, sizeof buf, "%.0f", v); break;
    case ColumnKind::kReal: std::snprintf(buf, sizeof buf, "%.12e", v); break;
    case ColumnKind::kSeconds:
      if (!timing) return "-";
      std::snprintf(buf, sizeof buf, "%.6e", v);
      break;
  }
  return buf;
}

}  // namespace detail

/// CSV: header row, data rows, then a "# fit" comment row. DAT: the same
/// columns whitespace-separated with "#"-prefixed header and fit lines, for
/// gnuplot. Reals use a fixed 13 significant digits.
inline void write_table(std::ostream& out, const Table& t, TableFormat format = TableFormat::kCsv) {
  const char* sep = format == TableFormat::kCsv ? "," : " ";
  if (format == TableFormat::kDat) out << "# ";
  for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? sep : "") << t.columns[c].name;
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      out << (c ? sep : "") << detail::format_cell(row[c], t.columns[c].kind, t.timing_recorded);
    }
    out << '\n';
  }
  out << "# fit" << sep << "y=" << t.columns[t.fit_y].name << sep << "x=" << t.columns[t.fit_x].name;
  if (t.fit) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%sslope=%.12e%sintercept=%.12e%sresidual_norm=%.12e", sep, t.fit->slope, sep,
                  t.fit->intercept, sep, t.fit->residual_norm);
    out << buf;
  } else {
    out << sep << (t.timing_recorded ? "unavailable" : "unavailable (timing disabled)");
  }
  out << '\n';
}

}  // namespace flowforge
