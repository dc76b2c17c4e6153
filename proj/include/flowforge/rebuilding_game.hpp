#pragma once

// The rebuilding game: d+1 levels, a hidden per-round weight, and a player
// who pays C_r * m / k^i to rebuild levels i..d.
//
// Player strategy: first fix the smallest stale level (if any), then, while
// the weight condition forces a move, fix levels d, d-1, ..., 0 in that
// order. A level-0 fix always clears the weight condition, so a round never
// needs more than d + 2 fixes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowforge/random.hpp"

namespace flowforge {

struct RebuildConfig {
  std::size_t m = 0;
  std::size_t d = 0;
  double k = 0.0;        // m^(1/d); may fall below 2 at desk scale
  double gamma_g = 0.0;  // update frequency
  double c_r = 0.0;      // rebuilding cost
  std::size_t K = 1;     // weight range: ln W in (-K, K)
  std::uint64_t T = 0;   // rounds

  /// Rounds a level may go without a rebuild before it is stale.
  double stale_after(std::size_t level) const {
    return gamma_g * static_cast<double>(m) / std::pow(k, static_cast<double>(level));
  }
  double fix_cost(std::size_t level) const {
    return c_r * static_cast<double>(m) / std::pow(k, static_cast<double>(level));
  }
  /// (C_r K d / gamma_g)(m + T) with d counted as d + 1 levels.
  double cost_scale() const {
    return c_r * static_cast<double>(K) * static_cast<double>(d + 1) / gamma_g *
           (static_cast<double>(m) + static_cast<double>(T));
  }

  void validate() const {
    if (m == 0) throw std::invalid_argument("rebuild config: m must be positive");
    if (!(gamma_g > 0.0 && gamma_g < 1.0)) throw std::invalid_argument("rebuild config: gamma_g must be in (0, 1)");
    if (!(c_r >= 1.0)) throw std::invalid_argument("rebuild config: C_r must be at least 1");
    if (K < 1) throw std::invalid_argument("rebuild config: K must be at least 1");
    if (T < 1) throw std::invalid_argument("rebuild config: T must be at least 1");
    if (!(k > 0.0)) throw std::invalid_argument("rebuild config: k must be positive");
  }
};

/// Config with explicit parameters; k = m^(1/d), or m when d = 0.
inline RebuildConfig make_config(std::size_t m, std::size_t d, double gamma_g, double c_r, std::size_t K,
                                 std::uint64_t T) {
  RebuildConfig cfg;
  cfg.m = m;
  cfg.d = d;
  cfg.k = d == 0 ? static_cast<double>(m) : std::pow(static_cast<double>(m), 1.0 / static_cast<double>(d));
  cfg.gamma_g = gamma_g;
  cfg.c_r = c_r;
  cfg.K = K;
  cfg.T = T;
  cfg.validate();
  return cfg;
}

/// Desk-scale schedule: d = floor(5 (ln m)^(1/8)), C_r = exp((ln m)^(7/8) ln ln m),
/// gamma_g = 1/C_r, Q = m C_r, T = floor((m + Q) C_r). K is set to the
/// Uniform(1, 1000) support bound ceil(ln 1000) = 7 until weights are drawn.
inline RebuildConfig derive_config(std::size_t m) {
  if (m < 8) throw std::invalid_argument("derive_config: m must be at least 8");
  const double lm = std::log(static_cast<double>(m));
  const auto d = static_cast<std::size_t>(std::floor(5.0 * std::pow(lm, 1.0 / 8.0)));
  const double c_r = std::exp(std::pow(lm, 7.0 / 8.0) * std::log(lm));
  const double q = static_cast<double>(m) * c_r;
  const auto T = static_cast<std::uint64_t>(std::floor((static_cast<double>(m) + q) * c_r));
  return make_config(m, d, 1.0 / c_r, c_r, 7, T);
}

struct RebuildWeights {
  std::vector<double> W;  // W[t - 1] is the weight of round t
  std::size_t K = 1;
};

/// i.i.d. Uniform(1, 1000) weights; K = ceil(ln max W), bumped so that
/// ln W < K holds strictly.
inline RebuildWeights sample_weights(std::uint64_t T, std::uint64_t seed) {
  if (T < 1) throw std::invalid_argument("sample_weights: T must be at least 1");
  Rng rng(seed);
  RebuildWeights out;
  out.W.resize(T);
  double hi = 1.0;
  for (double& w : out.W) {
    w = rng.uniform(1.0, 1000.0);
    hi = std::max(hi, w);
  }
  const double lhi = std::log(hi);
  double K = std::ceil(lhi);
  if (K <= lhi) K += 1.0;
  out.K = static_cast<std::size_t>(std::max(1.0, K));
  return out;
}

struct RebuildState {
  std::vector<std::uint64_t> prevs;          // last rebuild round per level
  std::vector<std::uint64_t> rounds_since;   // t - prevs[l]
  std::uint64_t s = 1;                       // step counter (1-based, as in the game)
  std::uint64_t t = 1;                       // current round
  double cost = 0.0;

  static RebuildState initial(const RebuildConfig& cfg) {
    RebuildState st;
    st.prevs.assign(cfg.d + 1, 1);
    st.rounds_since.assign(cfg.d + 1, 0);
    return st;
  }

  /// Moves to the next round; every level ages by one.
  void advance_round() {
    ++t;
    for (auto& r : rounds_since) ++r;
  }
};

struct ForcingState {
  bool weight_forced = false;
  std::vector<std::size_t> stale_levels;

  bool any() const { return weight_forced || !stale_levels.empty(); }
};

/// W is indexed by round: W[r - 1] is round r's weight.
inline ForcingState forcing_state(const RebuildState& st, const RebuildConfig& cfg, const std::vector<double>& W) {
  if (st.t < 1 || st.t > W.size()) throw std::invalid_argument("forcing_state: round outside the weight vector");
  ForcingState out;
  double sum = 0.0;
  for (std::uint64_t p : st.prevs) sum += W.at(p - 1);
  out.weight_forced = sum > 2.0 * static_cast<double>(cfg.d + 1) * W[st.t - 1];
  for (std::size_t l = 0; l <= cfg.d; ++l) {
    if (static_cast<double>(st.rounds_since[l]) >= cfg.stale_after(l)) out.stale_levels.push_back(l);
  }
  return out;
}

/// Fix at level i in round t: levels i..d are rebuilt.
inline void fix(RebuildState& st, const RebuildConfig& cfg, std::size_t i, std::uint64_t t) {
  if (i > cfg.d) throw std::invalid_argument("fix: level " + std::to_string(i) + " out of range");
  for (std::size_t j = i; j <= cfg.d; ++j) {
    st.prevs[j] = t;
    st.rounds_since[j] = 0;
  }
  ++st.s;
  st.cost += cfg.fix_cost(i);
}

struct RoundRecord {
  std::uint64_t t = 0;
  double W = 0.0;
  std::vector<std::size_t> levels;
  double cumulative_cost = 0.0;
};

struct Transcript {
  std::vector<RoundRecord> rounds;  // filled only when requested
  std::vector<std::uint64_t> fixes_per_level;
  std::uint64_t rounds_played = 0;
  std::uint64_t weight_forced_rounds = 0;
  double cost = 0.0;
};

/// Plays all T rounds. Throws std::logic_error if the strategy ever needs
/// more than d + 2 fixes in a round or leaves a forcing condition standing.
inline Transcript play(const RebuildConfig& cfg, const std::vector<double>& W, bool record_rounds = false) {
  cfg.validate();
  if (W.size() < cfg.T) throw std::invalid_argument("play: fewer weights than rounds");
  RebuildState st = RebuildState::initial(cfg);
  Transcript tr;
  tr.fixes_per_level.assign(cfg.d + 1, 0);
  std::vector<std::size_t> levels;
  for (std::uint64_t t = 1; t <= cfg.T; ++t) {
    if (t > 1) st.advance_round();
    levels.clear();
    auto do_fix = [&](std::size_t i) {
      fix(st, cfg, i, t);
      levels.push_back(i);
      ++tr.fixes_per_level[i];
    };

    ForcingState f = forcing_state(st, cfg, W);
    if (!f.stale_levels.empty()) {
      do_fix(f.stale_levels.front());
      f = forcing_state(st, cfg, W);
    }
    if (f.weight_forced) ++tr.weight_forced_rounds;
    for (std::size_t i = cfg.d + 1; f.weight_forced && i-- > 0;) {
      do_fix(i);
      f = forcing_state(st, cfg, W);
    }
    if (levels.size() > cfg.d + 2) throw std::logic_error("play: more than d + 2 fixes in one round");
    if (f.any()) throw std::logic_error("play: round " + std::to_string(t) + " ended with a forcing condition");

    if (record_rounds) tr.rounds.push_back({t, W[t - 1], levels, st.cost});
  }
  tr.rounds_played = cfg.T;
  tr.cost = st.cost;
  return tr;
}

/// One row per round: t,W,n_fixes,levels,cumulative_cost (levels joined by ';').
inline void write_transcript_csv(std::ostream& out, const Transcript& tr) {
  out << "t,W,n_fixes,levels,cumulative_cost\n";
  char buf[64];
  for (const RoundRecord& r : tr.rounds) {
    out << r.t << ',';
    std::snprintf(buf, sizeof buf, "%.17g", r.W);
    out << buf << ',' << r.levels.size() << ',';
    for (std::size_t i = 0; i < r.levels.size(); ++i) out << (i ? ";" : "") << r.levels[i];
    std::snprintf(buf, sizeof buf, "%.17g", r.cumulative_cost);
    out << ',' << buf << '\n';
  }
}

}  // namespace flowforge
