// Command-line front end: benchmark sweeps, solvers, and the forest fuzzer.
// Exit codes: 0 success, 2 validation failure, 1 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "flowforge/flowforge.hpp"

namespace ff = flowforge;

namespace {

constexpr int kOk = 0;
constexpr int kIoFailure = 1;
constexpr int kValidationFailure = 2;

/// "a:b:step" (inclusive) or "a,b,c".
std::vector<std::size_t> parse_grid(const std::string& text) {
  auto number = [&](const std::string& s) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (s.empty() || pos != s.size() || s[0] == '-') throw std::invalid_argument("bad grid value '" + s + "'");
    return static_cast<std::size_t>(v);
  };
  std::vector<std::size_t> grid;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw std::invalid_argument("grid range must be a:b:step");
    const std::size_t a = number(parts[0]);
    const std::size_t b = number(parts[1]);
    const std::size_t step = number(parts[2]);
    if (step == 0 || a > b) throw std::invalid_argument("grid range needs a <= b and step > 0");
    for (std::size_t v = a; v <= b; v += step) grid.push_back(v);
  } else {
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) grid.push_back(number(part));
  }
  if (grid.empty()) throw std::invalid_argument("grid is empty");
  return grid;
}

/// Writes to --out when given, stdout otherwise.
template <class Writer>
void emit(const std::string& path, Writer&& writer) {
  if (path.empty()) {
    writer(std::cout);
    std::cout.flush();
  } else {
    ff::write_file(path, writer);
  }
}

struct BenchFlags {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::string grid;
  std::string out;
  std::string format = "csv";
  std::string experiment;
  double p = 0.1;
  bool no_timing = false;
};

void add_bench_flags(CLI::App* cmd, BenchFlags& f, const std::vector<std::string>& experiments) {
  cmd->add_option("--seed", f.seed, "base seed (default 1)");
  cmd->add_option("--trials", f.trials, "trials per grid point (default: the published count)");
  cmd->add_option("--grid", f.grid, "grid as a:b:step or a comma list");
  cmd->add_option("--out", f.out, "output file (default stdout)");
  cmd->add_option("--format", f.format, "csv or dat")->check(CLI::IsMember({"csv", "dat"}));
  f.experiment = experiments.front();
  cmd->add_option("--experiment", f.experiment, "which figure to reproduce")->check(CLI::IsMember(experiments));
  cmd->add_flag("--no-timing", f.no_timing, "write '-' for wall-clock columns (byte-reproducible output)");
}

void run_bench(const std::string& prefix, const BenchFlags& f) {
  ff::ExperimentConfig cfg = ff::default_experiment(prefix + f.experiment);
  if (f.seed) cfg.seed = *f.seed;
  if (f.trials) cfg.trials = *f.trials;
  if (!f.grid.empty()) cfg.grid = parse_grid(f.grid);
  cfg.p = f.p;
  cfg.record_timing = !f.no_timing;
  const ff::Table table = ff::run_experiment(cfg);
  const auto format = f.format == "dat" ? ff::TableFormat::kDat : ff::TableFormat::kCsv;
  emit(f.out, [&](std::ostream& os) { ff::write_table(os, table, format); });
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flowforge: almost-linear flow building blocks at desk scale"};
  app.require_subcommand(1);

  BenchFlags lsst_flags;
  auto* lsst_cmd = app.add_subcommand("lsst-bench", "low-stretch spanning trees on random graphs");
  add_bench_flags(lsst_cmd, lsst_flags, {"stretch", "time"});
  lsst_cmd->add_option("--p", lsst_flags.p, "edge probability of the random graphs");

  BenchFlags hld_flags;
  auto* hld_cmd = app.add_subcommand("hld-bench", "heavy-light decomposition of random trees");
  add_bench_flags(hld_cmd, hld_flags, {"intersections", "time"});

  BenchFlags rebuild_flags;
  std::string transcript_path;
  std::size_t transcript_m = 0;
  auto* rebuild_cmd = app.add_subcommand("rebuild-bench", "rebuilding game cost sweep");
  add_bench_flags(rebuild_cmd, rebuild_flags, {"cost"});
  rebuild_cmd->add_option("--transcript", transcript_path, "also write the round-by-round transcript of one game");
  rebuild_cmd->add_option("--transcript-m", transcript_m, "m for the transcript game (default: first grid point)");

  std::string ipm_input;
  std::string ipm_out;
  std::uint64_t ipm_seed = 1;
  std::size_t ipm_n = 8;
  std::size_t ipm_extra = 8;
  std::int64_t ipm_U = 20;
  std::int64_t ipm_C = 10;
  bool ipm_signed = false;
  ff::IpmOptions ipm_opt;
  bool ipm_fixed_kappa = false;
  auto* ipm_cmd = app.add_subcommand("ipm-solve", "potential-reduction IPM on a min-cost flow instance");
  ipm_cmd->add_option("--input", ipm_input, "min-cost instance file (default: a random instance)");
  ipm_cmd->add_option("--out", ipm_out, "write the final flow, one value per line");
  ipm_cmd->add_option("--seed", ipm_seed, "seed of the random instance");
  ipm_cmd->add_option("--n", ipm_n, "vertices of the random instance");
  ipm_cmd->add_option("--extra", ipm_extra, "non-tree edges of the random instance");
  ipm_cmd->add_option("--U", ipm_U, "capacity bound of the random instance");
  ipm_cmd->add_option("--C", ipm_C, "cost bound of the random instance");
  ipm_cmd->add_flag("--signed-costs", ipm_signed, "allow negative costs in the random instance");
  ipm_cmd->add_option("--kappa", ipm_opt.kappa, "step parameter (default exp(-(ln m)^(7/8) ln ln m))");
  ipm_cmd->add_option("--max-iter", ipm_opt.max_iter, "iteration limit");
  ipm_cmd->add_option("--gap-tol", ipm_opt.gap_tol, "stop when c.f - F* falls below this");
  ipm_cmd->add_flag("--fixed-kappa", ipm_fixed_kappa, "keep kappa fixed instead of adapting it to the cycle ratio");

  std::string mcmf_input;
  std::string mcmf_out;
  bool mcmf_brute = false;
  auto* mcmf_cmd = app.add_subcommand("mcmf", "exact min-cost flow by successive shortest paths");
  mcmf_cmd->add_option("--input", mcmf_input, "min-cost instance file")->required();
  mcmf_cmd->add_option("--out", mcmf_out, "write the optimal flow, one value per line");
  mcmf_cmd->add_flag("--brute", mcmf_brute, "cross-check with exhaustive enumeration (tiny instances only)");

  std::vector<double> cross_C = {0.5, 1.0, 1.5, 2.0};
  std::string cross_out;
  auto* cross_cmd = app.add_subcommand("crossover", "closed-form comparison against Edmonds-Karp");
  cross_cmd->add_option("--C", cross_C, "constants in the exponent")->delimiter(',');
  cross_cmd->add_option("--out", cross_out, "output file (default stdout)");

  std::uint64_t fuzz_seed = 1;
  std::size_t fuzz_trials = 10;
  ff::FuzzOptions fuzz_opt;
  std::string fuzz_script;
  std::string fuzz_dump;
  auto* fuzz_cmd = app.add_subcommand("fuzz-linkcut", "compare the link-cut forest with a naive mirror");
  fuzz_cmd->add_option("--seed", fuzz_seed, "base seed; script i uses a derived sub-seed");
  fuzz_cmd->add_option("--trials", fuzz_trials, "number of random scripts");
  fuzz_cmd->add_option("--n", fuzz_opt.n, "vertices per script");
  fuzz_cmd->add_option("--ops", fuzz_opt.ops, "operations per script");
  fuzz_cmd->add_option("--script", fuzz_script, "replay this script file instead of random ones");
  fuzz_cmd->add_option("--dump", fuzz_dump, "write the first random script to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidationFailure;
  }

  try {
    if (*lsst_cmd) run_bench("lsst-", lsst_flags);
    if (*hld_cmd) run_bench("hld-", hld_flags);
    if (*rebuild_cmd) {
      run_bench("rebuild-", rebuild_flags);
      if (!transcript_path.empty()) {
        std::size_t m = transcript_m;
        if (m == 0) m = rebuild_flags.grid.empty() ? 8 : parse_grid(rebuild_flags.grid).front();
        ff::RebuildConfig cfg = ff::derive_config(m);
        const std::uint64_t seed = rebuild_flags.seed.value_or(1);
        const ff::RebuildWeights w = ff::sample_weights(cfg.T, ff::derive_seed(ff::derive_seed(seed, m), 0));
        cfg.K = w.K;
        const ff::Transcript tr = ff::play(cfg, w.W, true);
        ff::write_file(transcript_path, [&](std::ostream& os) { ff::write_transcript_csv(os, tr); });
      }
    }
    if (*ipm_cmd) {
      ff::FlowProblem p;
      std::vector<double> f0;
      if (ipm_input.empty()) {
        ff::InteriorInstance inst = ff::generate_interior_instance(ipm_n, ipm_extra, ipm_U, ipm_C, ipm_seed, ipm_signed);
        p = std::move(inst.problem);
        f0 = std::move(inst.f0);
      } else {
        p = ff::read_file(ipm_input, ff::read_min_cost);
        std::optional<std::vector<double>> start = ff::find_interior_point(p);
        if (!start) throw std::invalid_argument("instance is infeasible or has no strictly interior flow");
        f0 = std::move(*start);
      }
      const std::optional<ff::MinCostResult> exact = ff::ssp_min_cost(p);
      if (!exact) throw std::invalid_argument("instance is infeasible");
      ipm_opt.adaptive_kappa = !ipm_fixed_kappa;
      const ff::IpmReport rep = ff::solve(p, f0, static_cast<double>(exact->cost), ipm_opt);
      std::cout << "status " << ff::to_string(rep.status) << '\n'
                << "iterations " << rep.iterations << '\n'
                << "kappa " << fmt(rep.kappa) << '\n'
                << "optimum " << exact->cost << '\n'
                << "final_cost " << fmt(rep.final_cost) << '\n'
                << "gap " << fmt(rep.gap) << '\n'
                << "potential_start " << (rep.potential_trace.empty() ? "-" : fmt(rep.potential_trace.front())) << '\n'
                << "potential_end " << (rep.potential_trace.empty() ? "-" : fmt(rep.potential_trace.back())) << '\n';
      if (!ipm_out.empty()) {
        ff::write_file(ipm_out, [&](std::ostream& os) {
          for (double x : rep.flow) os << ff::format_double(x) << '\n';
        });
      }
      if (rep.status != ff::IpmStatus::kConverged) return kValidationFailure;
    }
    if (*mcmf_cmd) {
      const ff::FlowProblem p = ff::read_file(mcmf_input, ff::read_min_cost);
      const std::optional<ff::MinCostResult> r = ff::ssp_min_cost(p);
      if (!r) {
        std::cout << "infeasible\n";
        return kValidationFailure;
      }
      std::cout << "cost " << r->cost << '\n';
      if (mcmf_brute) {
        const std::optional<ff::MinCostResult> b = ff::brute_force_min_cost(p);
        std::cout << "brute_force_cost " << (b ? std::to_string(b->cost) : "infeasible") << '\n';
        if (!b || b->cost != r->cost) return kValidationFailure;
      }
      emit(mcmf_out, [&](std::ostream& os) {
        for (std::int64_t x : r->flow) os << x << '\n';
      });
    }
    if (*cross_cmd) {
      emit(cross_out, [&](std::ostream& os) {
        os << "C,crossover_ln_m,crossover_log10_m,log10_ratio_m1e10,log10_ratio_m1e1000\n";
        for (double C : cross_C) {
          const double x = ff::crossover_logm(C);
          os << fmt(C) << ',' << fmt(x) << ',' << fmt(x / ff::kLn10) << ',' << fmt(ff::ek_ratio_log10(10.0, C)) << ','
             << fmt(ff::ek_ratio_log10(1000.0, C)) << '\n';
        }
        const ff::StationaryPoint sp = ff::ipm_stationary();
        os << "# stationary_ln_m," << fmt(sp.x_root) << ",min_log10," << fmt(sp.min_log10) << '\n';
        os << "# derivative_threshold," << fmt(ff::derivative_threshold()) << '\n';
      });
    }
    if (*fuzz_cmd) {
      std::size_t divergences = 0;
      std::size_t scripts = 0;
      auto check = [&](const ff::Script& s) {
        const ff::FuzzReport r = ff::compare_with_mirror(s);
        ++scripts;
        divergences += r.divergences;
        if (r.divergences > 0) {
          std::cout << "script " << scripts - 1 << ": " << r.divergences << " divergences; first: " << r.first_divergence
                    << '\n';
        }
      };
      if (!fuzz_script.empty()) {
        check(ff::read_file(fuzz_script, ff::read_script));
      } else {
        for (std::size_t i = 0; i < fuzz_trials; ++i) {
          const ff::Script s = ff::generate_script(fuzz_opt, ff::derive_seed(fuzz_seed, i));
          if (i == 0 && !fuzz_dump.empty()) ff::write_file(fuzz_dump, [&](std::ostream& os) { ff::write_script(os, s); });
          check(s);
        }
      }
      std::cout << "scripts " << scripts << " divergences " << divergences << '\n';
      if (divergences > 0) return kValidationFailure;
    }
  } catch (const ff::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const ff::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidationFailure;
  }
  return kOk;
}
