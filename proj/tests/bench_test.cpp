#include <gtest/gtest.h>

#include <sstream>

#include "flowforge/experiments.hpp"
#include "flowforge/io.hpp"
#include "flowforge/ipm.hpp"
#include "oracles.hpp"

using namespace flowforge;

namespace {

template <class Write, class Read>
std::string roundtrip(const std::string& text, Read read, Write write) {
  std::istringstream in(text);
  const auto obj = read(in);
  std::ostringstream out;
  write(out, obj);
  return out.str();
}

template <class Read>
std::size_t parse_error_line(const std::string& text, Read read) {
  std::istringstream in(text);
  try {
    read(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(FitLine, ExactLine) {
  const std::vector<double> x = {0, 1, 2, 3, 4};
  const std::vector<double> y = {1, 3, 5, 7, 9};
  const FitResult f = fit_line(x, y);
  EXPECT_EQ(f.slope, 2.0);
  EXPECT_EQ(f.intercept, 1.0);
  EXPECT_EQ(f.residual_norm, 0.0);
}

TEST(FitLine, ConstantY) {
  const FitResult f = fit_line(std::vector<double>{1, 2, 5}, std::vector<double>{4, 4, 4});
  EXPECT_EQ(f.slope, 0.0);
  EXPECT_EQ(f.intercept, 4.0);
}

TEST(FitLine, Degenerate) {
  EXPECT_THROW(fit_line(std::vector<double>{1}, std::vector<double>{1}), std::invalid_argument);
  EXPECT_THROW(fit_line(std::vector<double>{2, 2}, std::vector<double>{1, 3}), std::invalid_argument);
  EXPECT_THROW(fit_line(std::vector<double>{1, 2}, std::vector<double>{1}), std::invalid_argument);
}

TEST(FitLine, MatchesNormalEquations) {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x;
    std::vector<double> y;
    const std::size_t n = 3 + rng.index(40);
    for (std::size_t i = 0; i < n; ++i) {
      x.push_back(rng.uniform(-10.0, 10.0));
      y.push_back(3.5 * x.back() - 2.0 + rng.uniform(-1.0, 1.0));
    }
    const FitResult f = fit_line(x, y);
    const auto [slope, intercept] = oracle::normal_equations(x, y);
    EXPECT_NEAR(f.slope, slope, 1e-12 * std::fabs(slope));
    EXPECT_NEAR(f.intercept, intercept, 1e-12 * (1.0 + std::fabs(intercept)));
    EXPECT_GT(f.slope_stderr, 0.0);
  }
}

TEST(GraphIo, CanonicalTriangle) {
  const std::string k3 = "3 3\n0 1 1\n1 2 2.5\n0 2 0.1\n";
  EXPECT_EQ(roundtrip(k3, read_graph, write_graph), k3);
}

TEST(GraphIo, Rejections) {
  EXPECT_EQ(parse_error_line("3 2\n0 1 1\n2 2 1\n", read_graph), 3u);
  EXPECT_EQ(parse_error_line("3 2\n0 1 1\n", read_graph), 2u);
  EXPECT_EQ(parse_error_line("2 1\n0 5 1\n", read_graph), 2u);
  EXPECT_EQ(parse_error_line("2 1\n0 1 -1\n", read_graph), 2u);
  EXPECT_EQ(parse_error_line("2 1\n0 1 x\n", read_graph), 2u);
  std::istringstream empty("");
  EXPECT_THROW(read_graph(empty), ParseError);
  EXPECT_EQ(parse_error_line("2 1\n0 1 1\n1 0 1\n", read_graph), 3u);
}

TEST(GraphIo, RandomRoundtrip) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const WeightedGraph g = erdos_renyi(2 + seed % 30, 0.3, seed, WeightMode::kUniform1To10).graph;
    std::ostringstream out;
    write_graph(out, g);
    std::istringstream in(out.str());
    const WeightedGraph back = read_graph(in);
    ASSERT_EQ(back, g);
    ASSERT_EQ(roundtrip(out.str(), read_graph, write_graph), out.str());
  }
}

TEST(TreeIo, RoundtripAndErrors) {
  const std::string t = "4\n1 2\n-\n3\n-\n";
  EXPECT_EQ(roundtrip(t, read_tree, write_tree), t);
  EXPECT_EQ(parse_error_line("3\n1\n2\n0\n", read_tree), 4u);
  EXPECT_EQ(parse_error_line("3\n1\n", read_tree), 2u);
  EXPECT_EQ(parse_error_line("3\n1 9\n-\n-\n", read_tree), 2u);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const RootedTreeArray tree = random_rooted_tree(1 + seed, seed);
    std::ostringstream out;
    write_tree(out, tree);
    std::istringstream in(out.str());
    ASSERT_EQ(read_tree(in), tree);
  }
}

TEST(MinCostIo, RoundtripAndComments) {
  const std::string canonical = "p min 3 3\nn 1 -4\nn 3 4\na 1 2 0 5 1\na 2 3 0 5 1\na 1 3 -2 3 5\n";
  EXPECT_EQ(roundtrip(canonical, read_min_cost, write_min_cost), canonical);
  const std::string commented = "c a comment\n\np min 3 3\nc another\nn 1 -4\nn 3 4\na 1 2 0 5 1\na 2 3 0 5 1\na 1 3 -2 3 5\n";
  EXPECT_EQ(roundtrip(commented, read_min_cost, write_min_cost), canonical);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const FlowProblem p = generate_interior_instance(2 + seed % 10, seed % 7, 20, 9, seed, true).problem;
    std::ostringstream out;
    write_min_cost(out, p);
    ASSERT_EQ(roundtrip(out.str(), read_min_cost, write_min_cost), out.str());
    std::istringstream in(out.str());
    const FlowProblem back = read_min_cost(in);
    ASSERT_EQ(back.cost, p.cost);
    ASSERT_EQ(back.lo, p.lo);
    ASSERT_EQ(back.hi, p.hi);
    ASSERT_EQ(back.dem, p.dem);
  }
}

TEST(MinCostIo, Rejections) {
  EXPECT_EQ(parse_error_line("p max 2 1\n", read_min_cost), 1u);
  EXPECT_EQ(parse_error_line("p min 2 1\na 1 1 0 1 1\n", read_min_cost), 2u);
  EXPECT_EQ(parse_error_line("p min 2 1\na 1 3 0 1 1\n", read_min_cost), 2u);
  EXPECT_EQ(parse_error_line("p min 2 1\na 1 2 1 1 1\n", read_min_cost), 2u);
  EXPECT_EQ(parse_error_line("p min 2 1\nn 1 2\na 1 2 0 1 1\n", read_min_cost), 3u);
  EXPECT_EQ(parse_error_line("p min 2 2\na 1 2 0 1 1\n", read_min_cost), 2u);
  EXPECT_EQ(parse_error_line("p min 2 1\nx 1\n", read_min_cost), 2u);
  EXPECT_EQ(parse_error_line("p min 2 1\nn 1 1\nn 1 1\n", read_min_cost), 3u);
}

TEST(ScriptIo, Roundtrip) {
  FuzzOptions opt;
  opt.n = 20;
  opt.ops = 400;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Script s = generate_script(opt, seed);
    std::ostringstream out;
    write_script(out, s);
    std::istringstream in(out.str());
    ASSERT_EQ(read_script(in), s);
    ASSERT_EQ(roundtrip(out.str(), read_script, write_script), out.str());
  }
  EXPECT_EQ(parse_error_line("INIT 4 1\nLINK 0 1 1\n", read_script), 2u);
  EXPECT_EQ(parse_error_line("INIT 4 1\nDET\nJUMP 0 1\n", read_script), 3u);
  EXPECT_EQ(parse_error_line("INIT 4 0\n", read_script), 1u);
  EXPECT_EQ(parse_error_line("INIT 4 1\nCUT 0 4\n", read_script), 2u);
}

TEST(FileIo, MissingFile) {
  EXPECT_THROW(read_file("/nonexistent/graph.txt", read_graph), IoError);
}

TEST(Experiments, ConfigValidation) {
  ExperimentConfig cfg = default_experiment("hld-intersections");
  EXPECT_EQ(cfg.trials, 1000u);
  EXPECT_EQ(cfg.grid.front(), 64u);
  EXPECT_EQ(cfg.grid.back(), 4096u);
  cfg.name = "nope";
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
  cfg = default_experiment("lsst-stretch");
  cfg.grid.clear();
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
  cfg = default_experiment("rebuild-cost");
  cfg.trials = 0;
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
}

TEST(Experiments, SchemasAndFitRow) {
  const std::vector<std::pair<std::string, std::string>> expected = {
      {"lsst-stretch", "n,m,x,mean_stretch,mean_seconds"},
      {"lsst-time", "n,m,x,mean_stretch,mean_seconds"},
      {"hld-intersections", "n,ln_n,avg_intersections,quotient,seconds"},
      {"hld-time", "n,ln_n,avg_intersections,quotient,seconds"},
      {"rebuild-cost", "m,d,k,C_r,K,T,x,ledger_cost,seconds"},
  };
  for (const auto& [name, header] : expected) {
    ExperimentConfig cfg = default_experiment(name);
    cfg.trials = 2;
    cfg.grid = name.rfind("rebuild", 0) == 0 ? std::vector<std::size_t>{8, 9, 10}
               : name.rfind("lsst", 0) == 0  ? std::vector<std::size_t>{20, 30, 40}
                                             : std::vector<std::size_t>{16, 32, 64};
    cfg.record_timing = false;
    std::ostringstream out;
    write_table(out, run_experiment(cfg));
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, header);
    std::size_t rows = 0;
    std::string last;
    while (std::getline(lines, line)) {
      last = line;
      if (line.rfind("#", 0) != 0) {
        ++rows;
        EXPECT_EQ(line.substr(line.size() - 2), ",-");
      }
    }
    EXPECT_EQ(rows, 3u);
    EXPECT_EQ(last.rfind("# fit,", 0), 0u) << last;
    if (name.find("time") != std::string::npos) {
      EXPECT_NE(last.find("timing disabled"), std::string::npos);
    } else {
      EXPECT_NE(last.find("slope="), std::string::npos);
    }
  }
}

TEST(Experiments, DatFormat) {
  ExperimentConfig cfg = default_experiment("hld-intersections");
  cfg.trials = 3;
  cfg.grid = {8, 16};
  cfg.record_timing = false;
  std::ostringstream out;
  write_table(out, run_experiment(cfg), TableFormat::kDat);
  EXPECT_EQ(out.str().rfind("# n ln_n avg_intersections quotient seconds\n8 ", 0), 0u);
  EXPECT_EQ(out.str().find(','), std::string::npos);
}

TEST(Experiments, SameSeedSameBytes) {
  for (const std::string& name : experiment_names()) {
    ExperimentConfig cfg = default_experiment(name);
    cfg.trials = 2;
    cfg.grid = name.rfind("rebuild", 0) == 0 ? std::vector<std::size_t>{8, 12} : std::vector<std::size_t>{30, 60};
    cfg.record_timing = false;
    std::ostringstream a;
    std::ostringstream b;
    write_table(a, run_experiment(cfg));
    write_table(b, run_experiment(cfg));
    EXPECT_EQ(a.str(), b.str()) << name;
    cfg.seed = 2;
    std::ostringstream c;
    write_table(c, run_experiment(cfg));
    EXPECT_NE(a.str(), c.str()) << name;
  }
}

TEST(Experiments, SweepsReportValidity) {
  ExperimentConfig cfg = default_experiment("lsst-stretch");
  cfg.grid = {40, 80};
  cfg.trials = 3;
  for (const LsstPoint& p : lsst_sweep(cfg)) EXPECT_EQ(p.spanning, 3u);
  cfg = default_experiment("hld-intersections");
  cfg.grid = {100};
  cfg.trials = 50;
  EXPECT_EQ(hld_sweep(cfg).front().violations.total(), 0u);
}
