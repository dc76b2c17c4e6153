#include <gtest/gtest.h>

#include <cmath>

#include "flowforge/asymptotics.hpp"

using namespace flowforge;

TEST(Bisect, FindsRootAndRejectsBadBracket) {
  EXPECT_NEAR(bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0), std::sqrt(2.0), 1e-12);
  EXPECT_THROW(bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0), std::invalid_argument);
}

TEST(Crossover, CEqualsOne) {
  const double x = crossover_logm(1.0);
  EXPECT_NEAR(x, 3.03e7, 0.01 * 3.03e7);
  const auto h = [](double y) { return 2.0 * std::pow(y, 0.125) - std::log(y); };
  EXPECT_LT(h(x * (1 - 1e-9)), 0.0);
  EXPECT_GT(h(x * (1 + 1e-9)), 0.0);
}

TEST(Crossover, CEqualsTwoOnLog10Scale) {
  const double log10_m = crossover_logm(2.0) / kLn10;
  EXPECT_NEAR(log10_m, 93334255463.0, 0.01 * 93334255463.0);
}

TEST(Crossover, MonotoneInC) {
  double prev = 0.0;
  for (double C = 0.1; C <= 3.0; C += 0.1) {
    const double x = crossover_logm(C);
    EXPECT_GE(x, prev);
    prev = x;
  }
  EXPECT_DOUBLE_EQ(crossover_logm(0.01), std::exp(1.0));
  EXPECT_THROW(crossover_logm(0.0), std::invalid_argument);
}

TEST(EkRatio, PublishedValues) {
  EXPECT_NEAR(std::pow(10.0, ek_ratio_log10(10.0, 1.0)), 15.58, 0.02 * 15.58);
  EXPECT_NEAR(ek_ratio_log10(1000.0, 1.0), 941.0 + std::log10(2.95), 0.5);
  for (double lm : {0.5, 10.0, 1e6, 1e12}) {
    EXPECT_EQ(ek_ratio_log10(lm, 0.0), -2.0 * lm);
    EXPECT_TRUE(std::isfinite(ek_ratio_log10(lm, 2.0)));
  }
  EXPECT_THROW(ek_ratio_log10(0.0, 1.0), std::invalid_argument);
}

TEST(Stationary, RootSolvesTheEquation) {
  const StationaryPoint sp = ipm_stationary();
  const auto s = [](double x) { return 8.0 * std::pow(x, 0.125) - 8.0 * std::pow(x, -0.875) - 7.0 * std::log(x) - 8.0; };
  EXPECT_LT(s(sp.x_root * (1 - 1e-9)) * s(sp.x_root * (1 + 1e-9)), 0.0);
  EXPECT_DOUBLE_EQ(sp.min_log10, iteration_bound_log10(sp.x_root));
  // The bound bottoms out here: neighbours on either side are higher.
  EXPECT_LT(sp.min_log10, iteration_bound_log10(sp.x_root * 0.9));
  EXPECT_LT(sp.min_log10, iteration_bound_log10(sp.x_root * 1.1));
}

TEST(DerivativeThreshold, PublishedValue) {
  EXPECT_NEAR(derivative_threshold(), 5764860.0, 0.001 * 5764860.0);
}
