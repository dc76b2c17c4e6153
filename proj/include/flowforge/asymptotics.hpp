#pragma once

// Closed-form comparisons of the almost-linear bound against classical
// ones. Quantities like m * exp((ln m)^(7/8) ln ln m) overflow any float for
// interesting m, so everything is carried as natural logs and only turned
// into log10 for output.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace flowforge {

inline constexpr double kLn10 = 2.302585092994045684;

/// Bisection for a sign change of fn on [lo, hi], to relative width rel_tol.
inline double bisect(const std::function<double(double)>& fn, double lo, double hi, double rel_tol = 1e-13) {
  double flo = fn(lo);
  const double fhi = fn(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) throw std::invalid_argument("bisect: no sign change in bracket");
  for (int it = 0; it < 400 && hi - lo > rel_tol * std::fabs(hi); ++it) {
    const double mid = lo + (hi - lo) / 2.0;
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return lo + (hi - lo) / 2.0;
}

/// Largest x with 2 x^(1/8) = C ln x, where x stands for ln m. Past it the
/// inequality 2 (ln m)^(1/8) > C ln ln m holds for good. When the two sides
/// never cross above e, returns e.
inline double crossover_logm(double C) {
  if (!(C > 0.0)) throw std::invalid_argument("crossover_logm: C must be positive");
  const auto h = [C](double x) { return 2.0 * std::pow(x, 0.125) - C * std::log(x); };
  // h is decreasing up to its minimum at x = (4C)^8 and increasing after it.
  const double e = std::exp(1.0);
  const double x_min = std::pow(4.0 * C, 8.0);
  if (x_min <= e || h(x_min) >= 0.0) return e;
  double hi = std::max(1e20, 2.0 * x_min);
  while (h(hi) <= 0.0) {
    hi *= 1e4;
    if (!std::isfinite(hi)) throw std::invalid_argument("crossover_logm: no sign change found");
  }
  return bisect(h, x_min, hi);
}

/// log10 of [m exp(C (ln m)^(7/8) ln ln m) / m^3], with m = 10^log10_m.
inline double ek_ratio_log10(double log10_m, double C) {
  if (!(log10_m > 0.0)) throw std::invalid_argument("ek_ratio_log10: log10_m must be positive");
  const double lm = log10_m * kLn10;
  return log10_m + C * std::pow(lm, 0.875) * std::log(lm) / kLn10 - 3.0 * log10_m;
}

struct StationaryPoint {
  double x_root = 0.0;     // ln m at the stationary point
  double min_log10 = 0.0;  // log10 of m ln m exp(-(ln m)^(7/8) ln ln m) there
};

/// log10 of m ln m exp(-(ln m)^(7/8) ln ln m) as a function of x = ln m.
inline double iteration_bound_log10(double x) {
  return (x + std::log(x) - std::pow(x, 0.875) * std::log(x)) / kLn10;
}

/// Root of 7 ln x + 8 = 8 x^(1/8) - 8 x^(-7/8), where the bound
/// m ln m exp(-(ln m)^(7/8) ln ln m) stops growing as a function of ln m.
inline StationaryPoint ipm_stationary() {
  const auto s = [](double x) { return 8.0 * std::pow(x, 0.125) - 8.0 * std::pow(x, -0.875) - 7.0 * std::log(x) - 8.0; };
  StationaryPoint out;
  out.x_root = bisect(s, 1.0, 1e20);
  out.min_log10 = iteration_bound_log10(out.x_root);
  return out;
}

/// Root of x^(1/8) - 7 x^(-7/8) = 7; beyond it the derivative comparison
/// between the two bounds is settled.
inline double derivative_threshold() {
  const auto d = [](double x) { return std::pow(x, 0.125) - 7.0 * std::pow(x, -0.875) - 7.0; };
  return bisect(d, 1.0, 1e20);
}

}  // namespace flowforge
