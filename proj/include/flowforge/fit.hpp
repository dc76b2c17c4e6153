#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

namespace flowforge {

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_norm = 0.0;  // L2 norm of y - (slope x + intercept)
  double slope_stderr = 0.0;   // 0 with only two points
};

/// Ordinary least squares y = slope * x + intercept (centred sums).
inline FitResult fit_line(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("fit_line: xs and ys differ in length");
  const std::size_t n = xs.size();
  if (n < 2) throw std::invalid_argument("fit_line: need at least two points");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit_line: all x values are equal");
  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
    rss += r * r;
  }
  fit.residual_norm = std::sqrt(rss);
  if (n > 2) fit.slope_stderr = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  return fit;
}

}  // namespace flowforge
