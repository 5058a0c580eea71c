#pragma once

#include <cstddef>
#include <span>

namespace recordlab::stats {

// Ordinary least squares y = intercept + slope * x.
struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double intercept_stderr = 0.0;  // infinite with fewer than three points
  double slope_stderr = 0.0;
  std::size_t n_points = 0;
};

// Requires at least two points with distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Requires at least two points and non-zero variance in both.
double pearson_correlation(std::span<const double> x, std::span<const double> y);

}  // namespace recordlab::stats
