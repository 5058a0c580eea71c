#pragma once

#include <functional>
#include <span>
#include <vector>

namespace recordlab::stats {

struct SimplexOptions {
  // Converged when every vertex is within x_tolerance * max(1, |x_best|) of
  // the best vertex in each coordinate.
  double x_tolerance = 1e-8;
  int max_iterations = 10000;
  // Initial simplex edge per coordinate; defaults to 0.1 * max(1, |x0|).
  std::vector<double> initial_step;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Derivative-free Nelder-Mead minimization with standard coefficients
// (reflection 1, expansion 2, contraction 1/2, shrink 1/2). After the first
// convergence the simplex is rebuilt around the best point once to guard
// against a collapsed simplex. The returned value never exceeds f(start).
SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                          std::vector<double> start, const SimplexOptions& options = {});

}  // namespace recordlab::stats
