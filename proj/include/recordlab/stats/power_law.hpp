#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "recordlab/stats/histogram.hpp"

namespace recordlab::stats {

enum class PowerLawMethod { logbin_least_squares, discrete_mle };

const char* method_name(PowerLawMethod m) noexcept;

// Inclusive range of ages (or bin centers) that take part in a fit.
struct FitRange {
  double lo = 1.0;
  double hi = 0.0;
};

// P(r) = A r^-alpha on the integer support [r_min, r_max_fit], with
// A = 1 / sum_{r=r_min}^{r_max_fit} r^-alpha (1 / H_{N,alpha} when r_min = 1).
struct PowerLawFit {
  double alpha = 0.0;
  double alpha_stderr = 0.0;
  double r_min = 1.0;
  double r_max_fit = 0.0;
  PowerLawMethod method = PowerLawMethod::discrete_mle;
  double normalization_A = 0.0;
  std::size_t n_used = 0;  // samples (MLE) or occupied bins (least squares)
  bool converged = true;
  std::string diagnostic;
};

// Generalized harmonic number H_{n,alpha} = sum_{r=1}^{n} r^-alpha, summed
// smallest terms first with compensation.
double harmonic_number(std::size_t n, double alpha);

// Least squares on (ln center, ln density) over occupied bins whose center
// lies in the range; alpha = -slope. Throws InvalidArgument with fewer than
// three occupied bins in range.
PowerLawFit fit_power_law_ls(const LogHistogram& hist, FitRange range);

// Bracket of the MLE search.
inline constexpr double kAlphaLower = 1.01;
inline constexpr double kAlphaUpper = 5.0;

// Discrete power-law MLE on support [1, support_max]. Every age must lie in
// the support (InvalidArgument otherwise). When the score does not change sign
// inside (kAlphaLower, kAlphaUpper] the estimate is pinned at the bracket end,
// converged is false and diagnostic carries the bracket scores. A single
// sample gives an infinite stderr.
PowerLawFit fit_power_law_mle(std::span<const std::size_t> ages, std::size_t support_max);

// Truncated MLE over unit-bin counts (counts[r] = occurrences of age r):
// only ages in [range.lo, range.hi] are used and the normalization runs over
// the same integer range.
PowerLawFit fit_power_law_mle_counts(std::span<const std::uint64_t> counts, FitRange range);

}  // namespace recordlab::stats
