#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace recordlab::stats {

// Generalized extreme value model in the scaled variable
//   z = 1 + k (x - a) / b,
// density (1/b) z^(-1-1/k) exp(-z^(-1/k)) for z > 0. k > 0 is the Frechet
// branch, k < 0 the reversed Weibull branch.
struct GevFit {
  double k = 0.0;
  double a = 0.0;
  double b = 1.0;
  double log_likelihood = 0.0;
  double initial_log_likelihood = 0.0;  // at the moment-based start
  bool converged = false;
  std::size_t n_samples = 0;
  int iterations = 0;
  bool low_confidence = false;  // fewer than kGevMinSamples samples
  std::string diagnostic;
};

inline constexpr std::size_t kGevMinSamples = 20;

// Zero outside the support. Requires b > 0 and k != 0.
double gev_density(double x, const GevFit& fit);

// -infinity when any sample lies outside the support or b <= 0. Uses the
// Gumbel limit for |k| < 1e-9.
double gev_log_likelihood(std::span<const double> xs, double k, double a, double b);

// Method-of-moments start: shape from the sample skewness (clamped to the
// range where the third moment exists), scale and location from the
// variance and mean, then shrunk toward the Gumbel limit until every sample
// lies inside the support. Throws InvalidArgument for constant samples.
GevFit gev_moment_start(std::span<const double> xs);

// Maximum likelihood by Nelder-Mead over (k, a, ln b) on standardized data,
// with a finite penalty for support violations. Never throws on optimizer
// trouble: converged is false and diagnostic explains why. Throws
// InvalidArgument for fewer than three samples or constant samples.
GevFit estimate_gev(std::span<const double> maxima, const std::optional<GevFit>& start = std::nullopt);

// estimate_gev, but non-convergence raises ConvergenceError carrying the
// diagnostic. A negative k is returned, not rejected.
GevFit fit_gev(std::span<const double> maxima);

struct ScaledMaxima {
  std::vector<double> z;                 // one per input, in order
  std::vector<std::size_t> violations;   // indices with z <= 0
};

ScaledMaxima scale_maxima(std::span<const double> maxima, const GevFit& fit);

// Inverse of the z transform: x = a + b (z - 1) / k.
double unscale(double z, const GevFit& fit);

// a + (b/k)(Gamma(1-k) - 1). Throws InvalidArgument unless 0 < k < 1.
double frechet_mean(const GevFit& fit);

struct ShapeInterval {
  double estimate = 0.0;  // k of the full-sample fit
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
  std::size_t n_resamples = 0;
  std::size_t n_failed = 0;  // resamples whose fit did not converge
};

// Percentile bootstrap interval for k. Resample b draws with replacement
// using mt19937_64 seeded by stream_seed(seed, b); resamples run in parallel
// and the result does not depend on the thread count.
ShapeInterval bootstrap_shape_interval(std::span<const double> maxima, std::size_t resamples,
                                       std::uint64_t seed, double level = 0.95, int threads = 0);

}  // namespace recordlab::stats
