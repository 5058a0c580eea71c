#include "recordlab/stats/gev.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "recordlab/error.hpp"
#include "recordlab/seeding.hpp"
#include "recordlab/stats/nelder_mead.hpp"

namespace recordlab::stats {

namespace {

constexpr double kGumbelEps = 1e-9;
constexpr double kGumbelSkewness = 1.1395470994046486;  // 12 sqrt(6) zeta(3) / pi^3
constexpr double kSkewShapeLo = -0.9;
constexpr double kSkewShapeHi = 0.3;

double gev_skewness(double k) {
  if (std::abs(k) < 1e-3) return kGumbelSkewness;
  const double g1 = std::tgamma(1.0 - k), g2 = std::tgamma(1.0 - 2.0 * k),
               g3 = std::tgamma(1.0 - 3.0 * k);
  const double v = g2 - g1 * g1;
  return (k > 0 ? 1.0 : -1.0) * (g3 - 3.0 * g1 * g2 + 2.0 * g1 * g1 * g1) / std::pow(v, 1.5);
}

struct SampleMoments {
  double mean = 0.0, sd = 0.0, skew = 0.0;
};

SampleMoments moments(std::span<const double> xs) {
  const double n = static_cast<double>(xs.size());
  SampleMoments m;
  for (double x : xs) m.mean += x;
  m.mean /= n;
  double m2 = 0.0, m3 = 0.0;
  for (double x : xs) {
    const double d = x - m.mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m.sd = std::sqrt(m2 * n / (n - 1.0));
  m.skew = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
  return m;
}

void require_fit_input(std::span<const double> xs) {
  if (xs.size() < 3) throw InvalidArgument("GEV fit: need at least three samples");
  for (double x : xs)
    if (!std::isfinite(x)) throw InvalidArgument("GEV fit: non-finite sample");
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  if (*lo == *hi) throw InvalidArgument("GEV fit: degenerate sample (all values equal)");
}

bool inside_support(std::span<const double> xs, double k, double a, double b) {
  for (double x : xs)
    if (!(1.0 + k * (x - a) / b > 0.0)) return false;
  return true;
}

}  // namespace

double gev_log_likelihood(std::span<const double> xs, double k, double a, double b) {
  if (!(b > 0.0)) return -std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(xs.size());
  double ll = -n * std::log(b);
  if (std::abs(k) < kGumbelEps) {
    for (double x : xs) {
      const double t = (x - a) / b;
      ll -= t + std::exp(-t);
    }
    return ll;
  }
  const double inv_k = 1.0 / k;
  for (double x : xs) {
    const double z = 1.0 + k * (x - a) / b;
    if (!(z > 0.0)) return -std::numeric_limits<double>::infinity();
    const double lz = std::log(z);
    ll -= (1.0 + inv_k) * lz + std::exp(-inv_k * lz);
  }
  return ll;
}

double gev_density(double x, const GevFit& fit) {
  const double z = 1.0 + fit.k * (x - fit.a) / fit.b;
  if (!(z > 0.0)) return 0.0;
  return std::pow(z, -1.0 - 1.0 / fit.k) * std::exp(-std::pow(z, -1.0 / fit.k)) / fit.b;
}

GevFit gev_moment_start(std::span<const double> xs) {
  require_fit_input(xs);
  const auto m = moments(xs);

  // gev_skewness is increasing in k; bisect for the sample skewness.
  double k;
  if (m.skew <= gev_skewness(kSkewShapeLo)) {
    k = kSkewShapeLo;
  } else if (m.skew >= gev_skewness(kSkewShapeHi)) {
    k = kSkewShapeHi;
  } else {
    double lo = kSkewShapeLo, hi = kSkewShapeHi;
    for (int i = 0; i < 100; ++i) {
      const double mid = 0.5 * (lo + hi);
      (gev_skewness(mid) < m.skew ? lo : hi) = mid;
    }
    k = 0.5 * (lo + hi);
  }

  GevFit start;
  start.n_samples = xs.size();
  for (int attempt = 0;; ++attempt) {
    if (std::abs(k) < 1e-3 || attempt >= 40) {
      k = 0.0;
      start.b = m.sd * std::sqrt(6.0) / std::numbers::pi;
      start.a = m.mean - std::numbers::egamma * start.b;
    } else {
      const double g1 = std::tgamma(1.0 - k), g2 = std::tgamma(1.0 - 2.0 * k);
      start.b = m.sd * std::abs(k) / std::sqrt(g2 - g1 * g1);
      start.a = m.mean - start.b * (g1 - 1.0) / k;
    }
    start.k = k;
    if (k == 0.0 || inside_support(xs, k, start.a, start.b)) break;
    k *= 0.5;
  }
  start.log_likelihood = start.initial_log_likelihood = gev_log_likelihood(xs, start.k, start.a, start.b);
  return start;
}

GevFit estimate_gev(std::span<const double> maxima, const std::optional<GevFit>& start) {
  require_fit_input(maxima);
  const auto m = moments(maxima);
  const double shift = m.mean, scale = m.sd;
  std::vector<double> std_x;
  std_x.reserve(maxima.size());
  for (double x : maxima) std_x.push_back((x - shift) / scale);

  GevFit init;
  if (start && inside_support(maxima, start->k, start->a, start->b) && start->b > 0.0) {
    init = *start;
  } else {
    init = gev_moment_start(maxima);
  }
  init.initial_log_likelihood = gev_log_likelihood(maxima, init.k, init.a, init.b);

  auto objective = [&](std::span<const double> p) {
    const double k = p[0], a = p[1], b = std::exp(p[2]);
    double violation = 0.0;
    for (double x : std_x) {
      const double z = 1.0 + k * (x - a) / b;
      if (!(z > 0.0)) violation += 1.0 - z;
    }
    if (violation > 0.0 || !std::isfinite(b)) return 1e10 * (1.0 + violation);
    return -gev_log_likelihood(std_x, k, a, b);
  };

  SimplexOptions options;
  options.x_tolerance = 1e-8;
  options.max_iterations = 10000;
  options.initial_step = {0.05, 0.1, 0.1};
  const auto result = nelder_mead(objective, {init.k, (init.a - shift) / scale, std::log(init.b / scale)},
                                  options);

  GevFit fit;
  fit.n_samples = maxima.size();
  fit.k = result.x[0];
  fit.a = shift + scale * result.x[1];
  fit.b = scale * std::exp(result.x[2]);
  fit.iterations = result.iterations;
  fit.initial_log_likelihood = init.initial_log_likelihood;
  fit.log_likelihood = gev_log_likelihood(maxima, fit.k, fit.a, fit.b);
  fit.low_confidence = maxima.size() < kGevMinSamples;
  // The optimizer keeps the start when it cannot improve on it.
  if (fit.log_likelihood < fit.initial_log_likelihood) {
    fit.k = init.k;
    fit.a = init.a;
    fit.b = init.b;
    fit.log_likelihood = fit.initial_log_likelihood;
  }

  std::ostringstream diag;
  fit.converged = true;
  if (!result.converged) {
    fit.converged = false;
    diag << "simplex did not converge in " << options.max_iterations << " iterations; ";
  }
  if (!std::isfinite(fit.log_likelihood) || !inside_support(maxima, fit.k, fit.a, fit.b)) {
    fit.converged = false;
    diag << "optimum violates the support constraint; ";
  }
  if (fit.k <= -1.0) {
    fit.converged = false;
    diag << "shape k=" << fit.k << " <= -1: likelihood unbounded at the support edge; ";
  }
  if (fit.converged && fit.k < 0.0) diag << "negative shape: outside the Frechet regime; ";
  if (fit.low_confidence) diag << "fewer than " << kGevMinSamples << " samples; ";
  fit.diagnostic = diag.str();
  return fit;
}

GevFit fit_gev(std::span<const double> maxima) {
  auto fit = estimate_gev(maxima);
  if (!fit.converged) throw ConvergenceError("GEV fit did not converge: " + fit.diagnostic);
  return fit;
}

ScaledMaxima scale_maxima(std::span<const double> maxima, const GevFit& fit) {
  ScaledMaxima out;
  out.z.reserve(maxima.size());
  for (std::size_t i = 0; i < maxima.size(); ++i) {
    const double z = 1.0 + fit.k * (maxima[i] - fit.a) / fit.b;
    out.z.push_back(z);
    if (!(z > 0.0)) out.violations.push_back(i);
  }
  return out;
}

double unscale(double z, const GevFit& fit) { return fit.a + fit.b * (z - 1.0) / fit.k; }

double frechet_mean(const GevFit& fit) {
  if (!(fit.k > 0.0)) throw InvalidArgument("frechet_mean: shape k must be positive");
  if (!(fit.k < 1.0)) throw InvalidArgument("frechet_mean: mean is infinite for k >= 1");
  return fit.a + fit.b * std::expm1(std::lgamma(1.0 - fit.k)) / fit.k;
}

ShapeInterval bootstrap_shape_interval(std::span<const double> maxima, std::size_t resamples,
                                       std::uint64_t seed, double level, int threads) {
  if (resamples < 2) throw InvalidArgument("bootstrap: need at least two resamples");
  if (!(level > 0.0 && level < 1.0)) throw InvalidArgument("bootstrap: level must be in (0, 1)");
  const auto full = fit_gev(maxima);
  const std::size_t n = maxima.size();
  std::vector<double> shapes(resamples, std::numeric_limits<double>::quiet_NaN());

  std::exception_ptr failure;
  const auto count = static_cast<std::ptrdiff_t>(resamples);
#pragma omp parallel for schedule(dynamic) num_threads(threads > 0 ? threads : omp_get_max_threads())
  for (std::ptrdiff_t r = 0; r < count; ++r) {
    try {
      std::mt19937_64 engine(stream_seed(seed, static_cast<std::uint64_t>(r)));
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      std::vector<double> sample(n);
      for (auto& x : sample) x = maxima[pick(engine)];
      const auto fit = estimate_gev(sample, full);
      if (fit.converged) shapes[static_cast<std::size_t>(r)] = fit.k;
    } catch (const InvalidArgument&) {
      // Degenerate resample; counted as a failed fit.
    } catch (...) {
#pragma omp critical(recordlab_bootstrap_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  ShapeInterval out;
  out.estimate = full.k;
  out.level = level;
  out.n_resamples = resamples;
  std::vector<double> ok;
  for (double k : shapes)
    if (std::isfinite(k)) ok.push_back(k);
  out.n_failed = resamples - ok.size();
  if (ok.size() < 2) throw ConvergenceError("bootstrap: fewer than two resamples converged");
  std::sort(ok.begin(), ok.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(ok.size() - 1);
    const auto i = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(i);
    return i + 1 < ok.size() ? ok[i] + frac * (ok[i + 1] - ok[i]) : ok[i];
  };
  out.lower = quantile(0.5 * (1.0 - level));
  out.upper = quantile(0.5 * (1.0 + level));
  return out;
}

}  // namespace recordlab::stats
