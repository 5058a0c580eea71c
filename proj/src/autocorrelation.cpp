#include "recordlab/stats/autocorrelation.hpp"

#include "recordlab/error.hpp"

namespace recordlab::stats {

namespace {

struct Centered {
  std::vector<double> d;
  double denom = 0.0;
};

Centered center(std::span<const double> xs, std::size_t tau_max) {
  if (tau_max < 1) throw InvalidArgument("autocorrelation: tau_max must be >= 1");
  if (xs.size() <= tau_max)
    throw InvalidArgument("autocorrelation: series length must exceed tau_max");
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  Centered c;
  c.d.reserve(xs.size());
  for (double x : xs) {
    c.d.push_back(x - mean);
    c.denom += c.d.back() * c.d.back();
  }
  if (!(c.denom > 0.0)) throw InvalidArgument("autocorrelation: series has zero variance");
  return c;
}

double lag_sum(const std::vector<double>& d, std::size_t tau) {
  double s = 0.0;
  for (std::size_t t = 0; t + tau < d.size(); ++t) s += d[t] * d[t + tau];
  return s;
}

AutocorrSeries init(std::size_t tau_max) {
  AutocorrSeries out;
  out.lags.resize(tau_max + 1);
  out.values.resize(tau_max + 1);
  for (std::size_t k = 0; k <= tau_max; ++k) out.lags[k] = k;
  out.values[0] = 1.0;
  return out;
}

}  // namespace

AutocorrSeries autocorrelation(std::span<const double> xs, std::size_t tau_max) {
  const auto c = center(xs, tau_max);
  auto out = init(tau_max);
  const auto n = static_cast<std::ptrdiff_t>(tau_max);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 1; k <= n; ++k)
    out.values[static_cast<std::size_t>(k)] = lag_sum(c.d, static_cast<std::size_t>(k)) / c.denom;
  return out;
}

AutocorrSeries autocorrelation_serial(std::span<const double> xs, std::size_t tau_max) {
  const auto c = center(xs, tau_max);
  auto out = init(tau_max);
  for (std::size_t k = 1; k <= tau_max; ++k) out.values[k] = lag_sum(c.d, k) / c.denom;
  return out;
}

}  // namespace recordlab::stats
