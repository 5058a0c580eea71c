#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace recordlab::stats {

struct AutocorrSeries {
  std::vector<std::size_t> lags;  // 0..tau_max
  std::vector<double> values;     // values[0] == 1
};

// C(tau) = sum_t (x_t - m)(x_{t+tau} - m) / sum_t (x_t - m)^2, the
// mean-subtracted, variance-normalized estimator. Requires
// xs.size() > tau_max >= 1; throws InvalidArgument on zero variance.
AutocorrSeries autocorrelation(std::span<const double> xs, std::size_t tau_max);

// Lags evaluated one after another; reference for autocorrelation.
AutocorrSeries autocorrelation_serial(std::span<const double> xs, std::size_t tau_max);

}  // namespace recordlab::stats
