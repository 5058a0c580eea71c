#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "recordlab/records.hpp"
#include "recordlab/seeding.hpp"
#include "recordlab/time_series.hpp"

namespace recordlab::grw {

// Geometric random walk y[i+1] = y[i] * exp(xi[i]), xi ~ Gaussian(mu, sigma).
struct GrwParams {
  double mu = 0.0;
  double sigma = 0.0;
  std::size_t n_steps = 0;  // series length N
  double y0 = 1.0;

  // Throws InvalidArgument unless sigma > 0, n_steps >= 2, y0 > 0.
  void validate() const;
};

inline constexpr const char* kRngName = "mt19937_64/box-muller";

// Seed of realization j of an ensemble; see stream_seed.
constexpr std::uint64_t realization_seed(std::uint64_t master_seed, std::uint64_t j) noexcept {
  return stream_seed(master_seed, j);
}

// Gaussian increments from mt19937_64 through the Box-Muller transform. The
// transform is written out rather than taken from std::normal_distribution so
// the stream is fixed by this code and not by the standard library vendor.
class GaussianIncrements {
 public:
  GaussianIncrements(double mu, double sigma, std::uint64_t seed) : mu_(mu), sigma_(sigma), engine_(seed) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return mu_ + sigma_ * spare_;
    }
    // u1 in (0, 1], u2 in [0, 1), 53-bit resolution.
    const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return mu_ + sigma_ * (radius * std::cos(angle));
  }

 private:
  double mu_;
  double sigma_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Every increment equals `value`. Test hook for deterministic limits.
class ConstantIncrements {
 public:
  explicit ConstantIncrements(double value) : value_(value) {}
  double operator()() const noexcept { return value_; }

 private:
  double value_;
};

namespace detail {
[[noreturn]] void throw_overflow(std::size_t step);
}

// Drives the walk and hands each value to sink(y). The log level is
// accumulated and exponentiated, y[i] = y0 * exp(xi[1] + ... + xi[i-1]).
template <class Increments, class Sink>
void walk(const GrwParams& params, Increments&& increments, Sink&& sink) {
  double level = 0.0;
  sink(params.y0);
  for (std::size_t i = 1; i < params.n_steps; ++i) {
    level += increments();
    const double y = params.y0 * std::exp(level);
    if (!(y > 0.0) || !std::isfinite(y)) detail::throw_overflow(i + 1);
    sink(y);
  }
}

template <class Increments>
TimeSeries simulate_with(const GrwParams& params, Increments&& increments) {
  params.validate();
  TimeSeries series;
  series.label = "grw";
  series.values.reserve(params.n_steps);
  walk(params, increments, [&](double y) { series.values.push_back(y); });
  return series;
}

// Identical params and seed give bit-identical output.
TimeSeries simulate(const GrwParams& params, std::uint64_t seed);

struct EnsembleSpec {
  GrwParams params;
  std::size_t n_realizations = 1;
  std::uint64_t master_seed = 0;
  // When set, every increment equals this value instead of being drawn.
  std::optional<double> fixed_increment;

  void validate() const;
};

struct CollectorSet {
  bool pooled_ages = false;    // histogram of record ages, unit bins
  bool longest_age = false;    // r_max per realization
  bool record_count = false;   // number of records per realization
  records::Censoring age_censoring = records::Censoring::exclude;
  records::Censoring maxima_censoring = records::Censoring::include;

  bool any() const noexcept { return pooled_ages || longest_age || record_count; }
};

struct EnsembleSummary {
  EnsembleSpec spec;
  CollectorSet collectors;
  // age_counts[r] = number of pooled ages equal to r; size n_steps when collected.
  std::vector<std::uint64_t> age_counts;
  // Per realization, in realization order. longest_age is 0 when the
  // realization has no age under maxima_censoring.
  std::vector<std::size_t> longest_age;
  std::vector<std::size_t> record_count;
};

// Runs the ensemble in parallel over realizations. threads <= 0 uses the
// OpenMP default. The summary does not depend on the thread count.
EnsembleSummary run_ensemble(const EnsembleSpec& spec, const CollectorSet& collectors,
                             int threads = 0);

// Single-threaded reference for run_ensemble.
EnsembleSummary run_ensemble_serial(const EnsembleSpec& spec, const CollectorSet& collectors);

// Upper bound on worker threads from RECORDLAB_THREADS, or 0 if unset.
int threads_from_env();

}  // namespace recordlab::grw
