#include "recordlab/stats/power_law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "recordlab/error.hpp"
#include "recordlab/stats/regression.hpp"

namespace recordlab::stats {

const char* method_name(PowerLawMethod m) noexcept {
  return m == PowerLawMethod::discrete_mle ? "discrete_mle" : "logbin_least_squares";
}

namespace {

// Neumaier compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) noexcept {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      c += (sum - t) + x;
    else
      c += (x - t) + sum;
    sum = t;
  }
  double value() const noexcept { return sum + c; }
};

double partition(std::size_t lo, std::size_t hi, double alpha) {
  CompensatedSum s;
  for (std::size_t r = hi; r >= lo && r > 0; --r) s.add(std::pow(static_cast<double>(r), -alpha));
  return s.value();
}

// Moments of ln r under the truncated power law on [lo, hi].
struct LogMoments {
  double z = 0.0;     // partition function
  double mean = 0.0;  // E[ln r]
  double var = 0.0;   // Var[ln r]
};

LogMoments log_moments(const std::vector<double>& log_r, double alpha) {
  CompensatedSum z, m1, m2;
  for (auto it = log_r.rbegin(); it != log_r.rend(); ++it) {
    const double w = std::exp(-alpha * *it);
    z.add(w);
    m1.add(w * *it);
    m2.add(w * *it * *it);
  }
  LogMoments out;
  out.z = z.value();
  out.mean = m1.value() / out.z;
  out.var = std::max(0.0, m2.value() / out.z - out.mean * out.mean);
  return out;
}

// Maximizes -alpha * sum_log - n * ln Z(alpha) on [lo, hi]. The score
// n * E[ln r] - sum_log is strictly decreasing in alpha.
PowerLawFit solve_mle(double sum_log, double n, std::size_t lo, std::size_t hi) {
  std::vector<double> log_r;
  log_r.reserve(hi - lo + 1);
  for (std::size_t r = lo; r <= hi; ++r) log_r.push_back(std::log(static_cast<double>(r)));
  const double target = sum_log / n;  // sample mean of ln r

  PowerLawFit fit;
  fit.method = PowerLawMethod::discrete_mle;
  fit.r_min = static_cast<double>(lo);
  fit.r_max_fit = static_cast<double>(hi);
  fit.n_used = static_cast<std::size_t>(n);

  auto score = [&](double alpha) { return log_moments(log_r, alpha).mean - target; };
  const double s_lo = score(kAlphaLower);
  const double s_hi = score(kAlphaUpper);

  double alpha;
  if (s_lo <= 0.0 || s_hi >= 0.0) {
    alpha = s_lo <= 0.0 ? kAlphaLower : kAlphaUpper;
    std::ostringstream msg;
    msg << "no interior maximum in [" << kAlphaLower << ", " << kAlphaUpper
        << "]: score(lower)=" << s_lo * n << " score(upper)=" << s_hi * n;
    fit.converged = false;
    fit.diagnostic = msg.str();
  } else {
    // Newton steps safeguarded by the bisection bracket.
    double a = kAlphaLower, b = kAlphaUpper;
    alpha = 0.5 * (a + b);
    bool done = false;
    for (int iter = 0; iter < 200 && !done; ++iter) {
      const auto mom = log_moments(log_r, alpha);
      const double s = mom.mean - target;
      if (s > 0.0) a = alpha;
      else b = alpha;
      double next = mom.var > 0.0 ? alpha + s / mom.var : 0.5 * (a + b);
      if (!(next > a && next < b)) next = 0.5 * (a + b);
      done = std::abs(next - alpha) < 1e-13 * alpha || b - a < 1e-13;
      alpha = next;
    }
    if (!done) {
      fit.converged = false;
      fit.diagnostic = "root finder did not reach tolerance";
    }
  }

  const auto mom = log_moments(log_r, alpha);
  fit.alpha = alpha;
  fit.normalization_A = 1.0 / mom.z;
  const double info = n * mom.var;
  if (n < 2.0 || !(info > 0.0)) {
    fit.alpha_stderr = std::numeric_limits<double>::infinity();
    if (fit.diagnostic.empty()) fit.diagnostic = "single sample: standard error undefined";
  } else {
    fit.alpha_stderr = 1.0 / std::sqrt(info);
  }
  return fit;
}

}  // namespace

double harmonic_number(std::size_t n, double alpha) {
  if (n < 1) throw InvalidArgument("harmonic_number: n must be >= 1");
  return partition(1, n, alpha);
}

PowerLawFit fit_power_law_ls(const LogHistogram& hist, FitRange range) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < hist.size(); ++i) {
    if (hist.density[i] <= 0.0) continue;
    if (hist.center[i] < range.lo || hist.center[i] > range.hi) continue;
    x.push_back(std::log(hist.center[i]));
    y.push_back(std::log(hist.density[i]));
  }
  if (x.size() < 3)
    throw InvalidArgument("fit_power_law_ls: need at least 3 occupied bins in range, got " +
                          std::to_string(x.size()));
  const auto line = fit_line(x, y);
  PowerLawFit fit;
  fit.method = PowerLawMethod::logbin_least_squares;
  fit.alpha = -line.slope;
  fit.alpha_stderr = line.slope_stderr;
  fit.r_min = range.lo;
  fit.r_max_fit = range.hi;
  fit.n_used = x.size();
  const auto lo = static_cast<std::size_t>(std::max(1.0, std::ceil(range.lo)));
  const auto hi = static_cast<std::size_t>(std::floor(range.hi));
  if (hi >= lo && fit.alpha > 0.0) fit.normalization_A = 1.0 / partition(lo, hi, fit.alpha);
  return fit;
}

PowerLawFit fit_power_law_mle(std::span<const std::size_t> ages, std::size_t support_max) {
  if (ages.empty()) throw InvalidArgument("fit_power_law_mle: no samples");
  if (support_max < 1) throw InvalidArgument("fit_power_law_mle: support_max must be >= 1");
  double sum_log = 0.0;
  for (auto a : ages) {
    if (a < 1 || a > support_max)
      throw InvalidArgument("fit_power_law_mle: age " + std::to_string(a) + " outside [1, " +
                            std::to_string(support_max) + "]");
    sum_log += std::log(static_cast<double>(a));
  }
  return solve_mle(sum_log, static_cast<double>(ages.size()), 1, support_max);
}

PowerLawFit fit_power_law_mle_counts(std::span<const std::uint64_t> counts, FitRange range) {
  const auto lo = static_cast<std::size_t>(std::max(1.0, std::ceil(range.lo)));
  const auto hi = static_cast<std::size_t>(std::floor(range.hi));
  if (hi < lo) throw InvalidArgument("fit_power_law_mle_counts: empty fit range");
  double sum_log = 0.0, n = 0.0;
  for (std::size_t r = lo; r <= hi && r < counts.size(); ++r) {
    if (counts[r] == 0) continue;
    const double c = static_cast<double>(counts[r]);
    sum_log += c * std::log(static_cast<double>(r));
    n += c;
  }
  if (n == 0.0) throw InvalidArgument("fit_power_law_mle_counts: no samples in range");
  return solve_mle(sum_log, n, lo, hi);
}

}  // namespace recordlab::stats
