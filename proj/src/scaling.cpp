#include "recordlab/stats/scaling.hpp"

#include <cmath>

#include "recordlab/error.hpp"
#include "recordlab/stats/gev.hpp"

namespace recordlab::stats {

namespace {

void check_n_list(std::span<const std::size_t> n_list, std::size_t min_n) {
  if (n_list.empty()) throw InvalidArgument("scaling: empty N list");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < min_n)
      throw InvalidArgument("scaling: N=" + std::to_string(n_list[i]) + " below minimum " +
                            std::to_string(min_n));
    if (i > 0 && n_list[i] <= n_list[i - 1])
      throw InvalidArgument("scaling: N list must be strictly increasing");
  }
}

}  // namespace

void fit_log_scaling(ScalingTable& table) {
  std::vector<double> log_n, a, b, mean;
  for (const auto& row : table.rows) {
    if (!row.fit_ok || static_cast<double>(row.n) <= table.threshold) continue;
    log_n.push_back(std::log(static_cast<double>(row.n)));
    a.push_back(row.a);
    b.push_back(row.b);
    mean.push_back(row.mean_rmax);
  }
  table.a_vs_log_n.reset();
  table.b_vs_log_n.reset();
  table.mean_rmax_vs_log_n.reset();
  if (log_n.size() < 2) return;
  table.a_vs_log_n = fit_line(log_n, a);
  table.b_vs_log_n = fit_line(log_n, b);
  table.mean_rmax_vs_log_n = fit_line(log_n, mean);
}

ScalingTable scaling_study(const grw::GrwParams& params, std::span<const std::size_t> n_list,
                           std::size_t m, std::uint64_t master_seed, const ScalingOptions& options) {
  check_n_list(n_list, 100);
  if (m < 1000) throw InvalidArgument("scaling_study: need at least 1000 realizations per N");

  ScalingTable table;
  table.threshold = options.threshold;
  grw::CollectorSet collectors;
  collectors.longest_age = true;
  collectors.maxima_censoring = options.maxima_censoring;

  for (const auto n : n_list) {
    grw::EnsembleSpec spec;
    spec.params = params;
    spec.params.n_steps = n;
    spec.n_realizations = m;
    spec.master_seed = stream_seed(master_seed, n);
    const auto summary = grw::run_ensemble(spec, collectors, options.threads);

    ScalingRow row;
    row.n = n;
    std::vector<double> maxima;
    for (auto r : summary.longest_age)
      if (r > 0) maxima.push_back(static_cast<double>(r));
    row.n_realizations = maxima.size();
    if (!maxima.empty()) {
      double s = 0.0;
      for (double x : maxima) s += x;
      row.mean_rmax = s / static_cast<double>(maxima.size());
    }
    try {
      const auto fit = estimate_gev(maxima);
      row.a = fit.a;
      row.b = fit.b;
      row.k = fit.k;
      row.fit_ok = fit.converged;
      row.diagnostic = fit.diagnostic;
    } catch (const Error& e) {
      row.fit_ok = false;
      row.diagnostic = e.what();
    }
    table.rows.push_back(std::move(row));
  }
  fit_log_scaling(table);
  return table;
}

RecordGrowth mean_records_scaling(const grw::GrwParams& params, std::span<const std::size_t> n_list,
                                  std::size_t m, std::uint64_t master_seed,
                                  std::optional<double> fixed_increment, int threads) {
  if (params.mu != 0.0)
    throw InvalidArgument(
        "mean_records_scaling: the square-root law holds for the drift-free walk; set mu = 0");
  check_n_list(n_list, 2);
  if (m < 1) throw InvalidArgument("mean_records_scaling: need at least one realization");

  RecordGrowth out;
  grw::CollectorSet collectors;
  collectors.record_count = true;
  std::vector<double> log_n, log_mean;
  for (const auto n : n_list) {
    grw::EnsembleSpec spec;
    spec.params = params;
    spec.params.n_steps = n;
    spec.n_realizations = m;
    spec.master_seed = stream_seed(master_seed, n);
    spec.fixed_increment = fixed_increment;
    const auto summary = grw::run_ensemble(spec, collectors, threads);
    double s = 0.0;
    for (auto c : summary.record_count) s += static_cast<double>(c);
    const double mean = s / static_cast<double>(m);
    out.n.push_back(n);
    out.mean_count.push_back(mean);
    log_n.push_back(std::log(static_cast<double>(n)));
    log_mean.push_back(std::log(mean));
  }
  if (log_n.size() < 2) throw InvalidArgument("mean_records_scaling: need at least two N values");
  const auto line = fit_line(log_n, log_mean);
  out.beta = line.slope;
  out.beta_stderr = line.slope_stderr;
  out.reliable = m >= 2 && log_n.size() >= 3;
  return out;
}

}  // namespace recordlab::stats
