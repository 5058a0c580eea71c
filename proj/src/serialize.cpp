#include "recordlab/serialize.hpp"

#include <ostream>

namespace recordlab {

Json to_json(const grw::GrwParams& p) {
  return {{"mu", p.mu}, {"sigma", p.sigma}, {"n_steps", p.n_steps}, {"y0", p.y0}};
}

Json to_json(const grw::EnsembleSpec& spec) {
  Json j{{"params", to_json(spec.params)},
         {"n_realizations", spec.n_realizations},
         {"master_seed", spec.master_seed},
         {"rng", grw::kRngName},
         {"seed_mixing", kSeedMixName}};
  if (spec.fixed_increment) j["fixed_increment"] = *spec.fixed_increment;
  return j;
}

Json to_json(const stats::LogHistogram& h) {
  return {{"total", h.total}, {"lo", h.lo},       {"hi", h.hi},
          {"center", h.center}, {"density", h.density}, {"count", h.count}};
}

Json to_json(const stats::PowerLawFit& f) {
  return {{"method", stats::method_name(f.method)},
          {"alpha", f.alpha},
          {"alpha_stderr", f.alpha_stderr},
          {"r_min", f.r_min},
          {"r_max_fit", f.r_max_fit},
          {"normalization_A", f.normalization_A},
          {"n_used", f.n_used},
          {"converged", f.converged},
          {"diagnostic", f.diagnostic}};
}

Json to_json(const stats::GevFit& f) {
  return {{"k", f.k},
          {"a", f.a},
          {"b", f.b},
          {"log_likelihood", f.log_likelihood},
          {"initial_log_likelihood", f.initial_log_likelihood},
          {"converged", f.converged},
          {"n_samples", f.n_samples},
          {"iterations", f.iterations},
          {"low_confidence", f.low_confidence},
          {"diagnostic", f.diagnostic}};
}

Json to_json(const stats::ShapeInterval& s) {
  return {{"estimate", s.estimate}, {"lower", s.lower},          {"upper", s.upper},
          {"level", s.level},       {"n_resamples", s.n_resamples}, {"n_failed", s.n_failed}};
}

Json to_json(const stats::AutocorrSeries& c) { return {{"lags", c.lags}, {"values", c.values}}; }

Json to_json(const stats::LineFit& f) {
  return {{"intercept", f.intercept},
          {"slope", f.slope},
          {"intercept_stderr", f.intercept_stderr},
          {"slope_stderr", f.slope_stderr},
          {"n_points", f.n_points}};
}

Json to_json(const stats::ScalingTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"n", r.n},
                    {"a_N", r.a},
                    {"b_N", r.b},
                    {"k_N", r.k},
                    {"mean_rmax", r.mean_rmax},
                    {"n_realizations", r.n_realizations},
                    {"fit_ok", r.fit_ok},
                    {"diagnostic", r.diagnostic}});
  Json fits;
  if (t.a_vs_log_n) {
    fits = {{"applicable", true},
            {"a_N", to_json(*t.a_vs_log_n)},
            {"b_N", to_json(*t.b_vs_log_n)},
            {"mean_rmax", to_json(*t.mean_rmax_vs_log_n)}};
  } else {
    fits = {{"applicable", false},
            {"reason", "fewer than two converged rows with N above the threshold"}};
  }
  return {{"threshold", t.threshold}, {"rows", rows}, {"log_fits", fits}};
}

Json to_json(const stats::RecordGrowth& g) {
  return {{"beta", g.beta},
          {"beta_stderr", g.beta_stderr},
          {"reliable", g.reliable},
          {"n", g.n},
          {"mean_count", g.mean_count}};
}

Json to_json(const ingest::ReturnStats& s) {
  return {{"mu", s.mu}, {"sigma", s.sigma}, {"n_returns", s.n_returns}};
}

Json ensemble_to_json(const grw::EnsembleSummary& summary, int bins_per_decade) {
  Json j{{"spec", to_json(summary.spec)},
         {"age_censoring", records::censoring_name(summary.collectors.age_censoring)},
         {"maxima_censoring", records::censoring_name(summary.collectors.maxima_censoring)}};
  if (summary.collectors.pooled_ages) {
    bool any = false;
    for (auto c : summary.age_counts) any = any || c > 0;
    j["age_histogram"] = any ? to_json(stats::log_binned_histogram_from_counts(summary.age_counts,
                                                                               bins_per_decade))
                             : Json();
  }
  if (summary.collectors.longest_age || summary.collectors.record_count) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < summary.spec.n_realizations; ++i) {
      Json row{{"realization_index", i}};
      if (summary.collectors.longest_age) row["r_max"] = summary.longest_age[i];
      if (summary.collectors.record_count) row["record_count"] = summary.record_count[i];
      rows.push_back(std::move(row));
    }
    j["realizations"] = std::move(rows);
  }
  return j;
}

void write_scaling_tsv(std::ostream& out, const stats::ScalingTable& table) {
  const auto old_precision = out.precision(17);
  out << "n\ta_N\tb_N\tk_N\tmean_rmax\tn_realizations\tfit_ok\n";
  for (const auto& r : table.rows)
    out << r.n << '\t' << r.a << '\t' << r.b << '\t' << r.k << '\t' << r.mean_rmax << '\t'
        << r.n_realizations << '\t' << (r.fit_ok ? 1 : 0) << '\n';
  out.precision(old_precision);
}

void write_autocorr_tsv(std::ostream& out, const stats::AutocorrSeries& c) {
  const auto old_precision = out.precision(17);
  out << "lag\tvalue\n";
  for (std::size_t i = 0; i < c.lags.size(); ++i) out << c.lags[i] << '\t' << c.values[i] << '\n';
  out.precision(old_precision);
}

void write_series_tsv(std::ostream& out, const TimeSeries& series) {
  const auto old_precision = out.precision(17);
  out << "index\tvalue\n";
  for (std::size_t i = 0; i < series.size(); ++i) out << i + 1 << '\t' << series.values[i] << '\n';
  out.precision(old_precision);
}

}  // namespace recordlab
