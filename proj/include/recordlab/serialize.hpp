#pragma once

#include <iosfwd>

#include <json.hpp>

#include "recordlab/grw.hpp"
#include "recordlab/ingest.hpp"
#include "recordlab/stats/autocorrelation.hpp"
#include "recordlab/stats/gev.hpp"
#include "recordlab/stats/histogram.hpp"
#include "recordlab/stats/power_law.hpp"
#include "recordlab/stats/scaling.hpp"

namespace recordlab {

using Json = nlohmann::ordered_json;

Json to_json(const grw::GrwParams& p);
Json to_json(const grw::EnsembleSpec& spec);
Json to_json(const stats::LogHistogram& h);
Json to_json(const stats::PowerLawFit& f);
Json to_json(const stats::GevFit& f);
Json to_json(const stats::ShapeInterval& s);
Json to_json(const stats::AutocorrSeries& c);
Json to_json(const stats::LineFit& f);
Json to_json(const stats::ScalingTable& t);
Json to_json(const stats::RecordGrowth& g);
Json to_json(const ingest::ReturnStats& s);

// Spec echo (params, M, master seed, RNG and seed mixing names), the censoring
// policies, the pooled age histogram (log-binned) and one
// (realization_index, r_max, record_count) triple per realization.
Json ensemble_to_json(const grw::EnsembleSummary& summary,
                      int bins_per_decade = stats::kDefaultBinsPerDecade);

// Columns n, a_N, b_N, k_N, mean_rmax, n_realizations, fit_ok.
void write_scaling_tsv(std::ostream& out, const stats::ScalingTable& table);

// Columns lag, value.
void write_autocorr_tsv(std::ostream& out, const stats::AutocorrSeries& c);

// Columns index, value (1-based index).
void write_series_tsv(std::ostream& out, const TimeSeries& series);

}  // namespace recordlab
