#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "recordlab/grw.hpp"
#include "recordlab/records.hpp"
#include "recordlab/stats/regression.hpp"

namespace recordlab::stats {

struct ScalingRow {
  std::size_t n = 0;
  double a = 0.0;  // location a_N
  double b = 0.0;  // scale b_N
  double k = 0.0;  // shape k_N
  double mean_rmax = 0.0;
  std::size_t n_realizations = 0;  // realizations contributing a maximum
  bool fit_ok = false;
  std::string diagnostic;
};

// Location, scale and mean longest age against ln N, fitted over converged
// rows with N above the threshold. A fit is absent when fewer than two such
// rows exist.
struct ScalingTable {
  std::vector<ScalingRow> rows;
  double threshold = 30000.0;
  std::optional<LineFit> a_vs_log_n;
  std::optional<LineFit> b_vs_log_n;
  std::optional<LineFit> mean_rmax_vs_log_n;
};

inline constexpr double kDefaultScalingThreshold = 30000.0;

struct ScalingOptions {
  double threshold = kDefaultScalingThreshold;
  records::Censoring maxima_censoring = records::Censoring::include;
  int threads = 0;
};

// Refits the ln N regressions of a table in place from its rows.
void fit_log_scaling(ScalingTable& table);

// For each N (>= 100, strictly increasing): m >= 1000 realizations of the
// walk with params.n_steps = N, master seed stream_seed(master_seed, N), the
// longest record age per realization, a GEV fit and the mean. Rows whose fit
// fails are flagged and left out of the log fits.
ScalingTable scaling_study(const grw::GrwParams& params, std::span<const std::size_t> n_list,
                           std::size_t m, std::uint64_t master_seed,
                           const ScalingOptions& options = {});

struct RecordGrowth {
  double beta = 0.0;  // slope of ln(mean record count) against ln N
  double beta_stderr = 0.0;
  bool reliable = true;  // false for m < 2 or fewer than three N values
  std::vector<std::size_t> n;
  std::vector<double> mean_count;
};

// Mean record count against N for the drift-free walk. Throws
// InvalidArgument when params.mu != 0. fixed_increment replaces the Gaussian
// draws (deterministic limit).
RecordGrowth mean_records_scaling(const grw::GrwParams& params, std::span<const std::size_t> n_list,
                                  std::size_t m, std::uint64_t master_seed,
                                  std::optional<double> fixed_increment = std::nullopt,
                                  int threads = 0);

}  // namespace recordlab::stats
