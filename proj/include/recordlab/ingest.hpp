#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "recordlab/time_series.hpp"

namespace recordlab::ingest {

// Which price column of a daily quote export to read.
enum class PriceColumn { adjusted_close, close };

const char* column_name(PriceColumn column) noexcept;

// Reads a daily quote table: header row with a "Date" column (yyyy-mm-dd) and
// the selected price column; other columns are ignored. Rows may come in any
// order and are returned sorted by date. CRLF line endings are accepted.
// Throws ParseError naming the offending line for wrong field counts,
// unparsable numbers or dates, non-positive prices and duplicate dates.
TimeSeries parse_daily_csv(std::istream& in,
                           PriceColumn column = PriceColumn::adjusted_close,
                           std::string label = {});

// As parse_daily_csv; the label defaults to the file stem.
TimeSeries read_daily_csv(const std::filesystem::path& path,
                          PriceColumn column = PriceColumn::adjusted_close);

// Writes "Date,<column>" rows with shortest round-trip number formatting, so
// parse_daily_csv(write_daily_csv(s)) reproduces s exactly.
void write_daily_csv(std::ostream& out, const TimeSeries& series,
                     PriceColumn column = PriceColumn::adjusted_close);

struct ReturnStats {
  double mu = 0.0;     // mean log-return per step
  double sigma = 0.0;  // sample standard deviation (n - 1 divisor)
  std::size_t n_returns = 0;
};

// R_i = ln(v[i+1] / v[i]). Requires at least two strictly positive values.
std::vector<double> log_returns(std::span<const double> values);
std::vector<double> log_returns(const TimeSeries& series);

// Requires length >= 3. A constant series gives mu = sigma = 0.
ReturnStats estimate_params(const TimeSeries& series);

// Unweighted mean of mu and of sigma across stocks; n_returns is summed.
ReturnStats portfolio_mean_params(std::span<const ReturnStats> stats);

// Consecutive non-overlapping blocks of exactly `length` values. The trailing
// remainder is dropped; a series shorter than `length` yields no blocks.
std::vector<TimeSeries> window(const TimeSeries& series, std::size_t length);

}  // namespace recordlab::ingest
