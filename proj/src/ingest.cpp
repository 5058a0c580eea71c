#include "recordlab/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <string_view>

#include "recordlab/error.hpp"

namespace recordlab::ingest {

namespace {

using std::chrono::year_month_day;

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

bool parse_date(std::string_view s, year_month_day& out) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  int y = 0, m = 0, d = 0;
  if (!parse_int(s.substr(0, 4), y) || !parse_int(s.substr(5, 2), m) ||
      !parse_int(s.substr(8, 2), d))
    return false;
  out = year_month_day{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                       std::chrono::day{static_cast<unsigned>(d)}};
  return out.ok();
}

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

std::string format_date(const year_month_day& d) {
  char buf[16];
  const int y = static_cast<int>(d.year());
  const unsigned m = static_cast<unsigned>(d.month());
  const unsigned day = static_cast<unsigned>(d.day());
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", y, m, day);
  return buf;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

const char* column_name(PriceColumn column) noexcept {
  return column == PriceColumn::adjusted_close ? "Adj Close" : "Close";
}

TimeSeries parse_daily_csv(std::istream& in, PriceColumn column, std::string label) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw ParseError(1, "missing header row");
  ++line_no;
  std::string_view header_line = line;
  if (header_line.size() >= 3 && header_line.substr(0, 3) == "\xEF\xBB\xBF")
    header_line.remove_prefix(3);
  const auto header = split_fields(header_line);
  const std::size_t n_fields = header.size();

  std::size_t date_col = n_fields, price_col = n_fields;
  for (std::size_t i = 0; i < n_fields; ++i) {
    const auto name = trim(header[i]);
    if (name == "Date") date_col = i;
    if (name == column_name(column)) price_col = i;
  }
  if (date_col == n_fields) throw ParseError(1, "header has no 'Date' column");
  if (price_col == n_fields)
    throw ParseError(1, std::string("header has no '") + column_name(column) + "' column");

  struct Row {
    year_month_day date;
    double price;
    std::size_t line;
  };
  std::vector<Row> rows;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(trim(line));
    if (fields.size() != n_fields)
      throw ParseError(line_no, "expected " + std::to_string(n_fields) + " fields, got " +
                                    std::to_string(fields.size()));
    Row row{};
    row.line = line_no;
    const auto date_text = trim(fields[date_col]);
    if (!parse_date(date_text, row.date))
      throw ParseError(line_no, "invalid date '" + std::string(date_text) + "'");
    const auto price_text = trim(fields[price_col]);
    if (!parse_double(price_text, row.price))
      throw ParseError(line_no, "invalid price '" + std::string(price_text) + "'");
    if (row.price <= 0.0)
      throw ParseError(line_no, "non-positive price '" + std::string(price_text) + "'");
    rows.push_back(row);
  }

  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.date < b.date; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].date == rows[i - 1].date) {
      const auto later = std::max(rows[i].line, rows[i - 1].line);
      const auto earlier = std::min(rows[i].line, rows[i - 1].line);
      throw ParseError(later, "duplicate date " + format_date(rows[i].date) +
                                  " (first seen on line " + std::to_string(earlier) + ")");
    }
  }

  TimeSeries series;
  series.label = std::move(label);
  series.values.reserve(rows.size());
  series.dates.reserve(rows.size());
  for (const auto& r : rows) {
    series.values.push_back(r.price);
    series.dates.push_back(r.date);
  }
  return series;
}

TimeSeries read_daily_csv(const std::filesystem::path& path, PriceColumn column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return parse_daily_csv(in, column, path.stem().string());
}

void write_daily_csv(std::ostream& out, const TimeSeries& series, PriceColumn column) {
  if (!series.has_dates()) throw InvalidArgument("write_daily_csv: series has no dates");
  if (series.dates.size() != series.values.size())
    throw InvalidArgument("write_daily_csv: dates and values differ in length");
  out << "Date," << column_name(column) << '\n';
  for (std::size_t i = 0; i < series.size(); ++i)
    out << format_date(series.dates[i]) << ',' << format_double(series.values[i]) << '\n';
}

std::vector<double> log_returns(std::span<const double> values) {
  if (values.size() < 2) throw InvalidArgument("log_returns: need at least two values");
  std::vector<double> out;
  out.reserve(values.size() - 1);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0))
      throw InvalidArgument("log_returns: non-positive value at index " + std::to_string(i));
    if (i > 0) out.push_back(std::log(values[i] / values[i - 1]));
  }
  return out;
}

std::vector<double> log_returns(const TimeSeries& series) { return log_returns(series.values); }

ReturnStats estimate_params(const TimeSeries& series) {
  if (series.size() < 3) throw InvalidArgument("estimate_params: need at least three values");
  const auto r = log_returns(series);
  const double n = static_cast<double>(r.size());
  const double mean = std::accumulate(r.begin(), r.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : r) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0)), r.size()};
}

ReturnStats portfolio_mean_params(std::span<const ReturnStats> stats) {
  if (stats.empty()) throw InvalidArgument("portfolio_mean_params: empty list");
  ReturnStats out;
  for (const auto& s : stats) {
    out.mu += s.mu;
    out.sigma += s.sigma;
    out.n_returns += s.n_returns;
  }
  out.mu /= static_cast<double>(stats.size());
  out.sigma /= static_cast<double>(stats.size());
  return out;
}

std::vector<TimeSeries> window(const TimeSeries& series, std::size_t length) {
  if (length < 2) throw InvalidArgument("window: length must be at least 2");
  std::vector<TimeSeries> blocks;
  const std::size_t n_blocks = series.size() / length;
  blocks.reserve(n_blocks);
  for (std::size_t b = 0; b < n_blocks; ++b) {
    TimeSeries block;
    block.label = series.label + "#" + std::to_string(b);
    const auto first = static_cast<std::ptrdiff_t>(b * length);
    const auto last = first + static_cast<std::ptrdiff_t>(length);
    block.values.assign(series.values.begin() + first, series.values.begin() + last);
    if (series.has_dates())
      block.dates.assign(series.dates.begin() + first, series.dates.begin() + last);
    blocks.push_back(std::move(block));
  }
  return blocks;
}

}  // namespace recordlab::ingest
