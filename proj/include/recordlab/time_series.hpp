#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

namespace recordlab {

// An ordered series of observations. Prices are strictly positive; generic
// series may hold any real. When present, dates are strictly increasing and
// have the same length as values.
struct TimeSeries {
  std::vector<double> values;
  std::vector<std::chrono::year_month_day> dates;
  std::string label;

  std::size_t size() const noexcept { return values.size(); }
  bool has_dates() const noexcept { return !dates.empty(); }
};

}  // namespace recordlab
