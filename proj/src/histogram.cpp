#include "recordlab/stats/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "recordlab/error.hpp"

namespace recordlab::stats {

std::vector<std::uint64_t> unit_counts(std::span<const std::size_t> values) {
  if (values.empty()) throw InvalidArgument("histogram: empty input");
  const auto max_value = *std::max_element(values.begin(), values.end());
  std::vector<std::uint64_t> counts(max_value + 1, 0);
  for (auto v : values) {
    if (v == 0) throw InvalidArgument("histogram: values must be positive");
    ++counts[v];
  }
  return counts;
}

LogHistogram log_binned_histogram(std::span<const std::size_t> values, int bins_per_decade) {
  const auto counts = unit_counts(values);
  return log_binned_histogram_from_counts(counts, bins_per_decade);
}

LogHistogram log_binned_histogram_from_counts(std::span<const std::uint64_t> counts,
                                              int bins_per_decade) {
  if (bins_per_decade < 1) throw InvalidArgument("histogram: bins_per_decade must be >= 1");
  if (!counts.empty() && counts[0] != 0) throw InvalidArgument("histogram: values must be positive");

  std::uint64_t total = 0;
  std::size_t max_value = 0;
  for (std::size_t r = 1; r < counts.size(); ++r) {
    total += counts[r];
    if (counts[r] > 0) max_value = r;
  }
  if (total == 0) throw InvalidArgument("histogram: empty input");

  // Integer bin starts 1 = s_0 < s_1 < ... ; the last bin ends at max_value.
  std::vector<std::size_t> starts{1};
  for (int i = 1;; ++i) {
    const double edge = std::pow(10.0, static_cast<double>(i) / bins_per_decade);
    const auto s = static_cast<std::size_t>(std::ceil(edge - 1e-9));
    if (s > max_value) break;
    if (s > starts.back()) starts.push_back(s);
  }

  LogHistogram h;
  h.total = total;
  for (std::size_t b = 0; b < starts.size(); ++b) {
    const std::size_t lo = starts[b];
    const std::size_t hi = b + 1 < starts.size() ? starts[b + 1] - 1 : max_value;
    std::uint64_t c = 0;
    for (std::size_t r = lo; r <= hi; ++r) c += counts[r];
    const double width = static_cast<double>(hi - lo + 1);
    h.lo.push_back(static_cast<double>(lo));
    h.hi.push_back(static_cast<double>(hi));
    h.center.push_back(std::sqrt(static_cast<double>(lo) * static_cast<double>(hi)));
    h.width.push_back(width);
    h.count.push_back(c);
    h.density.push_back(static_cast<double>(c) / (width * static_cast<double>(total)));
  }
  return h;
}

void write_histogram_tsv(std::ostream& out, const LogHistogram& hist) {
  out << "center\tdensity\tcount\tlo\thi\n";
  const auto old_precision = out.precision(17);
  for (std::size_t i = 0; i < hist.size(); ++i)
    out << hist.center[i] << '\t' << hist.density[i] << '\t' << hist.count[i] << '\t'
        << hist.lo[i] << '\t' << hist.hi[i] << '\n';
  out.precision(old_precision);
}

}  // namespace recordlab::stats
