#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace recordlab::stats {

// Logarithmically binned histogram of positive integer data.
//
// Bin i holds the integers lo[i] <= r <= hi[i]. The bounds come from the
// geometric sequence 10^(i / bins_per_decade) rounded up to integers, with
// duplicate bounds merged, so at small r the bins are single integers and at
// large r they grow by a constant ratio. width[i] is the number of integers
// in the bin, density[i] = count[i] / (width[i] * total), and center[i] is
// the geometric mean of lo[i] and hi[i]. Empty bins are kept with zero
// density, so sum(density * width) == 1.
struct LogHistogram {
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<double> center;
  std::vector<double> width;
  std::vector<double> density;
  std::vector<std::uint64_t> count;
  std::uint64_t total = 0;

  std::size_t size() const noexcept { return center.size(); }
};

inline constexpr int kDefaultBinsPerDecade = 8;

// Throws InvalidArgument on empty input, zero values or bins_per_decade < 1.
LogHistogram log_binned_histogram(std::span<const std::size_t> values,
                                  int bins_per_decade = kDefaultBinsPerDecade);

// Same, from unit-bin counts: counts[r] is the number of observations equal
// to r (counts[0] must be zero).
LogHistogram log_binned_histogram_from_counts(std::span<const std::uint64_t> counts,
                                              int bins_per_decade = kDefaultBinsPerDecade);

// Columns: center, density, count (plus lo, hi for reference).
void write_histogram_tsv(std::ostream& out, const LogHistogram& hist);

// counts[r] for r in [0, max(values)].
std::vector<std::uint64_t> unit_counts(std::span<const std::size_t> values);

}  // namespace recordlab::stats
