#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "recordlab/time_series.hpp"

namespace recordlab::records {

// Whether the open age of the last record takes part in a statistic.
enum class Censoring { exclude, include };

const char* censoring_name(Censoring c) noexcept;

// Upper records of a series. Times are 1-based sample indices; the first
// sample is always a record and ties with the running maximum are not.
// Invariant: times.back() + censored_age.value_or(0) == series_length.
struct RecordSequence {
  std::vector<std::size_t> times;
  std::vector<double> values;
  std::vector<std::size_t> closed_ages;
  std::optional<std::size_t> censored_age;
  std::size_t series_length = 0;
};

// Streaming upper-record detector. Feed samples in order with push(); the
// return value is the age closed by the sample (0 if it is not a record or is
// the first sample).
class RecordTracker {
 public:
  std::size_t push(double x) noexcept {
    ++length_;
    if (length_ == 1 || x > running_max_) {
      running_max_ = x;
      const std::size_t age = length_ == 1 ? 0 : length_ - last_record_;
      last_record_ = length_;
      ++count_;
      if (age > longest_closed_) longest_closed_ = age;
      return age;
    }
    return 0;
  }

  std::size_t length() const noexcept { return length_; }
  std::size_t count() const noexcept { return count_; }
  std::size_t last_record_time() const noexcept { return last_record_; }
  double running_max() const noexcept { return running_max_; }
  std::size_t longest_closed_age() const noexcept { return longest_closed_; }
  std::optional<std::size_t> censored_age() const noexcept {
    if (length_ == 0 || last_record_ == length_) return std::nullopt;
    return length_ - last_record_;
  }
  // 0 when no age is available under the policy.
  std::size_t longest_age(Censoring c) const noexcept {
    std::size_t best = longest_closed_;
    if (c == Censoring::include) {
      if (auto open = censored_age(); open && *open > best) best = *open;
    }
    return best;
  }

 private:
  double running_max_ = 0.0;
  std::size_t length_ = 0;
  std::size_t last_record_ = 0;
  std::size_t count_ = 0;
  std::size_t longest_closed_ = 0;
};

// Single pass over the series. Throws InvalidArgument on an empty series.
RecordSequence find_upper_records(std::span<const double> values);
RecordSequence find_upper_records(const TimeSeries& series);

std::vector<std::size_t> record_ages(const RecordSequence& rs, Censoring censoring);

// Throws InvalidArgument when no age exists under the policy.
std::size_t longest_record_age(const RecordSequence& rs,
                               Censoring censoring = Censoring::include);

std::size_t record_count(const RecordSequence& rs) noexcept;

struct BlockMaxima {
  std::size_t block_length = 0;
  std::vector<std::size_t> maxima;
  // Blocks without any age under the policy (only possible when the censored
  // age is excluded and the first sample is the block maximum).
  std::vector<std::size_t> skipped_blocks;
};

// Longest record age per block, in block order. Blocks are processed in
// parallel; block_maxima_serial is the single-threaded reference. Throws
// InvalidArgument when blocks differ in length.
BlockMaxima block_maxima(std::span<const TimeSeries> blocks,
                         Censoring censoring = Censoring::include);
BlockMaxima block_maxima_serial(std::span<const TimeSeries> blocks,
                                Censoring censoring = Censoring::include);

// One row per record: time, value, age, status (closed | censored | open).
// "open" marks a last record on the final sample, whose age is unknown (0).
void write_record_tsv(std::ostream& out, const RecordSequence& rs);

}  // namespace recordlab::records
