#include "recordlab/records.hpp"

#include <algorithm>
#include <ostream>

#include "recordlab/error.hpp"

namespace recordlab::records {

const char* censoring_name(Censoring c) noexcept {
  return c == Censoring::include ? "include" : "exclude";
}

RecordSequence find_upper_records(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("find_upper_records: empty series");
  RecordSequence rs;
  rs.series_length = values.size();
  RecordTracker tracker;
  for (double x : values) {
    const auto previous = tracker.count();
    const auto age = tracker.push(x);
    if (tracker.count() != previous) {
      rs.times.push_back(tracker.length());
      rs.values.push_back(x);
      if (age > 0) rs.closed_ages.push_back(age);
    }
  }
  rs.censored_age = tracker.censored_age();
  return rs;
}

RecordSequence find_upper_records(const TimeSeries& series) {
  return find_upper_records(std::span<const double>(series.values));
}

std::vector<std::size_t> record_ages(const RecordSequence& rs, Censoring censoring) {
  auto ages = rs.closed_ages;
  if (censoring == Censoring::include && rs.censored_age) ages.push_back(*rs.censored_age);
  return ages;
}

std::size_t longest_record_age(const RecordSequence& rs, Censoring censoring) {
  std::size_t best = 0;
  for (auto a : rs.closed_ages) best = std::max(best, a);
  if (censoring == Censoring::include && rs.censored_age) best = std::max(best, *rs.censored_age);
  if (best == 0)
    throw InvalidArgument("longest_record_age: no record age under censoring policy '" +
                          std::string(censoring_name(censoring)) + "'");
  return best;
}

std::size_t record_count(const RecordSequence& rs) noexcept { return rs.times.size(); }

namespace {

std::size_t common_length(std::span<const TimeSeries> blocks) {
  if (blocks.empty()) return 0;
  const auto length = blocks.front().size();
  for (const auto& b : blocks) {
    if (b.size() != length)
      throw InvalidArgument("block_maxima: blocks differ in length (" + std::to_string(length) +
                            " vs " + std::to_string(b.size()) + ")");
  }
  return length;
}

std::size_t block_longest_age(const TimeSeries& block, Censoring censoring) {
  RecordTracker tracker;
  for (double x : block.values) tracker.push(x);
  return tracker.longest_age(censoring);
}

BlockMaxima collect(std::size_t length, const std::vector<std::size_t>& per_block) {
  BlockMaxima out;
  out.block_length = length;
  for (std::size_t i = 0; i < per_block.size(); ++i) {
    if (per_block[i] == 0)
      out.skipped_blocks.push_back(i);
    else
      out.maxima.push_back(per_block[i]);
  }
  return out;
}

}  // namespace

BlockMaxima block_maxima(std::span<const TimeSeries> blocks, Censoring censoring) {
  const auto length = common_length(blocks);
  std::vector<std::size_t> per_block(blocks.size(), 0);
  const auto n = static_cast<std::ptrdiff_t>(blocks.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    per_block[static_cast<std::size_t>(i)] =
        block_longest_age(blocks[static_cast<std::size_t>(i)], censoring);
  return collect(length, per_block);
}

BlockMaxima block_maxima_serial(std::span<const TimeSeries> blocks, Censoring censoring) {
  const auto length = common_length(blocks);
  std::vector<std::size_t> per_block;
  per_block.reserve(blocks.size());
  for (const auto& b : blocks) per_block.push_back(block_longest_age(b, censoring));
  return collect(length, per_block);
}

void write_record_tsv(std::ostream& out, const RecordSequence& rs) {
  out << "record_time\trecord_value\tage\tstatus\n";
  const auto old_precision = out.precision(17);
  for (std::size_t j = 0; j < rs.times.size(); ++j) {
    out << rs.times[j] << '\t' << rs.values[j] << '\t';
    if (j < rs.closed_ages.size())
      out << rs.closed_ages[j] << "\tclosed\n";
    else if (rs.censored_age)
      out << *rs.censored_age << "\tcensored\n";
    else
      out << 0 << "\topen\n";
  }
  out.precision(old_precision);
}

}  // namespace recordlab::records
