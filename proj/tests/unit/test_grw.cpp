#include <doctest.h>

#include <cmath>
#include <set>

#include "recordlab/error.hpp"
#include "recordlab/grw.hpp"
#include "recordlab/ingest.hpp"

using namespace recordlab;
using namespace recordlab::grw;

namespace {

const GrwParams kStockLikeParams{0.00031, 0.015, 2000, 1.0};

CollectorSet all_collectors() {
  CollectorSet c;
  c.pooled_ages = c.longest_age = c.record_count = true;
  return c;
}

void check_same(const EnsembleSummary& a, const EnsembleSummary& b) {
  CHECK(a.age_counts == b.age_counts);
  CHECK(a.longest_age == b.longest_age);
  CHECK(a.record_count == b.record_count);
}

}  // namespace

TEST_CASE("GrwParams validation") {
  CHECK_NOTHROW(kStockLikeParams.validate());
  CHECK_THROWS_AS((GrwParams{0.0, 0.0, 10, 1.0}.validate()), InvalidArgument);
  CHECK_THROWS_AS((GrwParams{0.0, -1.0, 10, 1.0}.validate()), InvalidArgument);
  CHECK_THROWS_AS((GrwParams{0.0, 0.1, 1, 1.0}.validate()), InvalidArgument);
  CHECK_THROWS_AS((GrwParams{0.0, 0.1, 10, 0.0}.validate()), InvalidArgument);
}

TEST_CASE("constant increments give the deterministic exponential path") {
  const GrwParams p{0.5, 0.1, 50, 3.0};
  const auto s = simulate_with(p, ConstantIncrements(0.5));
  REQUIRE(s.size() == 50);
  for (std::size_t i = 0; i < s.size(); ++i)
    CHECK(s.values[i] == 3.0 * std::exp(static_cast<double>(i) * 0.5));
}

TEST_CASE("log increments of the output equal the injected draws") {
  const GrwParams p{0.00031, 0.015, 5000, 1.0};
  const auto s = simulate(p, 77);
  GaussianIncrements draws(p.mu, p.sigma, 77);
  for (std::size_t i = 1; i < s.size(); ++i)
    CHECK(std::abs(std::log(s.values[i]) - std::log(s.values[i - 1]) - draws()) < 1e-12);
}

TEST_CASE("simulate is reproducible and seed sensitive") {
  CHECK(simulate(kStockLikeParams, 1).values == simulate(kStockLikeParams, 1).values);
  CHECK(simulate(kStockLikeParams, 1).values != simulate(kStockLikeParams, 2).values);
  CHECK(simulate(kStockLikeParams, 1).values.front() == 1.0);
}

TEST_CASE("sample mean of log-returns lies in the CLT band") {
  const GrwParams p{0.00031, 0.015, 100000, 1.0};
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto r = ingest::log_returns(simulate(p, seed));
    double mean = 0.0;
    for (double x : r) mean += x;
    mean /= static_cast<double>(r.size());
    CHECK(std::abs(mean - p.mu) < 3 * p.sigma / std::sqrt(static_cast<double>(r.size())));
  }
}

TEST_CASE("overflow of the value range is reported") {
  CHECK_THROWS_AS(simulate(GrwParams{800.0, 1.0, 10, 1.0}, 1), Error);
}

TEST_CASE("realization seeds are distinct within and across master seeds") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t master : {0u, 1u, 2u, 42u})
    for (std::uint64_t j = 0; j < 50000; ++j) seen.insert(realization_seed(master, j));
  CHECK(seen.size() == 4 * 50000);
}

TEST_CASE("an ensemble of one is the simulate + records pipeline") {
  EnsembleSpec spec{kStockLikeParams, 1, 1234, std::nullopt};
  auto collectors = all_collectors();
  collectors.age_censoring = records::Censoring::include;
  const auto summary = run_ensemble(spec, collectors);

  const auto series = simulate(kStockLikeParams, realization_seed(1234, 0));
  const auto rs = records::find_upper_records(series);
  std::vector<std::uint64_t> expected(kStockLikeParams.n_steps, 0);
  for (auto a : records::record_ages(rs, records::Censoring::include)) ++expected[a];
  CHECK(summary.age_counts == expected);
  CHECK(summary.record_count.at(0) == records::record_count(rs));
  CHECK(summary.longest_age.at(0) == records::longest_record_age(rs, records::Censoring::include));
}

TEST_CASE("ensemble output is independent of the worker count") {
  EnsembleSpec spec{kStockLikeParams, 203, 99, std::nullopt};
  const auto reference = run_ensemble_serial(spec, all_collectors());
  for (int threads : {1, 2, 3, 8}) check_same(run_ensemble(spec, all_collectors(), threads), reference);
}

TEST_CASE("any realization can be re-run standalone") {
  EnsembleSpec spec{kStockLikeParams, 40, 5, std::nullopt};
  const auto summary = run_ensemble(spec, all_collectors());
  for (std::size_t j : {0u, 17u, 39u}) {
    const auto series = simulate(kStockLikeParams, realization_seed(5, j));
    const auto rs = records::find_upper_records(series);
    CHECK(summary.record_count[j] == records::record_count(rs));
    CHECK(summary.longest_age[j] == records::longest_record_age(rs, records::Censoring::include));
  }
}

TEST_CASE("records of the walk equal records of its logarithm") {
  for (std::uint64_t j = 0; j < 100; ++j) {
    const auto y = simulate(kStockLikeParams, realization_seed(31, j));
    std::vector<double> logs;
    for (double v : y.values) logs.push_back(std::log(v));
    CHECK(records::find_upper_records(y).times ==
          records::find_upper_records(std::span<const double>(logs)).times);
  }
}

TEST_CASE("ensemble preconditions") {
  EnsembleSpec spec{kStockLikeParams, 10, 1, std::nullopt};
  CHECK_THROWS_AS(run_ensemble(spec, CollectorSet{}), InvalidArgument);
  spec.n_realizations = 0;
  CHECK_THROWS_AS(run_ensemble(spec, all_collectors()), InvalidArgument);
}

TEST_CASE("fixed increments make every sample a record") {
  EnsembleSpec spec{GrwParams{0.0, 0.01, 300, 1.0}, 3, 1, 0.01};
  const auto s = run_ensemble(spec, all_collectors());
  CHECK(s.record_count == std::vector<std::size_t>{300, 300, 300});
  CHECK(s.age_counts[1] == 3 * 299);
}
