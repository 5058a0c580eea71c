#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "recordlab/error.hpp"
#include "recordlab/stats/power_law.hpp"

using namespace recordlab;
using namespace recordlab::stats;

TEST_CASE("harmonic_number closed forms") {
  for (double alpha : {0.5, 1.0, 1.652, 3.0}) CHECK(harmonic_number(1, alpha) == 1.0);
  CHECK(harmonic_number(3, 1.0) == doctest::Approx(11.0 / 6.0).epsilon(1e-15));
  CHECK(harmonic_number(1000, 1.0) == doctest::Approx(7.485470860550345).epsilon(1e-14));
  CHECK_THROWS_AS(harmonic_number(0, 1.0), InvalidArgument);
}

TEST_CASE("harmonic_number agrees with the extended-precision oracle to 12 digits") {
  for (auto [n, alpha] : {std::pair<std::size_t, double>{1000000, 1.652}, {1000000, 1.0}, {20000, 2.5}}) {
    const long double ref = oracle::harmonic_long(n, alpha);
    CHECK(std::abs(harmonic_number(n, alpha) - static_cast<double>(ref)) / static_cast<double>(ref) < 1e-12);
  }
}

TEST_CASE("harmonic_number is increasing in n and decreasing in alpha") {
  for (std::size_t n = 2; n < 200; n += 7) {
    CHECK(harmonic_number(n + 1, 1.6) > harmonic_number(n, 1.6));
    CHECK(harmonic_number(n, 1.6) > harmonic_number(n, 1.7));
  }
}

TEST_CASE("least squares recovers a noiseless power-law histogram") {
  LogHistogram h;
  for (double c = 1.0; c < 1e4; c *= 1.5) {
    h.center.push_back(c);
    h.density.push_back(3.0 * std::pow(c, -1.5));
    h.lo.push_back(c);
    h.hi.push_back(c);
    h.width.push_back(1.0);
    h.count.push_back(1);
  }
  const auto fit = fit_power_law_ls(h, {1.0, 1e4});
  CHECK(fit.alpha == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(fit.alpha_stderr < 1e-9);
  CHECK(fit.method == PowerLawMethod::logbin_least_squares);
  CHECK(fit.normalization_A * harmonic_number(10000, fit.alpha) == doctest::Approx(1.0).epsilon(1e-9));

  LogHistogram two = h;
  for (auto& d : two.density) d = 0.0;
  two.density[0] = 1.0;
  two.density[3] = 0.1;
  CHECK_THROWS_AS(fit_power_law_ls(two, {1.0, 1e4}), InvalidArgument);
}

TEST_CASE("MLE recovers the exponent of sampled discrete power laws") {
  std::mt19937_64 rng(1652);
  const oracle::DiscretePowerLawSampler sampler(1.652, 10000);
  std::vector<std::size_t> ages(1000000);
  for (auto& a : ages) a = sampler(rng);
  const auto fit = fit_power_law_mle(ages, 10000);
  CHECK(fit.converged);
  CHECK(std::abs(fit.alpha - 1.652) < 0.01);
  CHECK(fit.alpha_stderr > 0.0);
  CHECK(fit.alpha_stderr < 0.01);
  CHECK(fit.normalization_A * harmonic_number(10000, fit.alpha) == doctest::Approx(1.0).epsilon(1e-9));

  SUBCASE("count-based fit matches the list-based fit") {
    std::vector<std::uint64_t> counts(10001, 0);
    for (auto a : ages) ++counts[a];
    const auto by_counts = fit_power_law_mle_counts(counts, {1, 10000});
    CHECK(by_counts.alpha == doctest::Approx(fit.alpha).epsilon(1e-10));
  }

  SUBCASE("error shrinks as the sample grows") {
    std::vector<std::size_t> small(ages.begin(), ages.begin() + 1000);
    const auto f_small = fit_power_law_mle(small, 10000);
    CHECK(f_small.alpha_stderr > fit.alpha_stderr * 10);
  }
}

TEST_CASE("truncated MLE ignores ages outside the range") {
  std::mt19937_64 rng(8);
  const oracle::DiscretePowerLawSampler sampler(1.8, 5000);
  std::vector<std::uint64_t> counts(5001, 0);
  for (int i = 0; i < 300000; ++i) ++counts[sampler(rng)];
  const auto fit = fit_power_law_mle_counts(counts, {1, 500});
  CHECK(fit.converged);
  CHECK(std::abs(fit.alpha - 1.8) < 0.02);
  CHECK(fit.r_max_fit == 500.0);
}

TEST_CASE("degenerate MLE inputs") {
  const std::vector<std::size_t> ones(100, 1);
  const auto pinned = fit_power_law_mle(ones, 1000);
  CHECK_FALSE(pinned.converged);
  CHECK(pinned.alpha == kAlphaUpper);
  CHECK_FALSE(pinned.diagnostic.empty());

  const std::vector<std::size_t> single{5};
  const auto one = fit_power_law_mle(single, 1000);
  CHECK(std::isinf(one.alpha_stderr));
  CHECK(one.alpha > kAlphaLower);
  CHECK_FALSE(one.diagnostic.empty());

  CHECK_THROWS_AS(fit_power_law_mle(std::vector<std::size_t>{}, 10), InvalidArgument);
  CHECK_THROWS_AS(fit_power_law_mle(std::vector<std::size_t>{11}, 10), InvalidArgument);
  CHECK_THROWS_AS(fit_power_law_mle(std::vector<std::size_t>{0}, 10), InvalidArgument);
}
