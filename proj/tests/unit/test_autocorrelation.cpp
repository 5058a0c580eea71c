#include <doctest.h>

#include <cmath>
#include <random>

#include "recordlab/error.hpp"
#include "recordlab/stats/autocorrelation.hpp"

using namespace recordlab;
using namespace recordlab::stats;

TEST_CASE("alternating series is perfectly anti-correlated at lag one") {
  std::vector<double> x(1000);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = i % 2 ? -1.0 : 1.0;
  const auto c = autocorrelation(x, 2);
  CHECK(c.values[0] == 1.0);
  CHECK(c.values[1] == doctest::Approx(-1.0).epsilon(2e-3));
  CHECK(c.values[2] == doctest::Approx(1.0).epsilon(3e-3));
  CHECK(c.lags == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("white noise stays inside the 3/sqrt(n) band") {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> gauss;
  std::vector<double> x(10000);
  for (auto& v : x) v = gauss(rng);
  const auto c = autocorrelation(x, 20);
  int inside = 0;
  for (std::size_t k = 1; k <= 20; ++k) inside += std::abs(c.values[k]) < 3.0 / 100.0;
  CHECK(inside >= 19);
}

TEST_CASE("normalized estimator is invariant under positive affine maps") {
  std::mt19937_64 rng(12);
  std::exponential_distribution<double> e(0.01);
  std::vector<double> x(3000), y(3000);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = e(rng) + (i > 0 ? 0.3 * x[i - 1] : 0.0);
    y[i] = 4.5 * x[i] - 120.0;
  }
  const auto a = autocorrelation(x, 30), b = autocorrelation(y, 30);
  for (std::size_t k = 0; k <= 30; ++k) CHECK(b.values[k] == doctest::Approx(a.values[k]).epsilon(1e-10));
  CHECK(a.values[1] > 0.2);
}

TEST_CASE("parallel and serial lag loops agree") {
  std::vector<double> x(777);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(0.1 * static_cast<double>(i)) + 0.01 * i;
  CHECK(autocorrelation(x, 100).values == autocorrelation_serial(x, 100).values);
}

TEST_CASE("autocorrelation preconditions") {
  CHECK_THROWS_AS(autocorrelation(std::vector<double>{2, 2, 2, 2}, 1), InvalidArgument);
  CHECK_THROWS_AS(autocorrelation(std::vector<double>{1, 2, 3}, 3), InvalidArgument);
  CHECK_THROWS_AS(autocorrelation(std::vector<double>{1, 2, 3}, 0), InvalidArgument);
}
