// Wall-clock comparison of the serial reference kernels and their OpenMP
// versions. Usage: bench_kernels [repeats]
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <vector>

#include "recordlab/grw.hpp"
#include "recordlab/records.hpp"
#include "recordlab/stats/autocorrelation.hpp"
#include "recordlab/stats/gev.hpp"

using namespace recordlab;

namespace {

double best_of(int repeats, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-22s %10.4f %10.4f %8.2fx\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-22s %10s %10s %9s\n", "kernel", "serial[s]", "omp[s]", "speedup");

  grw::EnsembleSpec spec{grw::GrwParams{0.00031, 0.015, 5000, 1.0}, 2000, 1, std::nullopt};
  grw::CollectorSet c;
  c.pooled_ages = c.longest_age = c.record_count = true;
  row("run_ensemble", best_of(repeats, [&] { grw::run_ensemble_serial(spec, c); }),
      best_of(repeats, [&] { grw::run_ensemble(spec, c); }));

  std::vector<TimeSeries> blocks;
  for (std::uint64_t j = 0; j < 2000; ++j)
    blocks.push_back(grw::simulate(grw::GrwParams{0.00031, 0.015, 1000, 1.0}, j));
  row("block_maxima", best_of(repeats, [&] { records::block_maxima_serial(blocks); }),
      best_of(repeats, [&] { records::block_maxima(blocks); }));

  std::mt19937_64 rng(2);
  std::normal_distribution<double> gauss;
  std::vector<double> xs(200000);
  for (auto& x : xs) x = gauss(rng);
  row("autocorrelation", best_of(repeats, [&] { stats::autocorrelation_serial(xs, 200); }),
      best_of(repeats, [&] { stats::autocorrelation(xs, 200); }));

  std::vector<double> maxima;
  for (auto r : grw::run_ensemble({grw::GrwParams{0.00031, 0.015, 1000, 1.0}, 2000, 3, std::nullopt},
                                  [] {
                                    grw::CollectorSet s;
                                    s.longest_age = true;
                                    return s;
                                  }())
                    .longest_age)
    maxima.push_back(static_cast<double>(r));
  row("bootstrap_shape", best_of(1, [&] { stats::bootstrap_shape_interval(maxima, 40, 4, 0.95, 1); }),
      best_of(1, [&] { stats::bootstrap_shape_interval(maxima, 40, 4); }));
}
