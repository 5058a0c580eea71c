#include <omp.h>

#include <algorithm>

#include "recordlab/error.hpp"
#include "recordlab/grw.hpp"

namespace recordlab::grw {

void EnsembleSpec::validate() const {
  params.validate();
  if (n_realizations < 1) throw InvalidArgument("EnsembleSpec: n_realizations must be >= 1");
  if (fixed_increment && !std::isfinite(*fixed_increment))
    throw InvalidArgument("EnsembleSpec: fixed increment must be finite");
}

namespace {

EnsembleSummary prepare(const EnsembleSpec& spec, const CollectorSet& collectors) {
  spec.validate();
  if (!collectors.any()) throw InvalidArgument("run_ensemble: no collectors requested");
  EnsembleSummary summary;
  summary.spec = spec;
  summary.collectors = collectors;
  if (collectors.pooled_ages) summary.age_counts.assign(spec.params.n_steps, 0);
  if (collectors.longest_age) summary.longest_age.assign(spec.n_realizations, 0);
  if (collectors.record_count) summary.record_count.assign(spec.n_realizations, 0);
  return summary;
}

// One realization: walk, track records, write into slot j and the caller's
// local age histogram.
void run_one(const EnsembleSpec& spec, const CollectorSet& collectors, std::size_t j,
             std::vector<std::uint64_t>& age_counts, EnsembleSummary& summary) {
  records::RecordTracker tracker;
  const bool pool = collectors.pooled_ages;
  auto sink = [&](double y) {
    const auto age = tracker.push(y);
    if (pool && age > 0) ++age_counts[age];
  };
  if (spec.fixed_increment)
    walk(spec.params, ConstantIncrements(*spec.fixed_increment), sink);
  else
    walk(spec.params,
         GaussianIncrements(spec.params.mu, spec.params.sigma, realization_seed(spec.master_seed, j)),
         sink);

  if (pool && collectors.age_censoring == records::Censoring::include) {
    if (auto open = tracker.censored_age()) ++age_counts[*open];
  }
  if (collectors.longest_age) summary.longest_age[j] = tracker.longest_age(collectors.maxima_censoring);
  if (collectors.record_count) summary.record_count[j] = tracker.count();
}

}  // namespace

EnsembleSummary run_ensemble(const EnsembleSpec& spec, const CollectorSet& collectors, int threads) {
  auto summary = prepare(spec, collectors);
  const int n_threads = threads > 0 ? threads : omp_get_max_threads();
  const auto m = static_cast<std::ptrdiff_t>(spec.n_realizations);
  const std::size_t hist_size = collectors.pooled_ages ? spec.params.n_steps : 0;

  // Exceptions must not cross the OpenMP region boundary.
  std::exception_ptr failure;
#pragma omp parallel num_threads(n_threads)
  {
    std::vector<std::uint64_t> local(hist_size, 0);
#pragma omp for schedule(dynamic, 16)
    for (std::ptrdiff_t j = 0; j < m; ++j) {
      try {
        run_one(spec, collectors, static_cast<std::size_t>(j), local, summary);
      } catch (...) {
#pragma omp critical(recordlab_ensemble_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    // Integer addition: the merged histogram is independent of merge order.
#pragma omp critical(recordlab_ensemble_merge)
    for (std::size_t r = 0; r < hist_size; ++r) summary.age_counts[r] += local[r];
  }
  if (failure) std::rethrow_exception(failure);
  return summary;
}

EnsembleSummary run_ensemble_serial(const EnsembleSpec& spec, const CollectorSet& collectors) {
  auto summary = prepare(spec, collectors);
  for (std::size_t j = 0; j < spec.n_realizations; ++j)
    run_one(spec, collectors, j, summary.age_counts, summary);
  return summary;
}

}  // namespace recordlab::grw
