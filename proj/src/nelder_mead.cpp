#include "recordlab/stats/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "recordlab/error.hpp"

namespace recordlab::stats {

namespace {

struct Simplex {
  std::vector<std::vector<double>> x;
  std::vector<double> f;
};

Simplex build(const std::function<double(std::span<const double>)>& f, const std::vector<double>& x0,
              double f0, const std::vector<double>& step) {
  Simplex s;
  s.x.push_back(x0);
  s.f.push_back(f0);
  for (std::size_t i = 0; i < x0.size(); ++i) {
    auto v = x0;
    v[i] += step[i];
    s.f.push_back(f(v));
    s.x.push_back(std::move(v));
  }
  return s;
}

bool collapsed(const Simplex& s, std::size_t best, double tol) {
  const auto& xb = s.x[best];
  for (const auto& v : s.x)
    for (std::size_t k = 0; k < v.size(); ++k)
      if (std::abs(v[k] - xb[k]) > tol * std::max(1.0, std::abs(xb[k]))) return false;
  return true;
}

}  // namespace

SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                          std::vector<double> start, const SimplexOptions& options) {
  const std::size_t dim = start.size();
  if (dim == 0) throw InvalidArgument("nelder_mead: empty start vector");
  std::vector<double> step = options.initial_step;
  if (step.empty())
    for (double v : start) step.push_back(0.1 * std::max(1.0, std::abs(v)));
  if (step.size() != dim) throw InvalidArgument("nelder_mead: step size mismatch");

  SimplexResult result;
  Simplex s = build(f, start, f(start), step);
  std::vector<std::size_t> order(dim + 1);
  int restarts_left = 1;

  auto point = [&](const std::vector<double>& c, const std::vector<double>& w, double t) {
    std::vector<double> p(dim);
    for (std::size_t k = 0; k < dim; ++k) p[k] = c[k] + t * (w[k] - c[k]);
    return p;
  };

  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return s.f[a] < s.f[b]; });
    const auto best = order.front(), worst = order.back(), second = order[dim - 1];

    if (collapsed(s, best, options.x_tolerance)) {
      if (restarts_left-- > 0) {
        const auto x0 = s.x[best];
        const double f0 = s.f[best];
        std::vector<double> fresh(dim);
        for (std::size_t k = 0; k < dim; ++k) fresh[k] = 0.05 * std::max(std::abs(step[k]), 1e-3);
        s = build(f, x0, f0, fresh);
        continue;
      }
      result.converged = true;
      result.x = s.x[best];
      result.value = s.f[best];
      return result;
    }
    if (result.iterations >= options.max_iterations) {
      result.x = s.x[best];
      result.value = s.f[best];
      return result;
    }
    ++result.iterations;

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += s.x[i][k] / static_cast<double>(dim);
    }

    const auto reflected = point(centroid, s.x[worst], -1.0);
    const double f_r = f(reflected);
    if (f_r < s.f[best]) {
      const auto expanded = point(centroid, s.x[worst], -2.0);
      const double f_e = f(expanded);
      if (f_e < f_r) {
        s.x[worst] = expanded;
        s.f[worst] = f_e;
      } else {
        s.x[worst] = reflected;
        s.f[worst] = f_r;
      }
      continue;
    }
    if (f_r < s.f[second]) {
      s.x[worst] = reflected;
      s.f[worst] = f_r;
      continue;
    }
    // Outside contraction when the reflection beats the worst point, inside otherwise.
    const bool outside = f_r < s.f[worst];
    const auto contracted = point(centroid, s.x[worst], outside ? -0.5 : 0.5);
    const double f_c = f(contracted);
    if (f_c < (outside ? f_r : s.f[worst])) {
      s.x[worst] = contracted;
      s.f[worst] = f_c;
      continue;
    }
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == best) continue;
      s.x[i] = point(s.x[best], s.x[i], 0.5);
      s.f[i] = f(s.x[i]);
    }
  }
}

}  // namespace recordlab::stats
