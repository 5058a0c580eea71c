#include "recordlab/grw.hpp"

#include <cstdlib>
#include <string>

#include "recordlab/error.hpp"

namespace recordlab::grw {

void GrwParams::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw InvalidArgument("GrwParams: sigma must be positive, got " + std::to_string(sigma));
  if (!std::isfinite(mu)) throw InvalidArgument("GrwParams: mu must be finite");
  if (n_steps < 2)
    throw InvalidArgument("GrwParams: n_steps must be at least 2, got " + std::to_string(n_steps));
  if (!(y0 > 0.0) || !std::isfinite(y0))
    throw InvalidArgument("GrwParams: y0 must be positive, got " + std::to_string(y0));
}

namespace detail {
void throw_overflow(std::size_t step) {
  throw Error("geometric random walk left the representable range at step " +
              std::to_string(step));
}
}  // namespace detail

TimeSeries simulate(const GrwParams& params, std::uint64_t seed) {
  params.validate();
  return simulate_with(params, GaussianIncrements(params.mu, params.sigma, seed));
}

int threads_from_env() {
  const char* text = std::getenv("RECORDLAB_THREADS");
  if (text == nullptr || *text == '\0') return 0;
  char* end = nullptr;
  const long value = std::strtol(text, &end, 10);
  if (*end != '\0' || value < 1)
    throw InvalidArgument("RECORDLAB_THREADS must be a positive integer, got '" +
                          std::string(text) + "'");
  return static_cast<int>(value);
}

}  // namespace recordlab::grw
