#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "recordlab/serialize.hpp"

namespace recordlab::cli {

inline constexpr int kFormatVersion = 1;

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Fully resolved parameters of one run. Everything except the output
// directory is echoed into every output file.
struct RunConfig {
  std::string command;
  std::optional<double> mu;
  std::optional<double> sigma;
  std::size_t n = 0;
  std::size_t m = 1;
  std::optional<std::uint64_t> seed;  // generated when absent
  double y0 = 1.0;
  std::size_t window = 1000;
  int bins_per_decade = 8;
  double fit_min = 1.0;
  std::optional<double> fit_max;  // default: support / 10
  bool include_censored = false;         // censored age in age distributions
  bool exclude_censored_maxima = false;  // censored age left out of r_max
  std::string column = "adjusted";
  std::string data;
  std::vector<std::size_t> n_list;
  double threshold = 30000.0;
  std::size_t tau_max = 20;
  std::string out = ".";
};

Json to_json(const RunConfig& config);

// Entry point behind the recordlab executable. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace recordlab::cli
