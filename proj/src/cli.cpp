#include "recordlab/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "recordlab/error.hpp"
#include "recordlab/ingest.hpp"
#include "recordlab/records.hpp"
#include "recordlab/stats/autocorrelation.hpp"

namespace recordlab::cli {

namespace fs = std::filesystem;
using records::Censoring;
using recordlab::to_json;

Json to_json(const RunConfig& c) {
  Json j{{"format_version", kFormatVersion}, {"command", c.command}};
  if (c.command == "simulate" || c.command == "scaling") {
    j["mu"] = c.mu.value_or(0.0);
    j["sigma"] = c.sigma.value_or(0.0);
    j["y0"] = c.y0;
    j["m"] = c.m;
    j["seed"] = c.seed.value_or(0);
  }
  if (c.command == "simulate") j["n"] = c.n;
  if (c.command == "scaling") {
    j["n_list"] = c.n_list;
    j["threshold"] = c.threshold;
  }
  if (c.command == "analyze") {
    j["data"] = c.data;
    j["column"] = c.column;
    j["window"] = c.window;
    j["tau_max"] = c.tau_max;
  }
  if (c.command != "scaling") {
    j["bins_per_decade"] = c.bins_per_decade;
    j["fit_min"] = c.fit_min;
    j["fit_max"] = c.fit_max ? Json(*c.fit_max) : Json();
    j["include_censored"] = c.include_censored;
  }
  j["exclude_censored_maxima"] = c.exclude_censored_maxima;
  return j;
}

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

Censoring age_policy(const RunConfig& c) {
  return c.include_censored ? Censoring::include : Censoring::exclude;
}
Censoring maxima_policy(const RunConfig& c) {
  return c.exclude_censored_maxima ? Censoring::exclude : Censoring::include;
}

// Output files carry the resolved config so a run can be repeated from any of them.
class OutputDir {
 public:
  OutputDir(const RunConfig& config, std::ostream& log) : dir_(config.out), config_(to_json(config)), log_(log) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) throw Error("cannot create output directory " + dir_.string());
  }

  const Json& config() const { return config_; }

  void write_json(const std::string& name, Json body) const {
    Json doc{{"config", config_}};
    for (auto& [key, value] : body.items()) doc[key] = value;
    write(name, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  }

  void write_tsv(const std::string& name, const std::function<void(std::ostream&)>& body) const {
    write(name, [&](std::ostream& os) {
      os << "# config: " << config_.dump() << '\n';
      body(os);
    });
  }

 private:
  void write(const std::string& name, const std::function<void(std::ostream&)>& body) const {
    const auto path = dir_ / name;
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot write " + path.string());
    body(os);
    os.flush();
    if (!os) throw Error("failed writing " + path.string());
    log_ << "wrote " << path.string() << '\n';
  }

  fs::path dir_;
  Json config_;
  std::ostream& log_;
};

stats::FitRange fit_range(const RunConfig& c, std::size_t support) {
  const double hi = c.fit_max.value_or(std::max(1.0, std::floor(static_cast<double>(support) / 10.0)));
  return {c.fit_min, hi};
}

// Power-law fits reported side by side; a failing method is reported, not fatal.
Json power_law_fits(const std::vector<std::uint64_t>& counts, const stats::FitRange& range,
                    int bins_per_decade) {
  Json fits;
  try {
    fits["discrete_mle"] = to_json(stats::fit_power_law_mle_counts(counts, range));
  } catch (const Error& e) {
    fits["discrete_mle"] = {{"error", e.what()}};
  }
  try {
    const auto hist = stats::log_binned_histogram_from_counts(counts, bins_per_decade);
    fits["logbin_least_squares"] = to_json(stats::fit_power_law_ls(hist, range));
  } catch (const Error& e) {
    fits["logbin_least_squares"] = {{"error", e.what()}};
  }
  return fits;
}

// GEV fit on maxima plus the scaled-variable table; null fit when it fails.
Json gev_section(const OutputDir& out, const std::string& tsv_name, const std::vector<double>& maxima,
                 std::ostream& err) {
  if (maxima.empty()) return Json{{"gev", nullptr}, {"reason", "no block maxima"}};
  try {
    const auto fit = stats::estimate_gev(maxima);
    const auto scaled = stats::scale_maxima(maxima, fit);
    out.write_tsv(tsv_name, [&](std::ostream& os) {
      os.precision(17);
      os << "r_max\tz\tdensity\n";
      for (std::size_t i = 0; i < maxima.size(); ++i)
        os << maxima[i] << '\t' << scaled.z[i] << '\t' << stats::gev_density(maxima[i], fit) << '\n';
    });
    Json j{{"gev", to_json(fit)}, {"support_violations", scaled.violations.size()}};
    if (fit.k > 0.0 && fit.k < 1.0) j["frechet_mean"] = stats::frechet_mean(fit);
    return j;
  } catch (const Error& e) {
    err << "warning: GEV fit failed: " << e.what() << '\n';
    return Json{{"gev", nullptr}, {"reason", e.what()}};
  }
}

grw::GrwParams grw_params(const RunConfig& c, std::size_t n) {
  grw::GrwParams p;
  p.mu = *c.mu;
  p.sigma = *c.sigma;
  p.n_steps = n;
  p.y0 = c.y0;
  return p;
}

int cmd_simulate(const RunConfig& c, int threads, std::ostream& log, std::ostream& err) {
  if (!c.mu) throw UsageError("simulate: --mu is required");
  if (!c.sigma) throw UsageError("simulate: --sigma is required");
  if (c.n < 2) throw UsageError("simulate: --n must be at least 2");
  if (c.m < 1) throw UsageError("simulate: --m must be at least 1");
  const auto params = grw_params(c, c.n);
  params.validate();
  OutputDir out(c, log);

  if (c.m == 1) {
    const auto series = grw::simulate(params, grw::realization_seed(*c.seed, 0));
    const auto rs = records::find_upper_records(series);
    out.write_tsv("grw_series.tsv", [&](std::ostream& os) { write_series_tsv(os, series); });
    out.write_tsv("grw_records.tsv", [&](std::ostream& os) { records::write_record_tsv(os, rs); });
    const auto ages = records::record_ages(rs, age_policy(c));
    Json body{{"record_count", records::record_count(rs)}, {"ages", ages}};
    if (ages.size() >= 3) {
      std::vector<double> xs(ages.begin(), ages.end());
      try {
        body["age_autocorrelation"] =
            to_json(stats::autocorrelation(xs, std::min<std::size_t>(20, xs.size() - 1)));
      } catch (const Error& e) {
        body["age_autocorrelation"] = {{"error", e.what()}};
      }
    }
    out.write_json("grw_single.json", body);
    return kExitOk;
  }

  grw::EnsembleSpec spec;
  spec.params = params;
  spec.n_realizations = c.m;
  spec.master_seed = *c.seed;
  grw::CollectorSet collectors;
  collectors.pooled_ages = collectors.longest_age = collectors.record_count = true;
  collectors.age_censoring = age_policy(c);
  collectors.maxima_censoring = maxima_policy(c);
  const auto summary = grw::run_ensemble(spec, collectors, threads);

  Json body = ensemble_to_json(summary, c.bins_per_decade);
  const bool have_ages = std::any_of(summary.age_counts.begin(), summary.age_counts.end(),
                                     [](auto v) { return v > 0; });
  if (have_ages) {
    body["power_law_fits"] = power_law_fits(summary.age_counts, fit_range(c, c.n), c.bins_per_decade);
    const auto hist = stats::log_binned_histogram_from_counts(summary.age_counts, c.bins_per_decade);
    out.write_tsv("fig3a_ages_hist.tsv", [&](std::ostream& os) { stats::write_histogram_tsv(os, hist); });
  }
  std::vector<double> maxima;
  for (auto r : summary.longest_age)
    if (r > 0) maxima.push_back(static_cast<double>(r));
  body["longest_age_fit"] = gev_section(out, "fig4ab_scaled_maxima.tsv", maxima, err);
  out.write_json("ensemble_summary.json", body);
  return kExitOk;
}

int cmd_analyze(const RunConfig& c, std::ostream& log, std::ostream& err) {
  if (c.data.empty()) throw UsageError("analyze: a data directory is required");
  if (!fs::is_directory(c.data)) throw UsageError("analyze: not a directory: " + c.data);
  if (c.window < 2) throw UsageError("analyze: --window must be at least 2");
  const auto column =
      c.column == "close" ? ingest::PriceColumn::close : ingest::PriceColumn::adjusted_close;

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(c.data))
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    err << "error: no .csv files in " << c.data << '\n';
    return kExitFailure;
  }

  std::vector<TimeSeries> stocks;
  for (const auto& f : files) {
    try {
      stocks.push_back(ingest::read_daily_csv(f, column));
    } catch (const Error& e) {
      err << "warning: skipping " << f.string() << ": " << e.what() << '\n';
    }
  }
  if (stocks.empty()) {
    err << "error: no parseable CSV files in " << c.data << '\n';
    return kExitFailure;
  }

  OutputDir out(c, log);
  std::vector<ingest::ReturnStats> params;
  std::vector<std::uint64_t> pooled;
  std::vector<double> maxima;
  Json per_stock = Json::array();
  Json block_rows = Json::array();
  std::size_t support = 1;

  for (const auto& s : stocks) {
    Json entry{{"label", s.label}, {"length", s.size()}};
    const auto rs = records::find_upper_records(s);
    out.write_tsv(s.label + "_records.tsv", [&](std::ostream& os) { records::write_record_tsv(os, rs); });
    const auto ages = records::record_ages(rs, age_policy(c));
    out.write_tsv(s.label + "_ages.tsv", [&](std::ostream& os) {
      os << "age\n";
      for (auto a : ages) os << a << '\n';
    });
    entry["record_count"] = records::record_count(rs);
    entry["n_ages"] = ages.size();
    if (!ages.empty()) {
      entry["min_age"] = *std::min_element(ages.begin(), ages.end());
      entry["max_age"] = *std::max_element(ages.begin(), ages.end());
    }
    if (s.size() >= 3) {
      const auto p = ingest::estimate_params(s);
      params.push_back(p);
      entry["returns"] = to_json(p);
    }
    if (ages.size() > c.tau_max) {
      std::vector<double> xs(ages.begin(), ages.end());
      try {
        const auto ac = stats::autocorrelation(xs, c.tau_max);
        out.write_tsv(s.label + "_autocorr.tsv", [&](std::ostream& os) { write_autocorr_tsv(os, ac); });
      } catch (const Error& e) {
        err << "warning: " << s.label << ": autocorrelation skipped: " << e.what() << '\n';
      }
    }
    for (auto a : ages) {
      if (pooled.size() <= a) pooled.resize(a + 1, 0);
      ++pooled[a];
    }
    support = std::max(support, s.size() - 1);

    const auto blocks = ingest::window(s, c.window);
    if (!blocks.empty()) {
      const auto bm = records::block_maxima(blocks, maxima_policy(c));
      std::size_t next = 0;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (std::find(bm.skipped_blocks.begin(), bm.skipped_blocks.end(), b) != bm.skipped_blocks.end())
          continue;
        const auto r = bm.maxima[next++];
        maxima.push_back(static_cast<double>(r));
        block_rows.push_back({{"label", s.label}, {"block", b}, {"r_max", r}});
      }
    }
    per_stock.push_back(std::move(entry));
  }

  Json body{{"age_censoring", records::censoring_name(age_policy(c))},
            {"maxima_censoring", records::censoring_name(maxima_policy(c))},
            {"stocks", per_stock}};
  if (!params.empty()) body["portfolio_mean_returns"] = to_json(ingest::portfolio_mean_params(params));

  const bool have_ages = std::any_of(pooled.begin(), pooled.end(), [](auto v) { return v > 0; });
  if (have_ages) {
    const auto hist = stats::log_binned_histogram_from_counts(pooled, c.bins_per_decade);
    out.write_tsv("fig2b_ages_hist.tsv", [&](std::ostream& os) { stats::write_histogram_tsv(os, hist); });
    body["power_law_fits"] = power_law_fits(pooled, fit_range(c, support), c.bins_per_decade);
  } else {
    body["power_law_fits"] = nullptr;
  }

  out.write_tsv("fig5_block_maxima.tsv", [&](std::ostream& os) {
    os << "label\tblock\tr_max\n";
    for (const auto& row : block_rows)
      os << row["label"].get<std::string>() << '\t' << row["block"] << '\t' << row["r_max"] << '\n';
  });
  body["block_maxima"] = {{"window", c.window}, {"count", maxima.size()}};
  body["block_maxima_fit"] = gev_section(out, "fig5_scaled_maxima.tsv", maxima, err);
  out.write_json("analysis.json", body);
  return kExitOk;
}

int cmd_scaling(const RunConfig& c, int threads, std::ostream& log, std::ostream& err) {
  if (!c.mu) throw UsageError("scaling: --mu is required");
  if (!c.sigma) throw UsageError("scaling: --sigma is required");
  if (c.n_list.empty()) throw UsageError("scaling: --n-list is required");
  OutputDir out(c, log);
  stats::ScalingOptions options;
  options.threshold = c.threshold;
  options.maxima_censoring = maxima_policy(c);
  options.threads = threads;
  const auto table = stats::scaling_study(grw_params(c, 2), c.n_list, c.m, *c.seed, options);
  for (const auto& row : table.rows)
    if (!row.fit_ok) err << "warning: N=" << row.n << ": GEV fit flagged: " << row.diagnostic << '\n';
  out.write_tsv("fig4cd_scaling.tsv", [&](std::ostream& os) { write_scaling_tsv(os, table); });
  Json body{{"maxima_censoring", records::censoring_name(maxima_policy(c))}, {"scaling", to_json(table)}};
  out.write_json("scaling.json", body);
  return kExitOk;
}

// Copies values from a JSON config into options not given on the command line.
void apply_config_file(const std::string& path, const std::string& command,
                       const std::map<std::string, CLI::Option*>& options, RunConfig& c) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    throw UsageError("config file " + path + ": " + e.what());
  }
  if (j.contains("config") && j["config"].is_object()) j = j["config"];
  if (j.contains("command") && j["command"] != command)
    throw UsageError("config file " + path + " is for command '" + j["command"].get<std::string>() + "'");

  auto given = [&](const std::string& key) {
    auto it = options.find(key);
    return it != options.end() && it->second && it->second->count() > 0;
  };
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "format_version" || key == "command" || given(key) || value.is_null()) continue;
      if (key == "mu") c.mu = value.get<double>();
      else if (key == "sigma") c.sigma = value.get<double>();
      else if (key == "n") c.n = value.get<std::size_t>();
      else if (key == "m") c.m = value.get<std::size_t>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "y0") c.y0 = value.get<double>();
      else if (key == "window") c.window = value.get<std::size_t>();
      else if (key == "bins_per_decade") c.bins_per_decade = value.get<int>();
      else if (key == "fit_min") c.fit_min = value.get<double>();
      else if (key == "fit_max") c.fit_max = value.get<double>();
      else if (key == "include_censored") c.include_censored = value.get<bool>();
      else if (key == "exclude_censored_maxima") c.exclude_censored_maxima = value.get<bool>();
      else if (key == "column") c.column = value.get<std::string>();
      else if (key == "data") c.data = value.get<std::string>();
      else if (key == "n_list") c.n_list = value.get<std::vector<std::size_t>>();
      else if (key == "threshold") c.threshold = value.get<double>();
      else if (key == "tau_max") c.tau_max = value.get<std::size_t>();
      else if (key == "out") c.out = value.get<std::string>();
      else throw UsageError("config file " + path + ": unknown key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file " + path + ": " + e.what());
  }
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Record statistics of price series and geometric random walks", "recordlab"};
  app.require_subcommand(1);

  RunConfig c;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  double mu = 0.0, sigma = 0.0, fit_max = 0.0;

  std::map<std::string, std::map<std::string, CLI::Option*>> options;
  auto common = [&](CLI::App* sub) {
    auto& o = options[sub->get_name()];
    sub->add_option("--config", config_path, "JSON config file; flags override its values");
    o["out"] = sub->add_option("--out", c.out, "Output directory");
    o["exclude_censored_maxima"] = sub->add_flag("--exclude-censored-maxima", c.exclude_censored_maxima,
                                                 "Leave the open last age out of longest record ages");
  };
  auto fit_flags = [&](CLI::App* sub) {
    auto& o = options[sub->get_name()];
    o["bins_per_decade"] = sub->add_option("--bins-per-decade", c.bins_per_decade, "Histogram bins per decade");
    o["fit_min"] = sub->add_option("--fit-min", c.fit_min, "Lower end of the power-law fit range");
    o["fit_max"] = sub->add_option("--fit-max", fit_max, "Upper end of the fit range (default support/10)");
    o["include_censored"] =
        sub->add_flag("--include-censored", c.include_censored, "Include the open last age in age distributions");
  };
  auto walk_flags = [&](CLI::App* sub) {
    auto& o = options[sub->get_name()];
    o["mu"] = sub->add_option("--mu", mu, "Mean of the log increment");
    o["sigma"] = sub->add_option("--sigma", sigma, "Standard deviation of the log increment");
    o["m"] = sub->add_option("--m", c.m, "Realizations");
    o["seed"] = sub->add_option("--seed", seed, "Master seed (generated and reported when absent)");
    o["y0"] = sub->add_option("--y0", c.y0, "Initial value");
  };

  auto* simulate = app.add_subcommand("simulate", "Simulate geometric random walks and their record statistics");
  common(simulate);
  fit_flags(simulate);
  walk_flags(simulate);
  options["simulate"]["n"] = simulate->add_option("--n", c.n, "Series length N");

  auto* analyze = app.add_subcommand("analyze", "Record statistics of a directory of daily price CSV files");
  common(analyze);
  fit_flags(analyze);
  options["analyze"]["data"] = analyze->add_option("data", c.data, "Directory of CSV files");
  options["analyze"]["window"] = analyze->add_option("--window", c.window, "Block length for longest record ages");
  options["analyze"]["column"] =
      analyze->add_option("--column", c.column, "Price column")->check(CLI::IsMember({"adjusted", "close"}));
  options["analyze"]["tau_max"] = analyze->add_option("--tau-max", c.tau_max, "Largest autocorrelation lag");

  auto* scaling = app.add_subcommand("scaling", "Longest record age GEV parameters against N");
  common(scaling);
  walk_flags(scaling);
  options["scaling"]["n_list"] = scaling->add_option("--n-list", c.n_list, "Series lengths")->delimiter(',');
  options["scaling"]["threshold"] =
      scaling->add_option("--threshold", c.threshold, "Only N above this enter the ln N fits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  c.command = sub->get_name();
  auto& opts = options[c.command];
  if (c.command == "scaling" && opts["m"]->count() == 0) c.m = 1000;

  try {
    if (opts["mu"] && opts["mu"]->count()) c.mu = mu;
    if (opts["sigma"] && opts["sigma"]->count()) c.sigma = sigma;
    if (opts["fit_max"] && opts["fit_max"]->count()) c.fit_max = fit_max;
    c.seed = seed;
    if (!config_path.empty()) apply_config_file(config_path, c.command, opts, c);
    if ((c.command == "simulate" || c.command == "scaling") && !c.seed) c.seed = fresh_seed();

    int threads = grw::threads_from_env();
    if (threads > 0) omp_set_num_threads(threads);

    if (c.command == "simulate") return cmd_simulate(c, threads, out, err);
    if (c.command == "analyze") return cmd_analyze(c, out, err);
    return cmd_scaling(c, threads, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n' << sub->help();
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace recordlab::cli
