// Apache License, Version 2.0, refer to LICENSE.txt

#include "run.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>

#include "ntrmix/exact_oracle.hpp"
#include "ntrmix/kernels.hpp"
#include "ntrmix/levy_intensity.hpp"
#include "ntrmix/sis_sampler.hpp"

namespace ntrmix::cli {

namespace {

constexpr double kLowEssFraction = 0.01;

std::string format_double(double value) {
  char buffer[32];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

LevyIntensity intensity_of(const RunConfig& config) {
  if (config.model == Model::kBeta)
    return LevyIntensity::homogeneous_beta(config.theta);
  return LevyIntensity::poisson_dirichlet(config.alpha.value_or(0.0),
                                          config.theta);
}

GridSpec resolve_grid(const RunConfig& config, std::span<const double> data) {
  if (!config.grid.automatic) return config.grid;
  GridSpec grid = config.grid;
  grid.automatic = false;
  const auto [lo_it, hi_it] = std::minmax_element(data.begin(), data.end());
  double sd = 1.0;
  if (data.size() >= 2) {
    const double mean =
        std::accumulate(data.begin(), data.end(), 0.0) / data.size();
    double ss = 0.0;
    for (double y : data) ss += (y - mean) * (y - mean);
    sd = std::sqrt(ss / (data.size() - 1));
    if (!(sd > 0.0)) sd = 1.0;
  }
  grid.min = *lo_it - 3.0 * sd;
  grid.max = *hi_it + 3.0 * sd;
  grid.steps = 200;
  return grid;
}

std::vector<double> grid_points(const GridSpec& grid) {
  std::vector<double> points(grid.steps);
  for (int i = 0; i < grid.steps; ++i)
    points[i] =
        grid.min + (grid.max - grid.min) * i / double(grid.steps - 1);
  return points;
}

nlohmann::json config_echo(const RunConfig& config, const GridSpec& grid,
                           std::span<const double> data) {
  nlohmann::json echo;
  echo["data"] = config.data_path;
  echo["data_values"] = std::vector<double>(data.begin(), data.end());
  echo["model"] = config.model == Model::kBeta ? "beta" : "pd";
  echo["theta"] = config.theta;
  if (config.model == Model::kPoissonDirichlet)
    echo["alpha"] = config.alpha.value_or(0.0);
  echo["kernel_var"] = config.kernel_var;
  echo["prior_var"] = config.prior_var;
  echo["replicates"] = config.replicates;
  echo["grid"] = {{"min", grid.min}, {"max", grid.max}, {"steps", grid.steps}};
  echo["seed"] = config.seed;
  switch (config.mode) {
    case Mode::kSis: echo["mode"] = "sis"; break;
    case Mode::kExact: echo["mode"] = "exact"; break;
    case Mode::kPriorSample: echo["mode"] = "prior-sample"; break;
  }
  echo["format"] = config.format == Format::kJson ? "json" : "csv";
  return echo;
}

nlohmann::json block_count_json(std::span<const double> distribution) {
  // Keys "1".."n"; values are probabilities.
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t k = 1; k < distribution.size(); ++k)
    out[std::to_string(k)] = distribution[k];
  return out;
}

nlohmann::json run_sis_mode(const RunConfig& config,
                            std::span<const double> data,
                            const LevyIntensity& rho,
                            const std::vector<double>& grid) {
  const NormalNormalModel kernel(config.kernel_var, config.prior_var);
  SISOptions options;
  options.replicates = config.replicates;
  options.seed = config.seed;
  options.threads = config.threads;
  const std::vector<SISDraw> draws = run_sis(data, rho, kernel, options);

  const DensityEstimate density =
      estimate_density(draws, data, grid, rho, kernel);

  nlohmann::json density_json = nlohmann::json::array();
  for (std::size_t g = 0; g < grid.size(); ++g)
    density_json.push_back({{"y", grid[g]},
                            {"estimate", density.value[g]},
                            {"std_error", density.std_error[g]}});

  // Weighted posterior of the block count.
  const int n = static_cast<int>(data.size());
  std::vector<double> block_dist(n + 1, 0.0);
  {
    double max_lw = draws[0].log_weight;
    for (const SISDraw& d : draws) max_lw = std::max(max_lw, d.log_weight);
    double total = 0.0;
    std::vector<double> w(draws.size());
    for (std::size_t b = 0; b < draws.size(); ++b) {
      w[b] = std::exp(draws[b].log_weight - max_lw);
      total += w[b];
    }
    for (std::size_t b = 0; b < draws.size(); ++b)
      block_dist[draws[b].partition.n_blocks()] += w[b] / total;
  }

  nlohmann::json document;
  document["density"] = std::move(density_json);
  document["block_count_posterior"] = block_count_json(block_dist);
  document["ess"] = density.ess;
  nlohmann::json warnings = nlohmann::json::array();
  if (density.ess < kLowEssFraction * config.replicates)
    warnings.push_back("effective sample size below 1% of replicates");
  document["warnings"] = std::move(warnings);
  return document;
}

nlohmann::json run_exact_mode(const RunConfig& config,
                              std::span<const double> data,
                              const LevyIntensity& rho,
                              const std::vector<double>& grid) {
  const NormalNormalModel kernel(config.kernel_var, config.prior_var);
  const std::vector<double> density =
      exact_predictive_density(data, rho, kernel, grid);
  const PosteriorTable table = exact_posterior(data, rho, kernel);

  nlohmann::json density_json = nlohmann::json::array();
  for (std::size_t g = 0; g < grid.size(); ++g)
    density_json.push_back({{"y", grid[g]}, {"estimate", density[g]}});

  nlohmann::json document;
  document["density"] = std::move(density_json);
  document["block_count_posterior"] =
      block_count_json(table.block_count_distribution());
  document["warnings"] = nlohmann::json::array();
  return document;
}

nlohmann::json run_prior_sample_mode(const RunConfig& config,
                                     std::span<const double> data,
                                     const LevyIntensity& rho) {
  const UnitKernel unit;
  SISOptions options;
  options.replicates = config.replicates;
  options.seed = config.seed;
  options.threads = config.threads;
  const std::vector<SISDraw> draws = run_sis(data, rho, unit, options);

  const int n = static_cast<int>(data.size());
  std::vector<double> frequency(n + 1, 0.0);
  for (const SISDraw& d : draws)
    frequency[d.partition.n_blocks()] += 1.0 / config.replicates;

  nlohmann::json document;
  document["block_count_posterior"] = block_count_json(frequency);
  document["ess"] = static_cast<double>(config.replicates);
  document["warnings"] = nlohmann::json::array();
  return document;
}

}  // namespace

nlohmann::json run(const RunConfig& config, std::span<const double> data) {
  const LevyIntensity rho = intensity_of(config);
  const GridSpec grid = resolve_grid(config, data);
  const std::vector<double> points = grid_points(grid);

  nlohmann::json document;
  switch (config.mode) {
    case Mode::kSis:
      document = run_sis_mode(config, data, rho, points);
      break;
    case Mode::kExact:
      document = run_exact_mode(config, data, rho, points);
      break;
    case Mode::kPriorSample:
      document = run_prior_sample_mode(config, data, rho);
      break;
  }
  document["schema"] = "ntr-mix/1";
  document["config"] = config_echo(config, grid, data);
  document["n_observations"] = data.size();
  document["seed"] = config.seed;

  if (document.contains("density"))
    for (const auto& point : document["density"]) {
      const double f = point["estimate"];
      if (!(f >= 0.0) || !std::isfinite(f))
        throw numeric_error("density estimate is negative or non-finite");
    }
  return document;
}

std::string to_json_text(const nlohmann::json& document) {
  return document.dump(2) + "\n";
}

std::string to_csv_text(const nlohmann::json& document) {
  std::string out;
  if (document.contains("density")) {
    const bool with_se =
        !document["density"].empty() &&
        document["density"][0].contains("std_error");
    out += with_se ? "y,estimate,std_error\n" : "y,estimate\n";
    for (const auto& point : document["density"]) {
      out += format_double(point["y"]) + "," +
             format_double(point["estimate"]);
      if (with_se) out += "," + format_double(point["std_error"]);
      out += "\n";
    }
  } else {
    out += "n_blocks,probability\n";
    for (const auto& [key, value] :
         document["block_count_posterior"].items())
      out += key + "," + format_double(value) + "\n";
  }
  return out;
}

}  // namespace ntrmix::cli
