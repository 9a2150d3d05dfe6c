// Apache License, Version 2.0, refer to LICENSE.txt

#include "run_config.hpp"

#include <charconv>
#include <cmath>

namespace ntrmix::cli {

namespace {

double parse_double_or_throw(const std::string& text, const char* what) {
  double value = 0.0;
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc{} || result.ptr != text.data() + text.size())
    throw config_error(std::string(what) + ": cannot parse '" + text + "'");
  return value;
}

}  // namespace

Model parse_model(const std::string& name) {
  if (name == "beta") return Model::kBeta;
  if (name == "pd") return Model::kPoissonDirichlet;
  throw config_error("unknown model '" + name + "' (expected beta or pd)");
}

Mode parse_mode(const std::string& name) {
  if (name == "sis") return Mode::kSis;
  if (name == "exact") return Mode::kExact;
  if (name == "prior-sample") return Mode::kPriorSample;
  throw config_error("unknown mode '" + name +
                     "' (expected sis, exact, or prior-sample)");
}

Format parse_format(const std::string& name) {
  if (name == "json") return Format::kJson;
  if (name == "csv") return Format::kCsv;
  throw config_error("unknown format '" + name + "' (expected json or csv)");
}

GridSpec parse_grid(const std::string& text) {
  const auto first = text.find(':');
  const auto second = text.find(':', first == std::string::npos ? 0 : first + 1);
  if (first == std::string::npos || second == std::string::npos)
    throw config_error("grid must be min:max:steps, got '" + text + "'");
  GridSpec grid;
  grid.automatic = false;
  grid.min = parse_double_or_throw(text.substr(0, first), "grid min");
  grid.max =
      parse_double_or_throw(text.substr(first + 1, second - first - 1),
                            "grid max");
  grid.steps = static_cast<int>(
      parse_double_or_throw(text.substr(second + 1), "grid steps"));
  return grid;
}

void validate(const RunConfig& config) {
  if (config.data_path.empty()) throw config_error("--data is required");
  if (!(config.theta > 0.0) || !std::isfinite(config.theta))
    throw config_error("--theta must be positive");
  if (config.alpha.has_value()) {
    if (config.model == Model::kBeta)
      throw config_error("--alpha only applies to the pd model");
    if (!(*config.alpha >= 0.0 && *config.alpha < 1.0))
      throw config_error("--alpha must lie in [0,1)");
  }
  if (!(config.kernel_var > 0.0))
    throw config_error("--kernel-var must be positive");
  if (!(config.prior_var > 0.0))
    throw config_error("--prior-var must be positive");
  if (config.replicates < 1)
    throw config_error("--replicates must be at least 1");
  if (!config.grid.automatic) {
    if (!(config.grid.min < config.grid.max))
      throw config_error("grid min must be below grid max");
    if (config.grid.steps < 2)
      throw config_error("grid needs at least 2 steps");
  }
  if (config.threads < 1) throw config_error("thread count must be positive");
}

}  // namespace ntrmix::cli
