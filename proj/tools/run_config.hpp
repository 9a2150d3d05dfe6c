// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace ntrmix::cli {

class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class data_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Model { kBeta, kPoissonDirichlet };
enum class Mode { kSis, kExact, kPriorSample };
enum class Format { kJson, kCsv };

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  int steps = 200;
  bool automatic = true;  // derive min/max from the data
};

struct RunConfig {
  std::string data_path;
  Model model = Model::kBeta;
  double theta = 1.0;
  std::optional<double> alpha;  // Poisson-Dirichlet only
  double kernel_var = 1.0;
  double prior_var = 1.0;
  int replicates = 10000;
  GridSpec grid;
  std::uint64_t seed = 0;
  Mode mode = Mode::kSis;
  std::string output_path;  // empty writes to stdout
  Format format = Format::kJson;
  int threads = 1;
};

Model parse_model(const std::string& name);
Mode parse_mode(const std::string& name);
Format parse_format(const std::string& name);

/// Parses "min:max:steps".
GridSpec parse_grid(const std::string& text);

/// Throws config_error on any parameter outside its documented range or an
/// inconsistent combination (e.g. alpha with the beta model).
void validate(const RunConfig& config);

}  // namespace ntrmix::cli
