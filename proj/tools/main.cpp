// Apache License, Version 2.0, refer to LICENSE.txt

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ingest.hpp"
#include "ntrmix/numeric.hpp"
#include "run.hpp"
#include "run_config.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitDataError = 3;
constexpr int kExitNumericError = 4;

int threads_from_env() {
  const char* raw = std::getenv("NTR_MIX_THREADS");
  if (raw == nullptr) return 1;
  const int value = std::atoi(raw);
  return value >= 1 ? value : 1;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ntrmix::cli;

  CLI::App app{
      "ntrmix: density estimation with neutral-to-the-right species "
      "sampling mixtures.\n"
      "Fits a Normal mixture with a homogeneous-beta or Poisson-Dirichlet "
      "partition prior,\nestimated by ranked-seating sequential importance "
      "sampling or exact enumeration."};
  app.footer(
      "Environment:\n"
      "  NTR_MIX_THREADS  cap on worker threads for the replicate loop "
      "(default 1).\n"
      "Exit codes: 0 success, 2 configuration error, 3 data error, "
      "4 numeric failure.");

  std::string data_path;
  std::string model = "beta";
  double theta = 1.0;
  double alpha = -1.0;
  bool alpha_set = false;
  double kernel_var = 1.0;
  double prior_var = 1.0;
  int replicates = 10000;
  std::string grid_text;
  std::uint64_t seed = 0;
  std::string mode = "sis";
  std::string output_path;
  std::string format = "json";

  app.add_option("--data", data_path, "Input file, one observation per line")
      ->required();
  app.add_option("--model", model, "Partition prior: beta or pd")
      ->capture_default_str();
  app.add_option("--theta", theta, "Intensity mass parameter (positive)")
      ->capture_default_str();
  auto* alpha_opt = app.add_option(
      "--alpha", alpha, "Poisson-Dirichlet discount in [0,1); pd model only");
  app.add_option("--kernel-var", kernel_var,
                 "Normal kernel variance (positive)")
      ->capture_default_str();
  app.add_option("--prior-var", prior_var,
                 "Variance of the Normal base measure (positive)")
      ->capture_default_str();
  app.add_option("--replicates", replicates,
                 "Importance-sampling replicate count")
      ->capture_default_str();
  app.add_option("--grid", grid_text,
                 "Density grid as min:max:steps (default: data range +- 3 "
                 "sample sd, 200 steps)");
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--mode", mode, "sis, exact, or prior-sample")
      ->capture_default_str();
  app.add_option("--output", output_path,
                 "Output path (default: standard output)");
  app.add_option("--format", format, "json or csv")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }
  alpha_set = alpha_opt->count() > 0;

  RunConfig config;
  config.data_path = data_path;
  config.theta = theta;
  if (alpha_set) config.alpha = alpha;
  config.kernel_var = kernel_var;
  config.prior_var = prior_var;
  config.replicates = replicates;
  config.seed = seed;
  config.output_path = output_path;
  config.threads = threads_from_env();
  try {
    config.model = parse_model(model);
    config.mode = parse_mode(mode);
    config.format = parse_format(format);
    if (!grid_text.empty()) config.grid = parse_grid(grid_text);
    validate(config);
  } catch (const config_error& e) {
    std::cerr << "ntrmix: " << e.what() << "\n";
    return kExitConfigError;
  }

  std::vector<double> data;
  try {
    data = ingest(config.data_path);
  } catch (const data_error& e) {
    std::cerr << "ntrmix: " << e.what() << "\n";
    return kExitDataError;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    const nlohmann::json document = run(config, data);
    const std::string text = config.format == Format::kJson
                                 ? to_json_text(document)
                                 : to_csv_text(document);
    if (config.output_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(config.output_path, std::ios::binary);
      if (!out.good()) {
        std::cerr << "ntrmix: cannot write '" << config.output_path << "'\n";
        return kExitDataError;
      }
      out << text;
    }
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    // Timing goes to stderr: the output document must be byte-identical
    // across reruns of the same config and seed.
    std::cerr << "ntrmix: wall time " << elapsed.count() << " s\n";
  } catch (const ntrmix::numeric_error& e) {
    std::cerr << "ntrmix: numeric failure: " << e.what() << "\n";
    return kExitNumericError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ntrmix: " << e.what() << "\n";
    return kExitConfigError;
  }
  return 0;
}
