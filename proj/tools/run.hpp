// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "run_config.hpp"

namespace ntrmix::cli {

/// Executes the configured estimator and assembles the output document.
/// The document depends only on (config, data, seed) -- never on wall time
/// or thread count -- so identical runs serialize to identical bytes.
nlohmann::json run(const RunConfig& config, std::span<const double> data);

std::string to_json_text(const nlohmann::json& document);
std::string to_csv_text(const nlohmann::json& document);

}  // namespace ntrmix::cli
