// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <string>
#include <vector>

namespace ntrmix::cli {

/// Reads one observation per line (single-column CSV). A non-numeric first
/// line is treated as a header; any later non-numeric line is a data_error
/// naming the offending line. Order is preserved.
std::vector<double> ingest(const std::string& path);

}  // namespace ntrmix::cli
