// Apache License, Version 2.0, refer to LICENSE.txt

#include "ingest.hpp"

#include <charconv>
#include <fstream>

#include "run_config.hpp"

namespace ntrmix::cli {

namespace {

std::string trim(const std::string& line) {
  const auto begin = line.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = line.find_last_not_of(" \t\r");
  return line.substr(begin, end - begin + 1);
}

bool parse_value(const std::string& text, double& value) {
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), value);
  return result.ec == std::errc{} && result.ptr == text.data() + text.size();
}

}  // namespace

std::vector<double> ingest(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw data_error("cannot open data file '" + path + "'");

  std::vector<double> values;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string token = trim(line);
    double value = 0.0;
    if (parse_value(token, value)) {
      values.push_back(value);
    } else if (line_number == 1 && !token.empty()) {
      continue;  // header row
    } else {
      throw data_error(path + ": line " + std::to_string(line_number) +
                       ": expected a numeric value, got '" + token + "'");
    }
  }
  if (values.empty()) throw data_error(path + ": no observations");
  return values;
}

}  // namespace ntrmix::cli
