// Command-line run configuration: a flat key = value file overridden by flags.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hk/suites.hpp"

namespace hk::cli {

/// Usage problems: unknown ids, unreadable files, malformed flags. Exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::string command;
  std::string target;  // suite id, handle family or model
  Params params;
  SampleSpec spec;
  std::optional<double> tolerance;
  std::string out, csv;
};

/// Keys seed, density, tolerance, out and csv configure the run; every other
/// key becomes a command parameter. Blank lines and '#' comments are skipped.
void read_config_file(const std::string& path, RunConfig& cfg);

/// "key=value" from -p.
void apply_assignment(const std::string& text, RunConfig& cfg);

}  // namespace hk::cli
