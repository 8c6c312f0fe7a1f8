#include "run_config.hpp"

#include <fstream>

namespace hk::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void assign(const std::string& key, const std::string& value, RunConfig& cfg) {
  if (key == "seed") {
    const long s = parse_integer(value);
    if (s < 0) throw UsageError("seed must be non-negative");
    cfg.spec.seed = static_cast<std::uint64_t>(s);
  } else if (key == "density") {
    cfg.spec.density = parse_real(value);
    if (!(cfg.spec.density > 0)) throw UsageError("density must be positive");
  } else if (key == "tolerance") {
    cfg.tolerance = parse_real(value);
    if (!(*cfg.tolerance > 0)) throw UsageError("tolerance must be positive");
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "csv") {
    cfg.csv = value;
  } else {
    cfg.params.set(key, value);
  }
}

}  // namespace

void read_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(n) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty()) throw UsageError(path + ":" + std::to_string(n) + ": empty key");
    assign(key, value, cfg);
  }
}

void apply_assignment(const std::string& text, RunConfig& cfg) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError("-p expects key=value, got " + text);
  assign(trim(text.substr(0, eq)), trim(text.substr(eq + 1)), cfg);
}

}  // namespace hk::cli
