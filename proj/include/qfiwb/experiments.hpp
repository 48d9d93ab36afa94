#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qfiwb/errors.hpp"

namespace qfiwb {

/// Bad configuration: unknown key or experiment, malformed or out-of-range value.
class ConfigError : public ContractError {
 public:
  using ContractError::ContractError;
};

/// Flat `key = value` configuration. Lines starting with '#' and blank lines are ignored.
struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  int threads = 1;
  std::map<std::string, std::string> values;

  int integer(const std::string& key, int fallback) const;
  double real(const std::string& key, double fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  std::vector<double> reals(const std::string& key, const std::vector<double>& fallback) const;
};

const std::vector<std::string>& registered_experiments();
/// Keys accepted in configuration files, with their type ("int", "uint", "real", "text", "list").
const std::map<std::string, std::string>& config_keys();

/// Parses and type-checks the file contents; `seed` and `threads` keys are applied to the result.
ExperimentConfig parse_config(std::istream& in, const std::string& experiment);
ExperimentConfig load_config(const std::string& path, const std::string& experiment);

struct ExperimentResult {
  bool pass = true;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  nlohmann::json summary;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

/// Runs the experiment and writes <out>/<experiment>.csv and .json. Returns 0 on pass, 1 on an
/// invariant violation.
int run_and_write(const ExperimentConfig& config, std::ostream& log);

}  // namespace qfiwb
