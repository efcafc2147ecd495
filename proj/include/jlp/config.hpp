#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "jlp/sim.hpp"

namespace jlp {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// `key = value` lines; '#' starts a comment. Later keys override earlier ones.
using KeyValues = std::map<std::string, std::string>;
KeyValues parse_key_values(const std::string& text);

struct RunConfig {
  ExperimentConfig experiment;
  HarvestOptions harvest;
  std::string output;
  std::string spectrum;
  bool trace = false;
};

/// Validates every key and reports all problems at once.
RunConfig build_run_config(const KeyValues& kv);

/// Resolved configuration as key/value pairs (for manifests).
KeyValues describe(const RunConfig& config);

std::vector<double> parse_number_list(const std::string& text);

}  // namespace jlp
