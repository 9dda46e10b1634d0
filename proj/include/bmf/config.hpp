#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bmf/experiments.hpp"

namespace bmf {

/// Parse/validation failure with "<source>:<line>: message" formatting.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses the experiment config format: one `[section]` per experiment,
/// `key = value` lines, `#` comments. Unknown keys and hypothesis
/// violations are errors carrying the offending line. Returns fully
/// validated configs with theorem-specific defaults applied.
///
/// Keys: theorem, dist, atoms, degrees, trials, seed, p, radius, quad_tol,
/// sup_eps, tol.<check>, moments.<flag>.
std::vector<ExperimentConfig> parse_config_file(const std::string& path);

/// Same parser over an in-memory string; `source` names it in diagnostics.
std::vector<ExperimentConfig> parse_config_text(const std::string& text,
                                                const std::string& source = "<string>");

/// Renders resolved configs back into the config format; parsing the output
/// yields equal configs.
std::string emit_config(const std::vector<ExperimentConfig>& configs);

}  // namespace bmf
