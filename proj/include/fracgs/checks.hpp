#pragma once

#include <string>
#include <vector>

#include "fracgs/analysis.hpp"
#include "fracgs/config.hpp"

namespace fracgs {

/// Names accepted by run_named_checks; unknown names raise ConfigError.
std::vector<std::string> available_checks();

/// Runs the requested property checks on the configured model.
std::vector<CheckReport> run_named_checks(const RunConfig& cfg,
                                          const std::vector<std::string>& names);

}  // namespace fracgs
