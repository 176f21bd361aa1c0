#pragma once

#include <string>
#include <vector>

#include "fracgs/model.hpp"
#include "fracgs/solver.hpp"

namespace fracgs {

/// Problems with the config file itself (parse errors, unknown keys, bad
/// types). Maps to the usage/config exit code; validation failures do not.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    double L = 16.0;
    int N = 1024;

    PotentialFlavor flavor = PotentialFlavor::periodic;
    PeriodicFamilyParams family;
    BumpParams bump;

    NonlinearityPair nl;
    SolverConfig solver;
    std::vector<std::string> checks;
    double omega = M_PI / 4.0;
    std::string output_dir = "out";

    /// Fully resolved config (defaults filled in), serialized as JSON.
    std::string echo_json() const;
};

/// Parses a JSON config; unknown keys and malformed values raise ConfigError.
RunConfig load_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

GridPtr build_grid(const RunConfig& cfg);

/// Builds the configured potential set without validating it.
PotentialSet build_potentials(const RunConfig& cfg, const GridPtr& grid);

}  // namespace fracgs
