#pragma once

// INI-style experiment configuration:
//
//   [grid]     L, T, K, N
//   [problem]  kind (semilinear|general), nonlinearity, flux, bc (dynamic|neumann),
//              preset | initial_csv
//   [solver]   tol, max_iter, check_radius, damping
//   [output]   outdir, snapshot_stride
//
// Unknown sections or keys are errors. When no outdir is given the
// DYNWAVE_OUTDIR environment variable is used, then the working directory.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynwave/harness.hpp"

namespace dynwave {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A `section.key=value` override from the command line.
struct ConfigOverride {
    std::string section;
    std::string key;
    std::string value;
};

ConfigOverride parse_override(const std::string& text);

ExperimentConfig parse_config(const std::string& text,
                              const std::vector<ConfigOverride>& overrides = {});

ExperimentConfig load_config(const std::filesystem::path& path,
                             const std::vector<ConfigOverride>& overrides = {});

}  // namespace dynwave
