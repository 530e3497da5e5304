#pragma once

#include "pib/config.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace pib::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_config_error = 1,
    exit_numerical_failure = 2,
};

struct RunOverrides {
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
};

struct RunOutput {
    /// Primary output (curve CSV, limit report, trace, gap report, verify report).
    std::string primary;
    /// Secondary output, currently only the final parameters of a gibbs run.
    std::string secondary;
    /// Set when the run completed but hit a numerical failure (exit code 2).
    std::optional<std::string> failure;
};

/// Executes a parsed config and renders its CSV outputs in memory.
RunOutput execute(const RunConfig& config, const RunOverrides& overrides);

/// Reads the config file, runs it, and writes outputs to the configured path
/// (or `data` when there is none). Diagnostics go to `log`.
int run(const std::filesystem::path& config_path, const RunOverrides& overrides,
        std::ostream& data, std::ostream& log);

/// `pib verify`: runs the invariant suite on the built-in worlds.
int verify(const RunOverrides& overrides, std::ostream& data, std::ostream& log);

} // namespace pib::cli
