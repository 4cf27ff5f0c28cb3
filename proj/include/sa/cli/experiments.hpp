#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sa/cli/config.hpp"

namespace sa::cli {

struct ExperimentInfo {
    std::string name;
    std::string description;
};

/// The five application experiments plus the diagnostic suites.
const std::vector<ExperimentInfo>& list_experiments();

enum ExitCode : int { ok = 0, usage_error = 1, config_error = 2, guard_abort = 3, io_error = 4 };

struct RunArtifacts {
    std::filesystem::path trajectory_csv;
    std::filesystem::path summary_json;
    std::filesystem::path plot_svg;
    std::filesystem::path effective_config;
    json summary;
    int exit_code = ok;
};

/// Parses, validates, runs and writes trajectory.csv, summary.json, plot.svg and config.json
/// into the output directory. The summary is written even when the run aborts.
RunArtifacts run_experiment(const std::filesystem::path& config_path);

/// Same from an in-memory config; overrides are used by sweeps.
RunArtifacts run_experiment(const json& config, std::optional<std::uint64_t> seed_override = std::nullopt,
                            std::optional<std::filesystem::path> output_override = std::nullopt);

/// Runs seeds first..last (inclusive) in parallel, each into <output_dir>/seed_<k>, and writes
/// <output_dir>/sweep.csv. Returns the worst exit code.
int run_sweep(const json& config, std::uint64_t first, std::uint64_t last);

/// "a..b" -> (a, b).
std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text);

} // namespace sa::cli
