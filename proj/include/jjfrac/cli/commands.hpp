#pragma once

#include "jjfrac/cli/config.hpp"
#include "jjfrac/solver.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace jjfrac::cli {

inline constexpr const char* tool_name = "jjfrac";
inline constexpr const char* tool_version = "1.0.0";

/// Stable exit-code contract.
enum ExitCode : int { exit_ok = 0, exit_config = 2, exit_solver = 3 };

struct CommandOptions {
    std::filesystem::path out = "out";
    bool timestamp = false;  ///< add created_utc to manifests
};

/// Final-time spatial means of the dimensionless observables.
struct FinalMeans {
    double phase = 0.0;
    double current = 0.0;
    double voltage = 0.0;
};

struct SimulateOutcome {
    bool completed = false;
    std::optional<RunFailure> failure;
    FinalMeans means;
    std::vector<std::filesystem::path> files;  ///< relative to the output directory
};

/// Runs one simulation and writes snapshots plus manifest.json into `dir`.
SimulateOutcome simulate_to_directory(const RunConfig& cfg, const std::filesystem::path& dir, bool timestamp);

int cmd_simulate(const RunConfig& cfg, const CommandOptions& opt);
int cmd_mms(const RunConfig& cfg, const CommandOptions& opt);
int cmd_sweep(const RunConfig& cfg, const CommandOptions& opt);

/// Signs (+1, -1, 0) of consecutive differences.
std::vector<int> difference_signs(const std::vector<double>& values);

/// "increasing", "decreasing", "constant" or "mixed" for a list of signs.
std::string classify_trend(const std::vector<int>& signs);

/// Number formatting shared by every CSV writer: 17 significant digits.
std::string format_number(double x);

/// Writes "z,value" rows.
void write_profile_csv(const std::filesystem::path& path, const std::vector<double>& z, const std::vector<double>& values);

}  // namespace jjfrac::cli
