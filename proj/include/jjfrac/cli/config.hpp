#pragma once

#include "jjfrac/params.hpp"
#include "jjfrac/solver.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace jjfrac::cli {

enum class Units { dimensionless, physical };

std::string_view to_string(Units u) noexcept;

/// One-at-a-time sweep axes, in the order alpha, gamma1, gamma2, lambda.
struct SweepGrid {
    std::vector<std::pair<std::string, std::vector<double>>> axes;

    bool empty() const noexcept;
};

inline const std::vector<std::string>& sweep_parameters() {
    static const std::vector<std::string> names{"alpha", "gamma1", "gamma2", "lambda"};
    return names;
}

/// Fully resolved run description; everything a manifest records.
struct RunConfig {
    SolverConfig solver;
    std::size_t snapshots = 1;  ///< evenly spaced snapshot sets, final level included
    Units units = Units::dimensionless;
    bool scalePhase = false;  ///< write φ / 2π instead of φ
    bool nodalField = false;  ///< average the per-element field onto nodes
    std::optional<PhysicalJunctionParams> physical;
    GammaConvention convention = GammaConvention::printed;
    std::vector<std::size_t> meshes{40, 80, 160, 320};
    SweepGrid sweep;
    std::size_t workers = 0;  ///< 0 = hardware concurrency
};

/// Raised for malformed files, unknown keys and invariant violations; `key` names the
/// offending entry as section.key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message);
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Command-line values that take precedence over the config file.
struct ConfigOverrides {
    std::optional<std::size_t> n;
    std::optional<std::size_t> m;
    std::optional<double> alpha;
    std::optional<double> gamma1;
    std::optional<double> gamma2;
    std::optional<double> lambda;
    std::optional<double> T;
    std::optional<std::size_t> snapshots;
    std::optional<std::size_t> workers;
    std::optional<Units> units;
    std::optional<bool> scalePhase;
    std::optional<std::vector<std::size_t>> meshes;
    std::vector<std::pair<std::string, std::vector<double>>> grid;  ///< replaces the file's axis of the same name
};

/// Parses key = value text with [sections]. An empty text gives the defaults.
RunConfig parse_config_text(std::string_view text, const ConfigOverrides& overrides = {});
RunConfig parse_config_file(const std::filesystem::path& path, const ConfigOverrides& overrides = {});

/// Applies overrides to an already resolved config and re-validates.
RunConfig apply_overrides(RunConfig cfg, const ConfigOverrides& overrides);

/// Throws ConfigError for the first violated invariant.
void check(const RunConfig& cfg);

nlohmann::ordered_json to_json(const RunConfig& cfg);
/// Inverse of to_json; used for manifest replay.
RunConfig config_from_json(const nlohmann::ordered_json& j);

/// "a,b,c" helpers shared with the flag parser.
std::vector<double> parse_double_list(std::string_view text, const std::string& key);
std::vector<std::size_t> parse_size_list(std::string_view text, const std::string& key);

}  // namespace jjfrac::cli
