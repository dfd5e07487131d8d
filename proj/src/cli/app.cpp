#include "jjfrac/cli/app.hpp"

#include "jjfrac/cli/commands.hpp"
#include "jjfrac/cli/config.hpp"
#include "jjfrac/errors.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace jjfrac::cli {

namespace {

struct Flags {
    std::string config;
    std::string manifest;
    std::string out = "out";
    bool timestamp = false;
    bool scalePhase = false;
    std::string units;
    std::string meshes;
    std::vector<std::string> grid;
    ConfigOverrides overrides;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "key = value config file");
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--n", f.overrides.n, "number of elements");
    cmd->add_option("--m", f.overrides.m, "number of time steps");
    cmd->add_option("--alpha", f.overrides.alpha, "fractional order in (0.5, 1]");
    cmd->add_option("--gamma1", f.overrides.gamma1, "order-alpha coefficient");
    cmd->add_option("--gamma2", f.overrides.gamma2, "order-2alpha coefficient");
    cmd->add_option("--lambda", f.overrides.lambda, "normalized bias current");
    cmd->add_option("--T", f.overrides.T, "final time");
    cmd->add_option("--snapshots", f.overrides.snapshots, "evenly spaced snapshot sets");
    cmd->add_option("--workers", f.overrides.workers, "concurrent runs (0 = all cores)");
    cmd->add_option("--units", f.units, "dimensionless or physical")->check(CLI::IsMember({"dimensionless", "physical"}));
    cmd->add_flag("--phase-scale", f.scalePhase, "write the phase divided by 2 pi");
    cmd->add_flag("--timestamp", f.timestamp, "record created_utc in manifests");
}

RunConfig resolve(Flags& f) {
    if (!f.units.empty()) f.overrides.units = f.units == "physical" ? Units::physical : Units::dimensionless;
    if (f.scalePhase) f.overrides.scalePhase = true;
    if (!f.meshes.empty()) f.overrides.meshes = parse_size_list(f.meshes, "--meshes");
    for (const auto& g : f.grid) {
        const auto eq = g.find('=');
        if (eq == std::string::npos) throw ConfigError("--grid", "expected name=v1,v2,...");
        f.overrides.grid.emplace_back(g.substr(0, eq), parse_double_list(g.substr(eq + 1), "--grid"));
    }
    if (!f.manifest.empty()) {
        std::ifstream in(f.manifest, std::ios::binary);
        if (!in) throw ConfigError("--manifest", "cannot read " + f.manifest);
        nlohmann::ordered_json j;
        try {
            j = nlohmann::ordered_json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("--manifest", e.what());
        }
        if (!j.contains("config")) throw ConfigError("--manifest", "no config entry");
        return apply_overrides(config_from_json(j.at("config")), f.overrides);
    }
    if (!f.config.empty()) return parse_config_file(f.config, f.overrides);
    return parse_config_text("", f.overrides);
}

}  // namespace

int run_app(int argc, char** argv) {
    CLI::App app{"Fractional sine-Gordon solver for an inline long Josephson junction", tool_name};
    app.set_version_flag("--version", tool_version);
    app.require_subcommand(1);
    Flags f;
    auto* simulate = app.add_subcommand("simulate", "run one simulation and write snapshots");
    auto* mms = app.add_subcommand("mms", "manufactured-solution convergence study");
    auto* sweep = app.add_subcommand("sweep", "one-at-a-time parameter sweep with trend summary");
    for (auto* cmd : {simulate, mms, sweep}) add_common(cmd, f);
    simulate->add_option("--manifest", f.manifest, "replay the config recorded in a manifest")->excludes("--config");
    mms->add_option("--meshes", f.meshes, "comma-separated element counts");
    sweep->add_option("--grid", f.grid, "name=v1,v2,... (alpha, gamma1, gamma2, lambda); repeatable");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        const RunConfig cfg = resolve(f);
        const CommandOptions opt{f.out, f.timestamp};
        if (simulate->parsed()) return cmd_simulate(cfg, opt);
        if (mms->parsed()) return cmd_mms(cfg, opt);
        return cmd_sweep(cfg, opt);
    } catch (const ConfigError& e) {
        std::cerr << "jjfrac: config error: " << e.what() << '\n';
        return exit_config;
    } catch (const StepFailure& e) {
        std::cerr << "jjfrac: solver failure: " << e.what() << '\n';
        return exit_solver;
    } catch (const std::exception& e) {
        std::cerr << "jjfrac: error: " << e.what() << '\n';
        return exit_solver;
    }
}

}  // namespace jjfrac::cli
