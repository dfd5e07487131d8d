#include "jjfrac/cli/commands.hpp"

#include "jjfrac/constants.hpp"
#include "jjfrac/errors.hpp"
#include "jjfrac/mms.hpp"
#include "jjfrac/observables.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <numeric>
#include <thread>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <json.hpp>

namespace jjfrac::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    out << text;
}

json tool_json() { return {{"name", tool_name}, {"version", tool_version}}; }

void stamp(json& manifest, bool timestamp) {
    if (!timestamp) return;
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    manifest["created_utc"] = fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(now));
}

json failure_json(const RunFailure& f) {
    return {{"step", f.step}, {"iterations", f.iterations}, {"residual", f.residual}, {"message", f.message}};
}

std::size_t worker_count(std::size_t requested, std::size_t jobs) {
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    return std::max<std::size_t>(1, std::min(requested == 0 ? hw : requested, jobs));
}

// Runs job(i) for i < count on a bounded pool; exceptions are rethrown in index order.
template <class Job>
void parallel_for(std::size_t count, std::size_t workers, Job job) {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < worker_count(workers, count); ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        job(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace

std::string format_number(double x) { return fmt::format("{:.17g}", x); }

void write_profile_csv(const fs::path& path, const std::vector<double>& z, const std::vector<double>& values) {
    if (z.size() != values.size()) throw PreconditionError("write_profile_csv: column lengths differ");
    std::string text = "z,value\n";
    for (std::size_t i = 0; i < z.size(); ++i) text += format_number(z[i]) + ',' + format_number(values[i]) + '\n';
    write_text(path, text);
}

std::vector<int> difference_signs(const std::vector<double>& values) {
    std::vector<int> signs;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double d = values[i] - values[i - 1];
        signs.push_back(d > 0.0 ? 1 : (d < 0.0 ? -1 : 0));
    }
    return signs;
}

std::string classify_trend(const std::vector<int>& signs) {
    if (signs.empty()) return "constant";
    const auto all = [&](int s) { return std::all_of(signs.begin(), signs.end(), [s](int x) { return x == s; }); };
    if (all(1)) return "increasing";
    if (all(-1)) return "decreasing";
    if (all(0)) return "constant";
    return "mixed";
}

SimulateOutcome simulate_to_directory(const RunConfig& cfg, const fs::path& dir, bool timestamp) {
    fs::create_directories(dir);
    SolverConfig sc = cfg.solver;
    sc.snapshotStride = 0;
    sc.snapshotLevels = evenly_spaced_levels(sc.m, cfg.snapshots);
    SolverState state = initialize(sc);
    const RunResult res = run(state);
    const auto& traj = res.trajectory;
    const Mesh1D& mesh = state.mesh;

    // conversion to SI when requested
    double zScale = 1.0;
    double tScale = 1.0;
    double currentScale = 1.0;
    PhysicalScales scales;
    if (cfg.units == Units::physical) {
        const JunctionConstants k = derive_constants(*cfg.physical);
        zScale = k.lambdaJ;
        tScale = k.lambdaJ / k.cbar;
        currentScale = cfg.physical->Jc;
        scales = physical_scales(*cfg.physical);
    }
    const double phaseScale = cfg.scalePhase ? 1.0 / constants::two_pi : 1.0;

    std::vector<double> zNodes(mesh.coordinates().begin(), mesh.coordinates().end());
    std::vector<double> zField;
    if (cfg.nodalField) {
        zField = zNodes;
    } else {
        for (std::size_t e = 0; e < mesh.elements(); ++e) zField.push_back(mesh.element_midpoint(e));
    }
    for (double& z : zNodes) z *= zScale;
    for (double& z : zField) z *= zScale;

    SimulateOutcome outcome;
    outcome.completed = res.completed();
    outcome.failure = res.failure;
    json snaps = json::array();
    for (std::size_t j = 0; j < traj.snapshots.size(); ++j) {
        const Snapshot& s = traj.snapshots[j];
        std::vector<double> phase = s.phase;
        for (double& v : phase) v *= phaseScale;
        std::vector<double> current = josephson_current(s.phase);
        for (double& v : current) v *= currentScale;
        std::vector<double> volt = s.voltage;
        for (double& v : volt) v *= scales.voltage;
        std::vector<double> field = magnetic_field(s.phase, mesh);
        if (cfg.nodalField) field = nodal_average(field);
        for (double& v : field) v *= scales.field;

        json files = json::object();
        const auto emit = [&](const char* name, const std::vector<double>& z, const std::vector<double>& v) {
            const fs::path file = fmt::format("{}_{:03}.csv", name, j);
            write_profile_csv(dir / file, z, v);
            outcome.files.push_back(file);
            files[name] = file.string();
        };
        emit("phase", zNodes, phase);
        emit("current", zNodes, current);
        emit("voltage", zNodes, volt);
        emit("field", zField, field);
        snaps.push_back({{"index", j}, {"level", s.level}, {"t", s.t * tScale}, {"files", files}});
    }

    const Snapshot& last = traj.snapshots.back();
    outcome.means.phase = spatial_mean(last.phase, mesh);
    outcome.means.current = spatial_mean(josephson_current(last.phase), mesh);
    outcome.means.voltage = spatial_mean(last.voltage, mesh);

    json diag;
    const auto& its = traj.newtonIterations;
    diag["steps"] = its.size();
    diag["newton_iterations_total"] = std::accumulate(its.begin(), its.end(), 0LL);
    diag["newton_iterations_max"] = its.empty() ? 0 : *std::max_element(its.begin(), its.end());
    diag["residual_max"] = traj.residuals.empty() ? 0.0 : *std::max_element(traj.residuals.begin(), traj.residuals.end());

    json manifest;
    manifest["tool"] = tool_json();
    manifest["command"] = "simulate";
    manifest["config"] = to_json(cfg);
    manifest["status"] = outcome.completed ? "completed" : "failed";
    manifest["failure"] = outcome.failure ? failure_json(*outcome.failure) : json(nullptr);
    manifest["partial"] = !outcome.completed;
    manifest["diagnostics"] = diag;
    manifest["conventions"] = {
        {"units", to_string(cfg.units)},
        {"voltage", "L1 discretization of the order-alpha Caputo derivative of the phase, in the model's time variable"},
        {"field", cfg.nodalField ? "phase slope averaged onto nodes" : "phase slope per element at element midpoints"},
        {"phase", cfg.scalePhase ? "phase divided by 2 pi" : "phase in radians"},
    };
    manifest["final_means"] = {{"phase", outcome.means.phase},
                               {"current", outcome.means.current},
                               {"voltage", outcome.means.voltage}};
    manifest["snapshots"] = snaps;
    stamp(manifest, timestamp);
    write_text(dir / "manifest.json", manifest.dump(2) + "\n");
    outcome.files.emplace_back("manifest.json");
    return outcome;
}

int cmd_simulate(const RunConfig& cfg, const CommandOptions& opt) {
    const SimulateOutcome o = simulate_to_directory(cfg, opt.out, opt.timestamp);
    if (!o.completed) {
        std::cerr << "jjfrac: solver failure: " << o.failure->message << " (partial outputs in " << opt.out.string()
                  << ")\n";
        return exit_solver;
    }
    return exit_ok;
}

int cmd_mms(const RunConfig& cfg, const CommandOptions& opt) {
    fs::create_directories(opt.out);
    const ConvergenceTable table = convergence_study(cfg.solver, cfg.meshes, default_coupling(), cfg.workers);
    {
        std::ofstream csv(opt.out / "convergence.csv", std::ios::binary | std::ios::trunc);
        write_convergence_csv(csv, table);
    }
    write_text(opt.out / "slopes.json", convergence_summary_json(table));
    json overlays = json::array();
    for (const auto& row : table.rows) {
        const std::string name = fmt::format("overlay_n{}.csv", row.n);
        std::ofstream os(opt.out / name, std::ios::binary | std::ios::trunc);
        write_overlay_csv(os, row);
        overlays.push_back(name);
    }
    json manifest;
    manifest["tool"] = tool_json();
    manifest["command"] = "mms";
    manifest["config"] = to_json(cfg);
    manifest["coupling"] = "m = ceil(16 n T), i.e. tau = h T / 320";
    manifest["status"] = table.failure ? "failed" : "completed";
    manifest["overlays"] = overlays;
    stamp(manifest, opt.timestamp);
    write_text(opt.out / "manifest.json", manifest.dump(2) + "\n");

    if (!table.l2Fit) std::cerr << "jjfrac: fewer than two meshes, slope fitting skipped\n";
    if (table.failure) {
        std::cerr << "jjfrac: solver failure on n = " << table.failedN << ": " << table.failure->message << '\n';
        return exit_solver;
    }
    return exit_ok;
}

int cmd_sweep(const RunConfig& cfg, const CommandOptions& opt) {
    fs::create_directories(opt.out);
    struct Job {
        std::string parameter;
        std::size_t index = 0;
        double value = 0.0;
        std::string directory;
    };
    std::vector<Job> jobs;
    for (const auto& [name, values] : cfg.sweep.axes) {
        for (std::size_t i = 0; i < values.size(); ++i) jobs.push_back({name, i, values[i], fmt::format("{}_{:02}", name, i)});
    }

    struct Result {
        bool completed = false;
        std::optional<RunFailure> failure;
        std::string error;
        FinalMeans means;
    };
    std::vector<Result> results(jobs.size());
    parallel_for(jobs.size(), cfg.workers, [&](std::size_t i) {
        const Job& job = jobs[i];
        RunConfig run = cfg;
        run.sweep = {};
        auto& p = run.solver.params;
        if (job.parameter == "alpha") p.alpha = job.value;
        if (job.parameter == "gamma1") p.gamma1 = job.value;
        if (job.parameter == "gamma2") p.gamma2 = job.value;
        if (job.parameter == "lambda") p.lambda = job.value;
        try {
            const SimulateOutcome o = simulate_to_directory(run, opt.out / job.directory, opt.timestamp);
            results[i] = {o.completed, o.failure, {}, o.means};
        } catch (const std::exception& e) {
            results[i].error = e.what();
        }
    });

    json index;
    index["tool"] = tool_json();
    index["command"] = "sweep";
    index["config"] = to_json(cfg);
    json runs = json::array();
    bool anyFailed = false;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& r = results[i];
        json entry = {{"parameter", jobs[i].parameter},
                      {"index", jobs[i].index},
                      {"value", jobs[i].value},
                      {"directory", jobs[i].directory},
                      {"status", r.completed ? "completed" : "failed"}};
        if (r.completed) {
            entry["final_means"] = {{"phase", r.means.phase}, {"current", r.means.current}, {"voltage", r.means.voltage}};
        } else {
            anyFailed = true;
            entry["error"] = r.failure ? r.failure->message : r.error;
        }
        runs.push_back(entry);
    }
    index["runs"] = runs;
    stamp(index, opt.timestamp);
    write_text(opt.out / "index.json", index.dump(2) + "\n");

    json trend = json::object();
    for (const auto& [name, values] : cfg.sweep.axes) {
        if (values.empty()) continue;
        std::vector<double> phase;
        std::vector<double> current;
        std::vector<double> voltage;
        bool complete = true;
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            if (jobs[i].parameter != name) continue;
            complete = complete && results[i].completed;
            phase.push_back(results[i].means.phase);
            current.push_back(results[i].means.current);
            voltage.push_back(results[i].means.voltage);
        }
        json axis;
        axis["values"] = values;
        axis["complete"] = complete;
        const auto observable = [](const std::vector<double>& means) {
            const auto signs = difference_signs(means);
            return json{{"means", means}, {"signs", signs}, {"direction", classify_trend(signs)}};
        };
        axis["phase"] = observable(phase);
        axis["current"] = observable(current);
        axis["voltage"] = observable(voltage);
        trend[name] = axis;
    }
    write_text(opt.out / "trend.json", trend.dump(2) + "\n");
    return anyFailed ? exit_solver : exit_ok;
}

}  // namespace jjfrac::cli
