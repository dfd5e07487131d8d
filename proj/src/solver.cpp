#include "jjfrac/solver.hpp"

#include "jjfrac/errors.hpp"
#include "jjfrac/observables.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace jjfrac {

namespace {

double max_abs(std::span<const double> v) {
    double r = 0.0;
    for (double x : v) r = std::max(r, std::abs(x));
    return r;
}

std::string join_issues(const std::vector<std::string>& issues) {
    std::string out;
    for (const auto& s : issues) {
        if (!out.empty()) out += "; ";
        out += s;
    }
    return out;
}

// u-independent parts of the level-(k+2) system
struct StepData {
    std::vector<double> memAlpha;  // ζ_k^α
    std::vector<double> mem2Alpha;  // ζ_k^{2α}
    std::vector<double> rhs;
};

double time_scale(const SolverState& s) {
    return s.config.params.gamma1 * s.coeffs.Calpha + s.config.params.gamma2 * s.coeffs.C2alpha;
}

// Residual in terms of the increment δ = u − φ^{k+1}. C_{2α} grows like τ^{-2α}, so
// one ulp of a level already moves C_{2α}𝕄u by more than the tolerance; the inertia
// terms are therefore built from δ and the stored increments, never from levels.
std::vector<double> residual_delta(const SolverState& s, std::span<const double> delta, const StepData& d) {
    const auto& p = s.config.params;
    const std::size_t N = s.mesh.nodes();
    const auto prev = s.history.level(s.k + 1);
    const auto lastStep = s.history.first_difference(s.k);
    const double a1 = p.gamma1 * s.coeffs.Calpha;
    const double a2 = p.gamma2 * s.coeffs.C2alpha;
    std::vector<double> u(N);
    std::vector<double> inertia(N);
    for (std::size_t i = 0; i < N; ++i) {
        u[i] = prev[i] + delta[i];
        inertia[i] = a1 * (delta[i] + d.memAlpha[i]) + a2 * ((delta[i] - lastStep[i]) + d.mem2Alpha[i]);
    }
    std::vector<double> r = s.stiffness.apply(u);
    const std::vector<double> Mi = s.mass.apply(inertia);
    std::vector<double> G(N);
    assemble_sine_load(s.mesh, u, G);
    for (std::size_t i = 0; i < N; ++i) r[i] += Mi[i] + G[i] - d.rhs[i];
    return r;
}

std::vector<double> step_rhs(const SolverState& s) {
    const auto& p = s.config.params;
    return rhs_vector(s.mesh, p.lambda, p.Abc, p.Bbc, s.config.forcing, s.grid.t(s.k + 2), s.forcingRule);
}

StepData step_data(const SolverState& s) {
    StepData d;
    d.memAlpha.resize(s.mesh.nodes());
    d.mem2Alpha.resize(s.mesh.nodes());
    memory_term_alpha(s.history, s.k, s.coeffs, d.memAlpha);
    memory_term_2alpha(s.history, s.k, s.coeffs, d.mem2Alpha);
    d.rhs = step_rhs(s);
    return d;
}

Snapshot make_snapshot(const SolverState& s, std::size_t level) {
    Snapshot snap;
    snap.level = level;
    snap.t = s.grid.t(level);
    const auto phase = s.history.level(level);
    snap.phase.assign(phase.begin(), phase.end());
    if (level == 0) {
        snap.voltage.assign(phase.size(), 0.0);
    } else {
        snap.voltage = voltage(s.history, s.coeffs, level - 1);
    }
    return snap;
}

}  // namespace

std::vector<std::size_t> evenly_spaced_levels(std::size_t m, std::size_t count) {
    if (count <= 1) return {m};
    std::vector<std::size_t> levels;
    for (std::size_t j = 0; j < count; ++j) {
        const std::size_t level = (j * m + (count - 1) / 2) / (count - 1);
        if (levels.empty() || levels.back() != level) levels.push_back(level);
    }
    return levels;
}

std::vector<std::string> validate(const SolverConfig& cfg) {
    std::vector<std::string> issues = validate(cfg.params);
    if (cfg.n < 2) issues.push_back(fmt::format("n must be >= 2 (got {})", cfg.n));
    if (cfg.m < 2) issues.push_back(fmt::format("m must be >= 2 (got {})", cfg.m));
    if (!(cfg.newtonTol > 0.0)) issues.push_back("newton tolerance must be positive");
    if (cfg.newtonMaxIter < 1) issues.push_back("newton iteration limit must be >= 1");
    if (cfg.jacobianPoints < 3) issues.push_back("jacobian rule needs at least 3 points");
    if (cfg.forcingPoints < 1) issues.push_back("forcing rule needs at least 1 point");
    for (std::size_t level : cfg.snapshotLevels) {
        if (level > cfg.m) issues.push_back(fmt::format("snapshot level {} exceeds m = {}", level, cfg.m));
    }
    return issues;
}

double initial_phase(double z, double c) {
    if (!(c >= 0.0 && c < 1.0)) throw DomainError(fmt::format("kink speed must satisfy 0 <= c < 1 (got {})", c));
    return 4.0 * std::atan(std::exp((z - 0.1) / std::sqrt(1.0 - c * c)));
}

SolverState initialize(const SolverConfig& cfg) {
    if (const auto issues = validate(cfg); !issues.empty()) {
        throw DomainError("invalid solver config: " + join_issues(issues));
    }
    Mesh1D mesh(cfg.n);
    TimeGrid grid = TimeGrid::uniform(cfg.params.T, cfg.m);
    SolverState s{cfg,
                  mesh,
                  grid,
                  l1_weights(cfg.params.alpha, grid),
                  HistoryBuffer(mesh.nodes()),
                  assemble_stiffness(mesh),
                  assemble_mass(mesh),
                  gauss_legendre(cfg.jacobianPoints),
                  gauss_legendre(cfg.forcingPoints),
                  0};
    std::vector<double> phi0(mesh.nodes());
    for (std::size_t i = 0; i < phi0.size(); ++i) {
        const double z = mesh.z(i);
        phi0[i] = cfg.initialProfile ? cfg.initialProfile(z) : initial_phase(z, cfg.params.c);
    }
    s.history.reserve(cfg.m + 1);
    s.history.append(phi0);
    s.history.append(phi0);
    return s;
}

std::vector<double> step_residual(const SolverState& state, std::span<const double> u) {
    if (state.finished()) throw PreconditionError("step_residual: time grid exhausted");
    if (u.size() != state.mesh.nodes()) throw PreconditionError("step_residual: dimension mismatch");
    const auto prev = state.history.level(state.k + 1);
    std::vector<double> delta(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) delta[i] = u[i] - prev[i];
    return residual_delta(state, delta, step_data(state));
}

StepReport step(SolverState& state) {
    if (state.finished()) {
        throw PreconditionError(fmt::format("step: time grid exhausted at level {}", state.k + 1));
    }
    const auto& cfg = state.config;
    const StepData data = step_data(state);
    const double scale = time_scale(state);

    const auto prev = state.history.level(state.k + 1);
    const std::size_t N = prev.size();
    std::vector<double> delta(N, 0.0);  // warm start u = φ^{k+1}
    std::vector<double> r = residual_delta(state, delta, data);
    double norm = max_abs(r);
    int it = 0;
    std::vector<double> u(N);
    while (norm > cfg.newtonTol && it < cfg.newtonMaxIter) {
        for (std::size_t i = 0; i < N; ++i) u[i] = prev[i] + delta[i];
        TridiagonalMatrix J = state.stiffness;
        J.add_scaled(state.mass, scale);
        J.add_scaled(assemble_sine_jacobian(state.mesh, u, state.jacobianRule), 1.0);
        const std::vector<double> du = solve_tridiagonal(J, r);
        ++it;

        double damping = 1.0;
        std::vector<double> trial(N);
        std::vector<double> rt;
        double nt = 0.0;
        for (int halvings = 0;; ++halvings) {
            for (std::size_t i = 0; i < N; ++i) trial[i] = delta[i] - damping * du[i];
            rt = residual_delta(state, trial, data);
            nt = max_abs(rt);
            if (!cfg.newtonDamping || nt < norm || halvings >= 10) break;
            damping *= 0.5;
        }
        delta.swap(trial);
        r.swap(rt);
        norm = nt;
        if (!std::isfinite(norm)) break;
    }
    if (!(norm <= cfg.newtonTol)) throw StepFailure(static_cast<int>(state.k + 2), it, norm);

    state.history.append_increment(delta);
    ++state.k;
    return {state.k + 1, it, norm};
}

RunResult run(const SolverConfig& cfg) {
    SolverState state = initialize(cfg);
    return run(state);
}

RunResult run(SolverState& state) {
    const SolverConfig& cfg = state.config;
    RunResult result;
    auto& traj = result.trajectory;
    const std::size_t stride = cfg.snapshotStride;
    auto wanted = [&](std::size_t level) {
        if (stride > 0 && level % stride == 0) return true;
        return std::find(cfg.snapshotLevels.begin(), cfg.snapshotLevels.end(), level) != cfg.snapshotLevels.end();
    };
    if (wanted(0)) traj.snapshots.push_back(make_snapshot(state, 0));
    if (wanted(1)) traj.snapshots.push_back(make_snapshot(state, 1));

    traj.newtonIterations.reserve(cfg.m - 1);
    traj.residuals.reserve(cfg.m - 1);
    while (!state.finished()) {
        try {
            const StepReport rep = step(state);
            traj.newtonIterations.push_back(rep.iterations);
            traj.residuals.push_back(rep.residual);
            if (wanted(rep.level) && rep.level != cfg.m) traj.snapshots.push_back(make_snapshot(state, rep.level));
        } catch (const StepFailure& f) {
            result.failure = RunFailure{static_cast<std::size_t>(f.step()), f.iterations(), f.residual(), f.what()};
            break;
        }
    }
    const std::size_t last = state.history.latest();
    if (traj.snapshots.empty() || traj.snapshots.back().level != last) traj.snapshots.push_back(make_snapshot(state, last));
    return result;
}

}  // namespace jjfrac
