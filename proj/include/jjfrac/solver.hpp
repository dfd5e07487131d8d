#pragma once

#include "jjfrac/assembly.hpp"
#include "jjfrac/frac_time.hpp"
#include "jjfrac/mesh.hpp"
#include "jjfrac/params.hpp"
#include "jjfrac/tridiagonal.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace jjfrac {

/// Everything needed to run the fractional sine-Gordon time stepper.
struct SolverConfig {
    DimensionlessParams params;
    std::size_t n = 160;   ///< elements
    std::size_t m = 200;   ///< time steps
    double newtonTol = 1e-10;
    int newtonMaxIter = 25;
    bool newtonDamping = false;  ///< halve the update while the residual grows
    /// Record level k when k % snapshotStride == 0; the final level is always recorded.
    std::size_t snapshotStride = 0;  ///< 0 = final level only
    /// Extra levels to record regardless of the stride.
    std::vector<std::size_t> snapshotLevels;
    std::size_t jacobianPoints = 8;  ///< Gauss points for the sine Jacobian
    std::size_t forcingPoints = 6;   ///< Gauss points for the forcing load
    /// Manufactured-solution forcing F(z, t); empty for the physical problem.
    ForcingFunction forcing;
    /// Initial phase φ(z, 0); empty means the kink 4 arctan(exp((z - 0.1)/√(1 - c²))).
    std::function<double(double)> initialProfile;
};

/// `count` levels spread evenly over 0..m (both ends included); {m} for count <= 1.
std::vector<std::size_t> evenly_spaced_levels(std::size_t m, std::size_t count);

/// Issues with the config (parameter invariants plus solver settings); empty when valid.
std::vector<std::string> validate(const SolverConfig& cfg);

/// Kink 4 arctan(exp((z - 0.1)/√(1 - c²))). Throws DomainError unless 0 <= c < 1.
double initial_phase(double z, double c);

struct SolverState {
    SolverConfig config;
    Mesh1D mesh;
    TimeGrid grid;
    L1Coefficients coeffs;
    HistoryBuffer history;
    TridiagonalMatrix stiffness;
    TridiagonalMatrix mass;
    QuadratureRule jacobianRule;
    QuadratureRule forcingRule;
    /// k of the next step; the next level appended is φ^{k+2}.
    std::size_t k = 0;

    bool finished() const noexcept { return k + 2 > grid.m; }
};

/// Builds mesh, weights and matrices and stores φ⁰ = φ¹. Throws DomainError
/// (listing every issue) for an invalid config.
SolverState initialize(const SolverConfig& cfg);

struct StepReport {
    std::size_t level = 0;  ///< index of the appended level (k + 2)
    int iterations = 0;
    double residual = 0.0;  ///< final ‖R‖∞
};

/// Residual R(u) of the level-(k+2) system for the current state.
std::vector<double> step_residual(const SolverState& state, std::span<const double> u);

/// Solves for φ^{k+2}, appends it and advances k. Throws PreconditionError when the
/// grid is exhausted and StepFailure when Newton does not converge.
StepReport step(SolverState& state);

struct Snapshot {
    std::size_t level = 0;
    double t = 0.0;
    std::vector<double> phase;
    std::vector<double> voltage;  ///< order-α Caputo derivative at t (0 at t = 0)
};

struct Trajectory {
    std::vector<Snapshot> snapshots;
    std::vector<int> newtonIterations;  ///< per step
    std::vector<double> residuals;      ///< per step
};

struct RunFailure {
    std::size_t step = 0;
    int iterations = 0;
    double residual = 0.0;
    std::string message;
};

struct RunResult {
    Trajectory trajectory;
    std::optional<RunFailure> failure;

    bool completed() const noexcept { return !failure.has_value(); }
};

/// Runs all m - 1 steps. On a step failure the partial trajectory is returned with
/// `failure` set.
RunResult run(const SolverConfig& cfg);

/// Advances a freshly initialized state to the end of the grid; the state keeps the
/// full history for post-processing.
RunResult run(SolverState& state);

}  // namespace jjfrac
