#pragma once

#include "jjfrac/params.hpp"
#include "jjfrac/solver.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace jjfrac {

/// φ_ex(z, t) = 4 arctan(exp((z - 0.1)/√(1 - c²))) + t². Throws DomainError unless 0 <= c < 1.
double fabricated_solution(double z, double t, double c);
double fabricated_solution_dz(double z, double c);
/// ∂²_z of the kink, in the closed form 4/(1-c²) [e^u/(e^{2u}+1) - 2e^{3u}/(e^{2u}+1)²].
double kink_second_derivative(double z, double c);

/// Forcing that makes φ_ex an exact solution of the dimensionless model:
/// sin φ_ex − ∂²_z kink + 2γ₁t^{2-α}/Γ(3-α) + 2γ₂t^{2-2α}/Γ(3-2α) − λ.
double artificial_forcing(double z, double t, const DimensionlessParams& p);

/// Config in MMS mode: the given base with the artificial forcing installed and the
/// Neumann data set to ∂_zφ_ex at the two ends.
SolverConfig mms_config(const SolverConfig& base);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  ///< root-mean-square residual
};

/// Ordinary least squares. Throws DomainError with fewer than two distinct abscissae.
LineFit fit_slope(const std::vector<double>& x, const std::vector<double>& y);

struct ConvergenceRow {
    std::size_t n = 0;
    std::size_t m = 0;
    double h = 0.0;
    double tau = 0.0;
    double l2 = 0.0;
    double h1 = 0.0;
    double maxDeviation = 0.0;  ///< max-norm deviation at the nodes at final time
    std::vector<double> z;
    std::vector<double> approx;
    std::vector<double> exact;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    std::optional<LineFit> l2Fit;  ///< unset with fewer than two rows
    std::optional<LineFit> h1Fit;
    std::optional<RunFailure> failure;  ///< set when a run failed; rows before it are kept
    std::size_t failedN = 0;
};

/// Steps per unit time for a mesh of n elements: m = ceil(stepsPerElement · n · T).
using CouplingRule = std::function<std::size_t(std::size_t n, double T)>;

/// τ = h · T / 320, i.e. m = 16 n T on [-10, 10].
CouplingRule default_coupling();

/// Runs the MMS problem on each mesh (concurrently, up to `workers` at once) and
/// evaluates final-time errors. Rows keep the order of `meshes`.
ConvergenceTable convergence_study(const SolverConfig& base, const std::vector<std::size_t>& meshes,
                                   const CouplingRule& coupling = default_coupling(), std::size_t workers = 0);

void write_convergence_csv(std::ostream& os, const ConvergenceTable& table);
void write_overlay_csv(std::ostream& os, const ConvergenceRow& row);
std::string convergence_summary_json(const ConvergenceTable& table);

}  // namespace jjfrac
