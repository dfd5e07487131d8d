#include "jjfrac/observables.hpp"

#include "jjfrac/constants.hpp"
#include "jjfrac/errors.hpp"

#include <cmath>

#include <fmt/format.h>

namespace jjfrac {

std::string_view to_string(ObservableKind kind) noexcept {
    switch (kind) {
        case ObservableKind::phase: return "phase";
        case ObservableKind::current: return "current";
        case ObservableKind::voltage: return "voltage";
        case ObservableKind::field: return "field";
    }
    return "unknown";
}

std::vector<double> josephson_current(std::span<const double> phase) {
    std::vector<double> out(phase.size());
    for (std::size_t i = 0; i < phase.size(); ++i) out[i] = std::sin(phase[i]);
    return out;
}

std::vector<double> voltage(const HistoryBuffer& history, const L1Coefficients& coeffs, std::size_t k) {
    if (history.size() < k + 2) {
        throw PreconditionError(fmt::format("voltage at t_{} needs {} levels, have {}", k + 1, k + 2, history.size()));
    }
    const auto latest = history.first_difference(k);
    std::vector<double> out(history.nodes());
    if (coeffs.alpha == 1.0) {
        const double tau = 1.0 / coeffs.Calpha;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = latest[i] / tau;
        return out;
    }
    memory_term_alpha(history, k, coeffs, out);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeffs.Calpha * latest[i] + coeffs.Calpha * out[i];
    return out;
}

std::vector<double> magnetic_field(std::span<const double> phase, const Mesh1D& mesh) {
    if (phase.size() != mesh.nodes()) throw PreconditionError("magnetic_field: phase length does not match the mesh");
    std::vector<double> out(mesh.elements());
    for (std::size_t e = 0; e < mesh.elements(); ++e) out[e] = (phase[e + 1] - phase[e]) / mesh.element_length(e);
    return out;
}

std::vector<double> nodal_average(std::span<const double> per_element) {
    if (per_element.empty()) return {};
    std::vector<double> out(per_element.size() + 1);
    out.front() = per_element.front();
    out.back() = per_element.back();
    for (std::size_t i = 1; i < per_element.size(); ++i) out[i] = 0.5 * (per_element[i - 1] + per_element[i]);
    return out;
}

double spatial_mean(std::span<const double> values, const Mesh1D& mesh) {
    const double length = domain_right - domain_left;
    double acc = 0.0;
    if (values.size() == mesh.nodes()) {
        for (std::size_t e = 0; e < mesh.elements(); ++e) acc += 0.5 * mesh.element_length(e) * (values[e] + values[e + 1]);
    } else if (values.size() == mesh.elements()) {
        for (std::size_t e = 0; e < mesh.elements(); ++e) acc += mesh.element_length(e) * values[e];
    } else {
        throw PreconditionError("spatial_mean: length matches neither nodes nor elements");
    }
    return acc / length;
}

namespace {

struct SquaredErrors {
    double value = 0.0;
    double slope = 0.0;
};

SquaredErrors squared_errors(std::span<const double> approx, const ScalarFunction& exact,
                             const ScalarFunction* exact_dz, const Mesh1D& mesh, const QuadratureRule& quad) {
    if (quad.degree < 4) throw DomainError(fmt::format("error norms need a rule of degree >= 4 (got {})", quad.degree));
    if (approx.size() != mesh.nodes()) throw PreconditionError("error norm: approx length does not match the mesh");
    SquaredErrors acc;
    for (std::size_t e = 0; e < mesh.elements(); ++e) {
        const double h = mesh.element_length(e);
        const double z0 = mesh.z(e);
        const double slope = (approx[e + 1] - approx[e]) / h;
        for (std::size_t q = 0; q < quad.size(); ++q) {
            const double s = quad.points[q];
            const double z = z0 + s * h;
            const double w = quad.weights[q] * h;
            const double diff = approx[e] * (1.0 - s) + approx[e + 1] * s - exact(z);
            acc.value += w * diff * diff;
            if (exact_dz) {
                const double ds = slope - (*exact_dz)(z);
                acc.slope += w * ds * ds;
            }
        }
    }
    return acc;
}

}  // namespace

double l2_error(std::span<const double> approx, const ScalarFunction& exact, const Mesh1D& mesh,
                const QuadratureRule& quad) {
    return std::sqrt(squared_errors(approx, exact, nullptr, mesh, quad).value);
}

double h1_error(std::span<const double> approx, const ScalarFunction& exact, const ScalarFunction& exact_dz,
                const Mesh1D& mesh, const QuadratureRule& quad) {
    const SquaredErrors e = squared_errors(approx, exact, &exact_dz, mesh, quad);
    return std::sqrt(e.value + e.slope);
}

PhysicalScales physical_scales(const PhysicalJunctionParams& phys) {
    const JunctionConstants k = derive_constants(phys);
    const double eta = effective_eta(phys, k);
    const double a = phys.alpha;
    PhysicalScales s;
    // ∂^α_t = (c̄/λ_J)^α ∂^α_t̂ under t̂ = c̄ t/λ_J.
    s.voltage = k.Phi0 / (constants::two_pi * std::pow(eta, 1.0 - a)) * std::pow(k.cbar / k.lambdaJ, a);
    s.field = k.Phi0 / (constants::two_pi * phys.tB * k.lambdaJ);
    return s;
}

}  // namespace jjfrac
