#pragma once

#include "jjfrac/frac_time.hpp"
#include "jjfrac/mesh.hpp"
#include "jjfrac/params.hpp"

#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace jjfrac {

enum class ObservableKind { phase, current, voltage, field };

std::string_view to_string(ObservableKind kind) noexcept;

/// One observable at one time. Per-node values except `field`, which is per element
/// unless nodal averaging was requested.
struct ObservableField {
    ObservableKind kind = ObservableKind::phase;
    std::vector<double> values;
    double t = 0.0;
};

/// J_s / J_c = sin φ, elementwise.
std::vector<double> josephson_current(std::span<const double> phase);

/// Dimensionless voltage at t_{k+1}: the L1 order-α Caputo derivative
/// C_α(φ^{k+1} − φ^k) + C_α ζ_k^α, per node. At α = 1 this is (φ^{k+1} − φ^k)/τ.
/// Needs at least k + 2 levels.
std::vector<double> voltage(const HistoryBuffer& history, const L1Coefficients& coeffs, std::size_t k);

/// Per-element slope (φ_{i+1} − φ_i)/h, the dimensionless B_y.
std::vector<double> magnetic_field(std::span<const double> phase, const Mesh1D& mesh);

/// Nodal average of the per-element field (one-sided at the two ends).
std::vector<double> nodal_average(std::span<const double> per_element);

/// (1/|Ω|) ∫ v_h over the mesh for nodal values (trapezoidal, exact for the
/// interpolant), or the length-weighted mean for per-element values.
double spatial_mean(std::span<const double> values, const Mesh1D& mesh);

using ScalarFunction = std::function<double(double)>;

/// ‖φ_h − exact‖_{L²(Ω)} with φ_h the linear interpolant of `approx`.
/// Requires quad.degree >= 4.
double l2_error(std::span<const double> approx, const ScalarFunction& exact, const Mesh1D& mesh,
                const QuadratureRule& quad);

/// (‖φ_h − exact‖²_{L²} + ‖∂_zφ_h − exact_dz‖²_{L²})^{1/2}. Requires quad.degree >= 4.
double h1_error(std::span<const double> approx, const ScalarFunction& exact, const ScalarFunction& exact_dz,
                const Mesh1D& mesh, const QuadratureRule& quad);

/// Prefactors that turn the dimensionless voltage and field into SI units.
struct PhysicalScales {
    double voltage = 1.0;  ///< [V] per unit of dimensionless voltage
    double field = 1.0;    ///< [T] per unit of dimensionless slope
};

/// V = Φ₀/(2π η^{1-α}) (c̄/λ_J)^α · (dimensionless voltage), B_y = Φ₀/(2π t_B λ_J) · slope.
PhysicalScales physical_scales(const PhysicalJunctionParams& phys);

}  // namespace jjfrac
