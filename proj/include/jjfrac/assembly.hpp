#pragma once

#include "jjfrac/mesh.hpp"
#include "jjfrac/tridiagonal.hpp"

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace jjfrac {

using ElementBlock = std::array<std::array<double, 2>, 2>;
using ElementVector = std::array<double, 2>;

/// Phase values at the two endpoints of one element.
struct ElementPhase {
    double left = 0.0;
    double right = 0.0;
};

/// Forcing F(z, t) added to the right-hand side; empty means none.
using ForcingFunction = std::function<double(double z, double t)>;

/// (1/h) [[1, -1], [-1, 1]]. Throws DomainError for h <= 0.
ElementBlock element_stiffness(double h);

/// (h/6) [[2, 1], [1, 2]]. Throws DomainError for h <= 0.
ElementBlock element_mass(double h);

/// Exact ∫ sin(φ_h) N_p over one element for the linear interpolant φ_h.
///
/// With m̄ the endpoint mean and d half the endpoint difference,
///   entry_left  = h/2 [sin m̄ · S0(d) − cos m̄ · S1(d)]
///   entry_right = h/2 [sin m̄ · S0(d) + cos m̄ · S1(d)]
/// where S0 = sin d / d and S1 = (sin d − d cos d)/d². This equals
/// h[cos φ_l/Δ − (sin φ_r − sin φ_l)/Δ²] (and its mirror) without the 1/Δ²
/// cancellation; S0 and S1 switch to Taylor series for |d| < sine_series_threshold.
ElementVector sine_load(ElementPhase e, double h);

/// Half-difference below which sine_load evaluates by series.
inline constexpr double sine_series_threshold = 0.05;

/// ∂(sine_load)/∂φ = ∫ cos(φ_h) N_p N_q, by quadrature. Requires quad.degree >= 4.
ElementBlock sine_jacobian(ElementPhase e, double h, const QuadratureRule& quad);

/// Overlap-add of per-element blocks into the global tridiagonal matrix.
TridiagonalMatrix assemble_global(const Mesh1D& mesh, const std::function<ElementBlock(std::size_t element)>& producer);

TridiagonalMatrix assemble_stiffness(const Mesh1D& mesh);
TridiagonalMatrix assemble_mass(const Mesh1D& mesh);

/// Global nonlinear load 𝔾(u) and its Jacobian.
void assemble_sine_load(const Mesh1D& mesh, std::span<const double> u, std::span<double> out);
TridiagonalMatrix assemble_sine_jacobian(const Mesh1D& mesh, std::span<const double> u, const QuadratureRule& quad);

/// Right-hand side 𝔽: (λ, N_p) with −Abc added to the first row and +Bbc to the
/// last, plus (F(·, t), N_p) by quadrature when `forcing` is set.
std::vector<double> rhs_vector(const Mesh1D& mesh, double lambda, double Abc, double Bbc,
                               const ForcingFunction& forcing = {}, double t = 0.0,
                               const QuadratureRule& quad = gauss_legendre(6));

}  // namespace jjfrac
