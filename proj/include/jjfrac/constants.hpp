#pragma once

#include <numbers>

namespace jjfrac::constants {

// CODATA values, SI units.
inline constexpr double flux_quantum = 2.067833848e-15;        // Φ₀ = h/2e [Wb]
inline constexpr double vacuum_permittivity = 8.8541878128e-12; // ε₀ [F/m]
inline constexpr double vacuum_permeability = 1.25663706212e-6; // μ₀ [N/A²]

inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace jjfrac::constants
