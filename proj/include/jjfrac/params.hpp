#pragma once

#include <optional>
#include <string>
#include <vector>

namespace jjfrac {

/// Default Neumann slopes of the inline junction at z = -10 and z = 10.
inline constexpr double default_left_slope = 0.00189;
inline constexpr double default_right_slope = 0.00163;
/// Default kink speed of the initial profile.
inline constexpr double default_kink_speed = 0.9;

/// Dimensional description of an inline long Josephson junction (SI units).
struct PhysicalJunctionParams {
    double d = 0.0;           ///< barrier thickness [m]
    double tB = 0.0;          ///< magnetic thickness d + λ_L1 + λ_L2 [m]
    double W = 0.0;           ///< junction width [m]
    double halfLength = 0.0;  ///< L [m]
    double eps = 0.0;         ///< relative dielectric constant
    double sigma0 = 0.0;      ///< junction conductance parameter [S]
    double area = 0.0;        ///< barrier area [m²]
    double Jc = 0.0;          ///< maximum Josephson current density [A/m²]
    double Jbias = 0.0;       ///< bias current density [A/m²]
    std::optional<double> I;    ///< total current [A]; with Bex gives the boundary slopes
    std::optional<double> Bex;  ///< external field, y-component [T]
    std::optional<double> eta;  ///< time scale η [s]; defaults to λ_J / c̄
    double alpha = 1.0;
};

/// Composite constants of the dimensional model.
struct JunctionConstants {
    double cbar = 0.0;     ///< Swihart-type velocity [m/s]
    double beta = 0.0;     ///< damping σ₀/C [1/s]
    double Ccap = 0.0;     ///< capacitance εε₀A/d [F]
    double lambdaJ = 0.0;  ///< Josephson penetration depth [m]
    double Phi0 = 0.0;     ///< flux quantum [Wb]
};

/// Everything that defines a dimensionless run on Ω = [-10, 10].
struct DimensionlessParams {
    double alpha = 0.9;
    double gamma1 = 0.1;
    double gamma2 = 5.0;
    double lambda = 1.2;
    double Abc = default_left_slope;
    double Bbc = default_right_slope;
    double c = default_kink_speed;
    double T = 1.0;

    bool operator==(const DimensionlessParams&) const = default;
};

/// How γ₁ and γ₂ are formed from the physical constants.
///
/// `printed`: γ₁ = βλ_J^{2-α}/c̄^{2+α}, γ₂ = (c̄λ_J)^{2-2α} η^{α-1}. `rescaled` substitutes
/// ẑ = z/λ_J, t̂ = c̄t/λ_J directly into the dimensional equation, which gives
/// γ₁ = βλ_J^{2-α} c̄^{α-2} η^{α-1} and γ₂ = c̄^{2α-2} λ_J^{2-2α} η^{α-1}.
/// Both give γ₂ = 1 at α = 1; only `rescaled` gives γ₁ = βλ_J/c̄ there.
enum class GammaConvention { printed, rescaled };

bool is_supported_order(double alpha) noexcept;

/// Throws UnsupportedOrderError unless 0.5 < alpha <= 1.
void require_supported_order(double alpha);

/// Throws DomainError naming the first non-positive field.
JunctionConstants derive_constants(const PhysicalJunctionParams& phys);

/// η actually used: the user value or λ_J / c̄.
double effective_eta(const PhysicalJunctionParams& phys, const JunctionConstants& k);

DimensionlessParams nondimensionalize(const PhysicalJunctionParams& phys,
                                      GammaConvention convention = GammaConvention::printed);

/// Report-style check; each entry names one violated invariant.
std::vector<std::string> validate(const DimensionlessParams& p);

}  // namespace jjfrac
