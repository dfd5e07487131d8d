#include "jjfrac/params.hpp"

#include "jjfrac/constants.hpp"
#include "jjfrac/errors.hpp"

#include <cmath>
#include <string_view>

#include <fmt/format.h>

namespace jjfrac {

namespace {

void require_positive(double value, std::string_view field) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw DomainError(fmt::format("physical parameter '{}' must be strictly positive (got {})", field, value));
    }
}

}  // namespace

bool is_supported_order(double alpha) noexcept { return alpha > 0.5 && alpha <= 1.0; }

void require_supported_order(double alpha) {
    if (!is_supported_order(alpha)) throw UnsupportedOrderError(alpha);
}

JunctionConstants derive_constants(const PhysicalJunctionParams& phys) {
    require_positive(phys.d, "d");
    require_positive(phys.tB, "tB");
    require_positive(phys.eps, "eps");
    require_positive(phys.area, "area");
    require_positive(phys.Jc, "Jc");
    if (!(phys.sigma0 >= 0.0)) {
        throw DomainError(fmt::format("physical parameter 'sigma0' must be non-negative (got {})", phys.sigma0));
    }

    using namespace constants;
    JunctionConstants k;
    k.Phi0 = flux_quantum;
    k.cbar = std::sqrt(phys.d / (phys.eps * vacuum_permittivity * vacuum_permeability * phys.tB));
    k.lambdaJ = std::sqrt(flux_quantum / (two_pi * vacuum_permeability * phys.tB * phys.Jc));
    k.Ccap = phys.eps * vacuum_permittivity * phys.area / phys.d;
    k.beta = phys.sigma0 / k.Ccap;
    return k;
}

double effective_eta(const PhysicalJunctionParams& phys, const JunctionConstants& k) {
    if (phys.eta) {
        require_positive(*phys.eta, "eta");
        return *phys.eta;
    }
    return k.lambdaJ / k.cbar;
}

DimensionlessParams nondimensionalize(const PhysicalJunctionParams& phys, GammaConvention convention) {
    require_supported_order(phys.alpha);
    if (!(phys.Jbias >= 0.0)) {
        throw DomainError(fmt::format("physical parameter 'Jbias' must be non-negative (got {})", phys.Jbias));
    }
    const JunctionConstants k = derive_constants(phys);
    const double eta = effective_eta(phys, k);
    const double a = phys.alpha;

    DimensionlessParams p;
    p.alpha = a;
    p.lambda = phys.Jbias / phys.Jc;
    if (convention == GammaConvention::printed) {
        p.gamma1 = k.beta * std::pow(k.lambdaJ, 2.0 - a) / std::pow(k.cbar, 2.0 + a);
        p.gamma2 = 1.0 / (std::pow(k.cbar, 2.0 * (a - 1.0)) * std::pow(k.lambdaJ, 2.0 * (a - 1.0)) *
                          std::pow(eta, 1.0 - a));
    } else {
        p.gamma1 = k.beta * std::pow(k.lambdaJ, 2.0 - a) * std::pow(k.cbar, a - 2.0) * std::pow(eta, a - 1.0);
        p.gamma2 = std::pow(k.cbar, 2.0 * a - 2.0) * std::pow(k.lambdaJ, 2.0 - 2.0 * a) * std::pow(eta, a - 1.0);
    }

    if (phys.Bex && phys.I) {
        require_positive(phys.W, "W");
        const double scale = constants::two_pi * phys.tB * k.lambdaJ / constants::flux_quantum;
        const double self_field = *phys.I * constants::vacuum_permeability / (2.0 * phys.W);
        p.Abc = scale * (*phys.Bex - self_field);
        p.Bbc = scale * (*phys.Bex + self_field);
    }
    return p;
}

std::vector<std::string> validate(const DimensionlessParams& p) {
    std::vector<std::string> issues;
    if (!is_supported_order(p.alpha)) issues.emplace_back("alpha outside (0.5, 1]");
    if (!(p.gamma1 >= 0.0)) issues.emplace_back("gamma1 must be non-negative");
    if (!(p.gamma2 > 0.0)) issues.emplace_back("gamma2 must be strictly positive");
    if (!std::isfinite(p.lambda)) issues.emplace_back("lambda must be finite");
    if (!std::isfinite(p.Abc) || !std::isfinite(p.Bbc)) issues.emplace_back("boundary slopes must be finite");
    if (!(p.c >= 0.0)) issues.emplace_back("kink speed must satisfy c >= 0");
    if (!(p.c < 1.0)) issues.emplace_back("kink speed must satisfy c < 1");
    if (!(p.T > 0.0) || !std::isfinite(p.T)) issues.emplace_back("final time T must be strictly positive");
    return issues;
}

}  // namespace jjfrac
