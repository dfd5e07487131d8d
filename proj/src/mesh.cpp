#include "jjfrac/mesh.hpp"

#include "jjfrac/errors.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace jjfrac {

Mesh1D::Mesh1D(std::size_t elements) : elements_(elements), h_(0.0) {
    if (elements < 2) throw DomainError(fmt::format("mesh needs at least 2 elements (got {})", elements));
    const double length = domain_right - domain_left;
    h_ = length / static_cast<double>(elements);
    coords_.resize(elements + 1);
    // Index-based so that node i is exactly -10 + i*h; the last node is pinned.
    for (std::size_t i = 0; i <= elements; ++i) coords_[i] = domain_left + static_cast<double>(i) * h_;
    coords_.back() = domain_right;
}

Mesh1D build_mesh(std::size_t elements) { return Mesh1D(elements); }

QuadratureRule gauss_legendre(std::size_t count) {
    if (count == 0) throw DomainError("Gauss-Legendre rule needs at least one point");
    QuadratureRule rule;
    rule.degree = static_cast<int>(2 * count - 1);
    rule.points.resize(count);
    rule.weights.resize(count);

    // Newton on P_count(x) from the Chebyshev-like initial guess; nodes on [-1, 1].
    const std::size_t half = (count + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(count) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= count; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = pk;
            }
            dp = static_cast<double>(count) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Map [-1, 1] -> [0, 1]; store in ascending order.
        rule.points[i] = 0.5 * (1.0 - x);
        rule.points[count - 1 - i] = 0.5 * (1.0 + x);
        rule.weights[i] = 0.5 * w;
        rule.weights[count - 1 - i] = 0.5 * w;
    }
    return rule;
}

QuadratureRule gauss_rule(int degree) {
    if (degree < 1 || degree > 7) throw DomainError(fmt::format("unsupported quadrature degree {} (expected 1..7)", degree));
    return gauss_legendre(static_cast<std::size_t>(degree + 2) / 2);
}

}  // namespace jjfrac
