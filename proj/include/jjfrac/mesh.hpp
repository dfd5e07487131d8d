#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace jjfrac {

inline constexpr double domain_left = -10.0;
inline constexpr double domain_right = 10.0;

/// Uniform partition of [-10, 10] into linear Lagrange elements.
class Mesh1D {
public:
    /// Throws DomainError for n < 2.
    explicit Mesh1D(std::size_t elements);

    std::size_t elements() const noexcept { return elements_; }
    std::size_t nodes() const noexcept { return elements_ + 1; }
    double h() const noexcept { return h_; }
    double element_length(std::size_t /*e*/) const noexcept { return h_; }
    double z(std::size_t node) const noexcept { return coords_[node]; }
    std::span<const double> coordinates() const noexcept { return coords_; }
    double element_midpoint(std::size_t e) const noexcept { return 0.5 * (coords_[e] + coords_[e + 1]); }

private:
    std::size_t elements_;
    double h_;
    std::vector<double> coords_;
};

Mesh1D build_mesh(std::size_t elements);

/// Quadrature on the reference interval [0, 1].
struct QuadratureRule {
    std::vector<double> points;
    std::vector<double> weights;
    int degree = 0;  ///< highest polynomial degree integrated exactly

    std::size_t size() const noexcept { return points.size(); }
};

/// Gauss-Legendre rule with the given number of points (>= 1), mapped to [0, 1].
QuadratureRule gauss_legendre(std::size_t points);

/// Minimal Gauss-Legendre rule exact to `degree`; degree must be in 1..7.
QuadratureRule gauss_rule(int degree);

}  // namespace jjfrac
