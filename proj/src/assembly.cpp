#include "jjfrac/assembly.hpp"

#include "jjfrac/errors.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace jjfrac {

namespace {

void require_positive_length(double h) {
    if (!(h > 0.0)) throw DomainError(fmt::format("element length must be positive (got {})", h));
}

// sin(d)/d
double sinc(double d) {
    if (std::abs(d) < sine_series_threshold) {
        const double d2 = d * d;
        return 1.0 - d2 / 6.0 * (1.0 - d2 / 20.0 * (1.0 - d2 / 42.0 * (1.0 - d2 / 72.0)));
    }
    return std::sin(d) / d;
}

// (sin d − d cos d)/d² = Σ_{k≥1} (−1)^{k+1} 2k d^{2k−1} / (2k+1)!
double sinc_odd(double d) {
    if (std::abs(d) < sine_series_threshold) {
        const double d2 = d * d;
        return d * (1.0 / 3.0 - d2 * (1.0 / 30.0 - d2 * (1.0 / 840.0 - d2 * (1.0 / 45360.0 - d2 / 3991680.0))));
    }
    return (std::sin(d) - d * std::cos(d)) / (d * d);
}

}  // namespace

ElementBlock element_stiffness(double h) {
    require_positive_length(h);
    const double k = 1.0 / h;
    return {{{k, -k}, {-k, k}}};
}

ElementBlock element_mass(double h) {
    require_positive_length(h);
    const double o = h / 6.0;
    const double d = 2.0 * o;
    return {{{d, o}, {o, d}}};
}

ElementVector sine_load(ElementPhase e, double h) {
    const double mean = 0.5 * (e.left + e.right);
    const double half = 0.5 * (e.right - e.left);
    const double even = std::sin(mean) * sinc(half);
    const double odd = std::cos(mean) * sinc_odd(half);
    return {0.5 * h * (even - odd), 0.5 * h * (even + odd)};
}

ElementBlock sine_jacobian(ElementPhase e, double h, const QuadratureRule& quad) {
    if (quad.degree < 4) throw DomainError(fmt::format("sine_jacobian needs a rule of degree >= 4 (got {})", quad.degree));
    double j00 = 0.0;
    double j01 = 0.0;
    double j11 = 0.0;
    for (std::size_t q = 0; q < quad.size(); ++q) {
        const double s = quad.points[q];
        const double phi = e.left * (1.0 - s) + e.right * s;
        const double w = quad.weights[q] * h * std::cos(phi);
        j00 += w * (1.0 - s) * (1.0 - s);
        j01 += w * (1.0 - s) * s;
        j11 += w * s * s;
    }
    return {{{j00, j01}, {j01, j11}}};
}

TridiagonalMatrix assemble_global(const Mesh1D& mesh, const std::function<ElementBlock(std::size_t)>& producer) {
    TridiagonalMatrix A(mesh.nodes());
    auto lower = A.lower();
    auto diag = A.diag();
    auto upper = A.upper();
    for (std::size_t e = 0; e < mesh.elements(); ++e) {
        const ElementBlock b = producer(e);
        diag[e] += b[0][0];
        upper[e] += b[0][1];
        lower[e] += b[1][0];
        diag[e + 1] += b[1][1];
    }
    return A;
}

TridiagonalMatrix assemble_stiffness(const Mesh1D& mesh) {
    return assemble_global(mesh, [&](std::size_t e) { return element_stiffness(mesh.element_length(e)); });
}

TridiagonalMatrix assemble_mass(const Mesh1D& mesh) {
    return assemble_global(mesh, [&](std::size_t e) { return element_mass(mesh.element_length(e)); });
}

void assemble_sine_load(const Mesh1D& mesh, std::span<const double> u, std::span<double> out) {
    if (u.size() != mesh.nodes() || out.size() != mesh.nodes()) throw PreconditionError("sine load: dimension mismatch");
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t e = 0; e < mesh.elements(); ++e) {
        const ElementVector g = sine_load({u[e], u[e + 1]}, mesh.element_length(e));
        out[e] += g[0];
        out[e + 1] += g[1];
    }
}

TridiagonalMatrix assemble_sine_jacobian(const Mesh1D& mesh, std::span<const double> u, const QuadratureRule& quad) {
    if (u.size() != mesh.nodes()) throw PreconditionError("sine jacobian: dimension mismatch");
    return assemble_global(mesh, [&](std::size_t e) { return sine_jacobian({u[e], u[e + 1]}, mesh.element_length(e), quad); });
}

std::vector<double> rhs_vector(const Mesh1D& mesh, double lambda, double Abc, double Bbc, const ForcingFunction& forcing,
                               double t, const QuadratureRule& quad) {
    std::vector<double> f(mesh.nodes(), 0.0);
    for (std::size_t e = 0; e < mesh.elements(); ++e) {
        const double h = mesh.element_length(e);
        f[e] += 0.5 * lambda * h;
        f[e + 1] += 0.5 * lambda * h;
        if (forcing) {
            const double z0 = mesh.z(e);
            for (std::size_t q = 0; q < quad.size(); ++q) {
                const double s = quad.points[q];
                const double w = quad.weights[q] * h * forcing(z0 + s * h, t);
                f[e] += w * (1.0 - s);
                f[e + 1] += w * s;
            }
        }
    }
    f.front() -= Abc;
    f.back() += Bbc;
    return f;
}

}  // namespace jjfrac
