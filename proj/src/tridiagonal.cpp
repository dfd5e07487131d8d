#include "jjfrac/tridiagonal.hpp"

#include "jjfrac/errors.hpp"

#include <cmath>

#include <fmt/format.h>

namespace jjfrac {

TridiagonalMatrix::TridiagonalMatrix(std::size_t dim)
    : lower_(dim > 0 ? dim - 1 : 0, 0.0), diag_(dim, 0.0), upper_(dim > 0 ? dim - 1 : 0, 0.0) {}

double TridiagonalMatrix::operator()(std::size_t i, std::size_t j) const noexcept {
    if (i == j) return diag_[i];
    if (i == j + 1) return lower_[j];
    if (j == i + 1) return upper_[i];
    return 0.0;
}

void TridiagonalMatrix::apply(std::span<const double> x, std::span<double> y) const {
    const std::size_t n = dim();
    if (x.size() != n || y.size() != n) throw PreconditionError("tridiagonal apply: dimension mismatch");
    if (n == 0) return;
    for (std::size_t i = 0; i < n; ++i) {
        double acc = diag_[i] * x[i];
        if (i > 0) acc += lower_[i - 1] * x[i - 1];
        if (i + 1 < n) acc += upper_[i] * x[i + 1];
        y[i] = acc;
    }
}

std::vector<double> TridiagonalMatrix::apply(std::span<const double> x) const {
    std::vector<double> y(dim());
    apply(x, y);
    return y;
}

void TridiagonalMatrix::add_scaled(const TridiagonalMatrix& other, double scale) {
    if (other.dim() != dim()) throw PreconditionError("tridiagonal add: dimension mismatch");
    for (std::size_t i = 0; i < diag_.size(); ++i) diag_[i] += scale * other.diag_[i];
    for (std::size_t i = 0; i < lower_.size(); ++i) {
        lower_[i] += scale * other.lower_[i];
        upper_[i] += scale * other.upper_[i];
    }
}

bool TridiagonalMatrix::is_symmetric(double tol) const noexcept {
    for (std::size_t i = 0; i < lower_.size(); ++i) {
        if (std::abs(lower_[i] - upper_[i]) > tol) return false;
    }
    return true;
}

std::vector<double> solve_tridiagonal(const TridiagonalMatrix& A, std::span<const double> rhs) {
    const std::size_t n = A.dim();
    if (rhs.size() != n) throw PreconditionError("tridiagonal solve: dimension mismatch");
    if (n == 0) return {};
    const auto a = A.lower();
    const auto b = A.diag();
    const auto c = A.upper();

    std::vector<double> cp(n, 0.0);
    std::vector<double> x(n, 0.0);
    double pivot = b[0];
    if (pivot == 0.0) throw DomainError("tridiagonal solve: zero pivot at row 0");
    if (n > 1) cp[0] = c[0] / pivot;
    x[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = b[i] - a[i - 1] * cp[i - 1];
        if (pivot == 0.0) throw DomainError(fmt::format("tridiagonal solve: zero pivot at row {}", i));
        if (i + 1 < n) cp[i] = c[i] / pivot;
        x[i] = (rhs[i] - a[i - 1] * x[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= cp[i] * x[i + 1];
    return x;
}

}  // namespace jjfrac
