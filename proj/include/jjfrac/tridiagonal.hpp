#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace jjfrac {

/// Square tridiagonal matrix stored by diagonals.
/// lower[i] = A(i+1, i), diag[i] = A(i, i), upper[i] = A(i, i+1).
class TridiagonalMatrix {
public:
    TridiagonalMatrix() = default;
    explicit TridiagonalMatrix(std::size_t dim);

    std::size_t dim() const noexcept { return diag_.size(); }

    std::span<double> lower() noexcept { return lower_; }
    std::span<double> diag() noexcept { return diag_; }
    std::span<double> upper() noexcept { return upper_; }
    std::span<const double> lower() const noexcept { return lower_; }
    std::span<const double> diag() const noexcept { return diag_; }
    std::span<const double> upper() const noexcept { return upper_; }

    /// Entry (i, j); zero outside the band.
    double operator()(std::size_t i, std::size_t j) const noexcept;

    /// y = A x.
    void apply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> apply(std::span<const double> x) const;

    /// this += scale * other (same dimension).
    void add_scaled(const TridiagonalMatrix& other, double scale);

    bool is_symmetric(double tol = 0.0) const noexcept;

private:
    std::vector<double> lower_;
    std::vector<double> diag_;
    std::vector<double> upper_;
};

/// Solves A x = rhs by Thomas elimination (no pivoting). Throws DomainError on a
/// zero pivot.
std::vector<double> solve_tridiagonal(const TridiagonalMatrix& A, std::span<const double> rhs);

}  // namespace jjfrac
