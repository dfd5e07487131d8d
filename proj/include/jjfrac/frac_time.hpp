#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace jjfrac {

/// Uniform time levels t_k = kτ, k = 0..m, τ = T/m.
struct TimeGrid {
    double T = 1.0;
    std::size_t m = 2;
    double tau = 0.5;

    /// Throws DomainError unless T > 0 and m >= 2.
    static TimeGrid uniform(double T, std::size_t m);
    double t(std::size_t k) const noexcept { return tau * static_cast<double>(k); }
};

/// Weights of the L1-type approximations of the order-α and order-2α Caputo derivatives.
///
///   b_p^α  = (p+1)^{1-α}  - p^{1-α},      C_α  = τ^{-α}  / Γ(2-α)
///   b_p^2α = (p+1)^{2-2α} - p^{2-2α},     C_2α = τ^{-2α} / Γ(3-2α)
///
/// Index 0 holds b_0 = 1 (the weight of the most recent difference); p = 1..m are
/// the memory weights.
struct L1Coefficients {
    double alpha = 1.0;
    std::vector<double> bAlpha;
    std::vector<double> b2Alpha;
    double Calpha = 0.0;
    double C2alpha = 0.0;
};

/// Throws UnsupportedOrderError unless 0.5 < alpha <= 1.
L1Coefficients l1_weights(double alpha, const TimeGrid& grid);

/// b_p^α for any order 0 < alpha <= 1 (p >= 0).
double l1_weight(double order_in_unit_interval, std::size_t p);

/// Every nodal level φ⁰..φᵏ of a run, plus the first and second level differences
/// that the memory sums consume. Differences are formed once, at append time.
class HistoryBuffer {
public:
    explicit HistoryBuffer(std::size_t nodes);

    /// Throws PreconditionError on a length mismatch.
    void append(std::span<const double> level);
    /// Appends latest() + delta, storing delta itself as the newest first difference so
    /// the memory sums see the increment without the rounding of the level.
    void append_increment(std::span<const double> delta);
    void reserve(std::size_t levels);

    std::size_t size() const noexcept { return levels_.size() / nodes_; }
    std::size_t nodes() const noexcept { return nodes_; }
    /// Index of the latest level (size() - 1).
    std::size_t latest() const noexcept { return size() - 1; }

    std::span<const double> level(std::size_t k) const;
    /// φ^{j+1} − φ^j, j = 0..size()-2.
    std::span<const double> first_difference(std::size_t j) const;
    /// φ^{j+2} − 2φ^{j+1} + φ^j, j = 0..size()-3.
    std::span<const double> second_difference(std::size_t j) const;

private:
    std::size_t nodes_;
    std::vector<double> levels_;
    std::vector<double> d1_;
    std::vector<double> d2_;
};

/// ζ_k^α = Σ_{p=1}^{k} (φ^{k-p+1} − φ^{k-p}) b_p^α, nodal. ζ_0^α = 0.
/// Needs levels 0..k in `hist`.
std::vector<double> memory_term_alpha(const HistoryBuffer& hist, std::size_t k, const L1Coefficients& coeffs);

/// ζ_k^{2α} = Σ_{p=1}^{k} (φ^{k-p+2} − 2φ^{k-p+1} + φ^{k-p}) b_p^{2α}, nodal. ζ_0^{2α} = 0.
/// Needs levels 0..k+1 in `hist`.
std::vector<double> memory_term_2alpha(const HistoryBuffer& hist, std::size_t k, const L1Coefficients& coeffs);

/// In-place variants that write into `out` (size hist.nodes()).
void memory_term_alpha(const HistoryBuffer& hist, std::size_t k, const L1Coefficients& coeffs, std::span<double> out);
void memory_term_2alpha(const HistoryBuffer& hist, std::size_t k, const L1Coefficients& coeffs, std::span<double> out);

/// L1 value of the order-α Caputo derivative at t_{k+1} from samples φ(t_0..t_{k+1}):
///   C_α (φ^{k+1} − φ^k) + C_α Σ_{p=1}^{k} (φ^{k-p+1} − φ^{k-p}) b_p^α.
/// Accepts 0 < alpha <= 1. Throws PreconditionError if samples has fewer than k+2 entries.
double discrete_caputo(std::span<const double> samples, double alpha, double tau, std::size_t k);

/// Γ(x) for x > 0.
double gamma_fn(double x);

}  // namespace jjfrac
