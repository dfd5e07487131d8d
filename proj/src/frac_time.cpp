#include "jjfrac/frac_time.hpp"

#include "jjfrac/errors.hpp"
#include "jjfrac/params.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace jjfrac {

TimeGrid TimeGrid::uniform(double T, std::size_t m) {
    if (!(T > 0.0) || !std::isfinite(T)) throw DomainError(fmt::format("final time must be positive (got {})", T));
    if (m < 2) throw DomainError(fmt::format("time grid needs at least 2 steps (got {})", m));
    return TimeGrid{T, m, T / static_cast<double>(m)};
}

double gamma_fn(double x) {
    if (!(x > 0.0)) throw DomainError(fmt::format("gamma_fn expects x > 0 (got {})", x));
    return std::tgamma(x);
}

double l1_weight(double s_order, std::size_t p) {
    // (p+1)^s - p^s with s = 1 - order, written as p^s * expm1(s*log1p(1/p)) to
    // avoid cancellation for large p.
    if (p == 0) return 1.0;
    const double s = 1.0 - s_order;
    const double pd = static_cast<double>(p);
    return std::pow(pd, s) * std::expm1(s * std::log1p(1.0 / pd));
}

L1Coefficients l1_weights(double alpha, const TimeGrid& grid) {
    require_supported_order(alpha);
    L1Coefficients c;
    c.alpha = alpha;
    c.bAlpha.resize(grid.m + 1);
    c.b2Alpha.resize(grid.m + 1);
    // b^{2α} uses exponent 2(1-α) = 1 - (2α - 1).
    const double shifted = 2.0 * alpha - 1.0;
    for (std::size_t p = 0; p <= grid.m; ++p) {
        c.bAlpha[p] = l1_weight(alpha, p);
        c.b2Alpha[p] = l1_weight(shifted, p);
    }
    if (alpha == 1.0) {
        c.Calpha = 1.0 / grid.tau;
        c.C2alpha = 1.0 / (grid.tau * grid.tau);
    } else {
        c.Calpha = std::pow(grid.tau, -alpha) / gamma_fn(2.0 - alpha);
        c.C2alpha = std::pow(grid.tau, -2.0 * alpha) / gamma_fn(3.0 - 2.0 * alpha);
    }
    return c;
}

HistoryBuffer::HistoryBuffer(std::size_t nodes) : nodes_(nodes) {
    if (nodes == 0) throw PreconditionError("history buffer needs at least one node");
}

void HistoryBuffer::reserve(std::size_t levels) {
    levels_.reserve(levels * nodes_);
    d1_.reserve(levels * nodes_);
    d2_.reserve(levels * nodes_);
}

void HistoryBuffer::append(std::span<const double> level) {
    if (level.size() != nodes_) {
        throw PreconditionError(fmt::format("history level has {} nodes, expected {}", level.size(), nodes_));
    }
    const std::size_t count = size();
    const std::vector<double> copy(level.begin(), level.end());  // level may alias levels_
    levels_.insert(levels_.end(), copy.begin(), copy.end());
    level = copy;
    if (count >= 1) {
        const double* prev = &levels_[(count - 1) * nodes_];
        for (std::size_t i = 0; i < nodes_; ++i) d1_.push_back(level[i] - prev[i]);
    }
    if (count >= 2) {
        const double* prev = &levels_[(count - 1) * nodes_];
        const double* prev2 = &levels_[(count - 2) * nodes_];
        for (std::size_t i = 0; i < nodes_; ++i) d2_.push_back(level[i] - 2.0 * prev[i] + prev2[i]);
    }
}

void HistoryBuffer::append_increment(std::span<const double> delta) {
    if (delta.size() != nodes_) {
        throw PreconditionError(fmt::format("history increment has {} nodes, expected {}", delta.size(), nodes_));
    }
    const std::size_t count = size();
    if (count == 0) throw PreconditionError("append_increment needs an existing level");
    const std::vector<double> copy(delta.begin(), delta.end());
    for (std::size_t i = 0; i < nodes_; ++i) levels_.push_back(levels_[(count - 1) * nodes_ + i] + copy[i]);
    if (count >= 2) {
        const std::size_t last = d1_.size() - nodes_;
        for (std::size_t i = 0; i < nodes_; ++i) d2_.push_back(copy[i] - d1_[last + i]);
    }
    d1_.insert(d1_.end(), copy.begin(), copy.end());
}

std::span<const double> HistoryBuffer::level(std::size_t k) const {
    if (k >= size()) throw PreconditionError(fmt::format("history level {} not available (size {})", k, size()));
    return {levels_.data() + k * nodes_, nodes_};
}

std::span<const double> HistoryBuffer::first_difference(std::size_t j) const {
    if (j + 1 >= size()) throw PreconditionError(fmt::format("first difference {} not available (size {})", j, size()));
    return {d1_.data() + j * nodes_, nodes_};
}

std::span<const double> HistoryBuffer::second_difference(std::size_t j) const {
    if (j + 2 >= size()) throw PreconditionError(fmt::format("second difference {} not available (size {})", j, size()));
    return {d2_.data() + j * nodes_, nodes_};
}

void memory_term_alpha(const HistoryBuffer& hist, std::size_t k, const L1Coefficients& coeffs, std::span<double> out) {
    if (out.size() != hist.nodes()) throw PreconditionError("memory term output has the wrong length");
    std::fill(out.begin(), out.end(), 0.0);
    if (k == 0) return;
    if (hist.size() < k + 1) {
        throw PreconditionError(fmt::format("order-alpha memory term at k = {} needs {} levels, have {}", k, k + 1, hist.size()));
    }
    if (coeffs.bAlpha.size() <= k) throw PreconditionError("L1 weights shorter than the requested step");
    const std::size_t n = hist.nodes();
    for (std::size_t p = 1; p <= k; ++p) {
        const double b = coeffs.bAlpha[p];
        const double* d = hist.first_difference(k - p).data();
        for (std::size_t i = 0; i < n; ++i) out[i] += b * d[i];
    }
}

void memory_term_2alpha(const HistoryBuffer& hist, std::size_t k, const L1Coefficients& coeffs, std::span<double> out) {
    if (out.size() != hist.nodes()) throw PreconditionError("memory term output has the wrong length");
    std::fill(out.begin(), out.end(), 0.0);
    if (k == 0) return;
    if (hist.size() < k + 2) {
        throw PreconditionError(fmt::format("order-2alpha memory term at k = {} needs {} levels, have {}", k, k + 2, hist.size()));
    }
    if (coeffs.b2Alpha.size() <= k) throw PreconditionError("L1 weights shorter than the requested step");
    const std::size_t n = hist.nodes();
    for (std::size_t p = 1; p <= k; ++p) {
        const double b = coeffs.b2Alpha[p];
        const double* d = hist.second_difference(k - p).data();
        for (std::size_t i = 0; i < n; ++i) out[i] += b * d[i];
    }
}

std::vector<double> memory_term_alpha(const HistoryBuffer& hist, std::size_t k, const L1Coefficients& coeffs) {
    std::vector<double> out(hist.nodes());
    memory_term_alpha(hist, k, coeffs, out);
    return out;
}

std::vector<double> memory_term_2alpha(const HistoryBuffer& hist, std::size_t k, const L1Coefficients& coeffs) {
    std::vector<double> out(hist.nodes());
    memory_term_2alpha(hist, k, coeffs, out);
    return out;
}

double discrete_caputo(std::span<const double> samples, double alpha, double tau, std::size_t k) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw DomainError(fmt::format("discrete Caputo expects 0 < alpha <= 1 (got {})", alpha));
    }
    if (!(tau > 0.0)) throw DomainError(fmt::format("time step must be positive (got {})", tau));
    if (samples.size() < k + 2) {
        throw PreconditionError(fmt::format("discrete Caputo at t_{} needs {} samples, have {}", k + 1, k + 2, samples.size()));
    }
    if (alpha == 1.0) return (samples[k + 1] - samples[k]) / tau;
    double memory = 0.0;
    for (std::size_t p = 1; p <= k; ++p) memory += (samples[k - p + 1] - samples[k - p]) * l1_weight(alpha, p);
    const double C = std::pow(tau, -alpha) / gamma_fn(2.0 - alpha);
    return C * (samples[k + 1] - samples[k]) + C * memory;
}

}  // namespace jjfrac
