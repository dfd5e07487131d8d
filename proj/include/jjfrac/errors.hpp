#pragma once

#include <stdexcept>
#include <string>

namespace jjfrac {

/// Input outside the mathematical domain of an operation (non-positive length,
/// too few elements, kink speed >= 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Fractional order outside the supported range (0.5, 1].
class UnsupportedOrderError : public DomainError {
public:
    explicit UnsupportedOrderError(double alpha);
    double alpha() const noexcept { return alpha_; }

private:
    double alpha_;
};

/// Caller violated a documented precondition (e.g. not enough history levels).
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Newton iteration did not reach the residual tolerance.
class StepFailure : public std::runtime_error {
public:
    StepFailure(int step, int iterations, double residual);

    int step() const noexcept { return step_; }
    int iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    int step_;
    int iterations_;
    double residual_;
};

}  // namespace jjfrac
