#include "jjfrac/errors.hpp"

#include <fmt/format.h>

namespace jjfrac {

UnsupportedOrderError::UnsupportedOrderError(double alpha)
    : DomainError(fmt::format("unsupported fractional order alpha = {}: alpha outside (0.5, 1]", alpha)),
      alpha_(alpha) {}

StepFailure::StepFailure(int step, int iterations, double residual)
    : std::runtime_error(fmt::format("Newton failed at step k = {} after {} iterations (|R|inf = {:.3e})",
                                     step, iterations, residual)),
      step_(step),
      iterations_(iterations),
      residual_(residual) {}

}  // namespace jjfrac
