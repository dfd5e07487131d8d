#pragma once

// Reference implementations used only by the tests. None of them call into the
// library's assembly or solver code.

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

/// Adaptive Gauss-Kronrod (61-point) integral of f over [a, b], at most 8 bisection levels.
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-14);

/// ∫₀¹ sin((1-s)φl + sφr) N_p(s) h ds for N_0 = 1-s, N_1 = s, by adaptive quadrature.
std::array<double, 2> sine_load(double left, double right, double h);

/// ∫₀¹ s^k ds = 1/(k+1).
inline double monomial_integral(int k) { return 1.0 / (k + 1.0); }

struct IntegerOrderProblem {
    std::size_t n = 80;
    std::size_t m = 100;
    double T = 1.0;
    double gamma1 = 0.1;
    double gamma2 = 5.0;
    double lambda = 1.2;
    double A = 0.00189;
    double B = 0.00163;
    double c = 0.9;
};

/// Classical implicit sine-Gordon stepper with backward first and centered second time
/// differences: dense matrices, Gauss quadrature for the sine terms and dense LU
/// Newton. Returns all m+1 levels.
std::vector<std::vector<double>> integer_order_trajectory(const IntegerOrderProblem& p, std::size_t steps = 0);

}  // namespace oracle
