#include "jjfrac/errors.hpp"
#include "jjfrac/frac_time.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace jjfrac;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

HistoryBuffer sampled_history(std::size_t levels, double tau, double (*f)(double), std::size_t nodes = 3) {
    HistoryBuffer h(nodes);
    for (std::size_t k = 0; k < levels; ++k) h.append(std::vector<double>(nodes, f(tau * static_cast<double>(k))));
    return h;
}

std::vector<double> samples_of(double (*f)(double), double tau, std::size_t count) {
    std::vector<double> s(count);
    for (std::size_t k = 0; k < count; ++k) s[k] = f(tau * static_cast<double>(k));
    return s;
}

double identity(double t) { return t; }
double square(double t) { return t * t; }
double cube(double t) { return t * t * t; }
double constant(double) { return 2.5; }

}  // namespace

TEST_CASE("uniform time grid") {
    const auto g = TimeGrid::uniform(1.0, 200);
    CHECK(g.tau == 1.0 / 200.0);
    CHECK(g.t(200) == 1.0);
    CHECK_THROWS_AS(TimeGrid::uniform(1.0, 1), DomainError);
    CHECK_THROWS_AS(TimeGrid::uniform(0.0, 10), DomainError);
}

TEST_CASE("l1 weights closed forms") {
    const auto g = TimeGrid::uniform(1.0, 10);
    const auto c = l1_weights(0.75, g);
    CHECK_THAT(c.bAlpha[1], WithinRel(std::pow(2.0, 0.25) - 1.0, 1e-14));
    CHECK_THAT(c.bAlpha[1], WithinAbs(0.189207, 5e-7));
    CHECK_THAT(c.b2Alpha[1], WithinRel(std::sqrt(2.0) - 1.0, 1e-14));
    CHECK_THAT(c.b2Alpha[1], WithinAbs(0.414214, 5e-7));
    CHECK_THAT(c.Calpha, WithinRel(std::pow(g.tau, -0.75) / boost::math::tgamma(1.25), 1e-14));
    CHECK_THAT(c.C2alpha, WithinRel(std::pow(g.tau, -1.5) / boost::math::tgamma(1.5), 1e-14));
    CHECK(c.bAlpha.size() == g.m + 1);
    CHECK(c.bAlpha[0] == 1.0);
    CHECK(c.b2Alpha[0] == 1.0);
    for (std::size_t p = 1; p <= g.m; ++p) {
        const double pp = static_cast<double>(p);
        CHECK_THAT(c.bAlpha[p], WithinRel(std::pow(pp + 1.0, 0.25) - std::pow(pp, 0.25), 1e-13));
        CHECK_THAT(c.b2Alpha[p], WithinRel(std::pow(pp + 1.0, 0.5) - std::pow(pp, 0.5), 1e-13));
    }
}

TEST_CASE("l1 weights degenerate exactly at alpha = 1") {
    const auto g = TimeGrid::uniform(1.0, 64);
    const auto c = l1_weights(1.0, g);
    for (std::size_t p = 1; p <= g.m; ++p) {
        CHECK(c.bAlpha[p] == 0.0);
        CHECK(c.b2Alpha[p] == 0.0);
    }
    CHECK(c.Calpha == 1.0 / g.tau);
    CHECK(c.C2alpha == 1.0 / (g.tau * g.tau));
}

TEST_CASE("l1 weights reject unsupported orders") {
    const auto g = TimeGrid::uniform(1.0, 4);
    CHECK_THROWS_AS(l1_weights(0.5, g), UnsupportedOrderError);
    CHECK_THROWS_AS(l1_weights(0.2, g), UnsupportedOrderError);
    CHECK_THROWS_AS(l1_weights(1.01, g), UnsupportedOrderError);
}

TEST_CASE("telescoping and monotone weights") {
    for (double alpha : {0.1, 0.3, 0.51, 0.6, 0.75, 0.9, 0.99}) {
        double sum = 0.0;
        double prev = 1.0;
        for (std::size_t k = 1; k <= 10000; ++k) {
            const double b = l1_weight(alpha, k);
            CHECK(b > 0.0);
            CHECK(b < prev);
            prev = b;
            sum += b;
            if (k % 997 == 0 || k == 10000) {
                const double ref = std::pow(static_cast<double>(k) + 1.0, 1.0 - alpha) - 1.0;
                CHECK_THAT(sum, WithinAbs(ref, 1e-12 * std::max(1.0, ref)));
            }
        }
    }
}

TEST_CASE("memory terms vanish when there is nothing to remember") {
    const auto g = TimeGrid::uniform(1.0, 16);
    const auto c = l1_weights(0.75, g);
    const auto flat = sampled_history(10, g.tau, constant);
    CHECK(memory_term_alpha(flat, 0, c) == std::vector<double>(3, 0.0));
    CHECK(memory_term_2alpha(flat, 0, c) == std::vector<double>(3, 0.0));
    for (std::size_t k = 1; k <= 8; ++k) {
        CHECK(memory_term_alpha(flat, k, c) == std::vector<double>(3, 0.0));
        CHECK(memory_term_2alpha(flat, k, c) == std::vector<double>(3, 0.0));
    }
    const auto linear = sampled_history(10, g.tau, identity);
    for (std::size_t k = 1; k <= 8; ++k) {
        for (double v : memory_term_2alpha(linear, k, c)) CHECK_THAT(v, WithinAbs(0.0, 1e-16));
    }
}

TEST_CASE("memory terms by hand expansion") {
    const auto g = TimeGrid::uniform(1.0, 16);
    const auto c = l1_weights(0.75, g);
    const double tau = g.tau;

    // φ = t: every first difference is τ
    const auto lin = sampled_history(3, tau, identity);
    for (double v : memory_term_alpha(lin, 1, c)) CHECK_THAT(v, WithinRel(tau * c.bAlpha[1], 1e-14));
    for (double v : memory_term_alpha(lin, 2, c)) CHECK_THAT(v, WithinRel(tau * (c.bAlpha[1] + c.bAlpha[2]), 1e-14));

    // φ = t²: every second difference is 2τ²
    const auto quad = sampled_history(4, tau, square);
    for (double v : memory_term_2alpha(quad, 1, c)) CHECK_THAT(v, WithinRel(2 * tau * tau * c.b2Alpha[1], 1e-12));
    for (double v : memory_term_2alpha(quad, 2, c)) {
        CHECK_THAT(v, WithinRel(2 * tau * tau * (c.b2Alpha[1] + c.b2Alpha[2]), 1e-12));
    }

    // general k against the defining sums on a non-polynomial series
    HistoryBuffer h(1);
    std::vector<double> s;
    for (int k = 0; k < 12; ++k) {
        s.push_back(std::sin(0.3 * k) + 0.01 * k * k);
        h.append(std::vector<double>{s.back()});
    }
    for (std::size_t k = 0; k + 2 <= 11; ++k) {
        double za = 0.0;
        double z2 = 0.0;
        for (std::size_t p = 1; p <= k; ++p) {
            za += (s[k - p + 1] - s[k - p]) * c.bAlpha[p];
            z2 += (s[k - p + 2] - 2 * s[k - p + 1] + s[k - p]) * c.b2Alpha[p];
        }
        CHECK_THAT(memory_term_alpha(h, k, c)[0], WithinAbs(za, 1e-14));
        CHECK_THAT(memory_term_2alpha(h, k, c)[0], WithinAbs(z2, 1e-14));
    }
}

TEST_CASE("memory terms require enough history") {
    const auto g = TimeGrid::uniform(1.0, 16);
    const auto c = l1_weights(0.75, g);
    const auto h = sampled_history(3, g.tau, identity);
    CHECK_NOTHROW(memory_term_alpha(h, 2, c));
    CHECK_THROWS_AS(memory_term_alpha(h, 3, c), PreconditionError);
    CHECK_NOTHROW(memory_term_2alpha(h, 1, c));
    CHECK_THROWS_AS(memory_term_2alpha(h, 2, c), PreconditionError);
    std::vector<double> wrong(2);
    CHECK_THROWS_AS(memory_term_alpha(h, 1, c, wrong), PreconditionError);
}

TEST_CASE("history buffer bookkeeping") {
    HistoryBuffer h(2);
    CHECK(h.size() == 0);
    CHECK_THROWS_AS(h.append(std::vector<double>{1.0}), PreconditionError);
    CHECK_THROWS_AS(h.append_increment(std::vector<double>{1.0, 2.0}), PreconditionError);
    h.append(std::vector<double>{1.0, 2.0});
    h.append(h.level(0));  // aliasing its own storage
    CHECK(h.size() == 2);
    CHECK(h.latest() == 1);
    CHECK(h.first_difference(0)[0] == 0.0);
    h.append_increment(std::vector<double>{0.5, -0.25});
    CHECK(h.level(2)[0] == 1.5);
    CHECK(h.level(2)[1] == 1.75);
    CHECK(h.first_difference(1)[1] == -0.25);
    CHECK(h.second_difference(0)[0] == 0.5);
    CHECK_THROWS_AS(h.level(3), PreconditionError);
    CHECK_THROWS_AS(h.first_difference(2), PreconditionError);
    CHECK_THROWS_AS(h.second_difference(1), PreconditionError);
    CHECK_THROWS_AS(HistoryBuffer(0), PreconditionError);
}

TEST_CASE("discrete caputo trivial cases") {
    const double tau = 1.0 / 32.0;
    const auto flat = samples_of(constant, tau, 33);
    CHECK(discrete_caputo(flat, 0.7, tau, 31) == 0.0);
    const auto lin = samples_of(identity, tau, 33);
    for (std::size_t k = 0; k <= 31; ++k) CHECK(discrete_caputo(lin, 1.0, tau, k) == 1.0);
    CHECK(discrete_caputo(lin, 1.0, tau, 5) == (lin[6] - lin[5]) / tau);
    CHECK_THROWS_AS(discrete_caputo(lin, 0.7, tau, 32), PreconditionError);
    CHECK_THROWS_AS(discrete_caputo(lin, 0.0, tau, 3), DomainError);
    CHECK_THROWS_AS(discrete_caputo(lin, 1.5, tau, 3), DomainError);
}

TEST_CASE("integer-order second operator is the centered difference") {
    const auto g = TimeGrid::uniform(1.0, 20);
    const auto c = l1_weights(1.0, g);
    HistoryBuffer h(1);
    std::vector<double> s;
    for (int k = 0; k <= 20; ++k) {
        s.push_back(std::cos(0.7 * k * g.tau));
        h.append(std::vector<double>{s.back()});
    }
    for (std::size_t k = 0; k + 2 <= 20; ++k) {
        const double l1 = c.C2alpha * (s[k + 2] - 2 * s[k + 1] + s[k]) + c.C2alpha * memory_term_2alpha(h, k, c)[0];
        CHECK_THAT(l1, WithinRel((s[k + 2] - 2 * s[k + 1] + s[k]) / (g.tau * g.tau), 1e-15));
    }
}

TEST_CASE("discrete caputo of t^2 at t = 1, alpha = 0.5") {
    const double tau = 1.0 / 64.0;
    const auto s = samples_of(square, tau, 65);
    const double exact = 2.0 / boost::math::tgamma(2.5);
    CHECK_THAT(exact, WithinAbs(1.50451, 5e-6));
    CHECK_THAT(discrete_caputo(s, 0.5, tau, 63), WithinAbs(exact, std::pow(tau, 1.5)));
}

TEST_CASE("power-law oracle convergence order") {
    struct Case {
        double (*f)(double);
        double s;
    };
    for (const Case cs : {Case{identity, 1.0}, Case{square, 2.0}, Case{cube, 3.0}}) {
        for (double alpha : {0.55, 0.7, 0.9}) {
            const double exact = boost::math::tgamma(cs.s + 1.0) / boost::math::tgamma(cs.s + 1.0 - alpha);
            std::vector<double> errors;
            for (std::size_t m : {64u, 128u, 256u, 512u}) {
                const double tau = 1.0 / static_cast<double>(m);
                const auto samples = samples_of(cs.f, tau, m + 1);
                errors.push_back(std::abs(discrete_caputo(samples, alpha, tau, m - 1) - exact));
            }
            for (std::size_t i = 1; i < errors.size(); ++i) {
                if (errors[i - 1] < 1e-13) continue;  // t is reproduced to rounding
                CHECK(std::log2(errors[i - 1] / errors[i]) >= 2.0 - alpha - 0.2);
            }
        }
    }
}
