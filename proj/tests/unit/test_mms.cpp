#include "jjfrac/errors.hpp"
#include "jjfrac/mms.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <boost/math/special_functions/gamma.hpp>
#include <json.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace jjfrac;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("fabricated solution examples") {
    CHECK_THAT(fabricated_solution(0.1, 0.0, 0.9), WithinAbs(std::numbers::pi, 1e-15));
    CHECK_THAT(fabricated_solution(0.1, 0.5, 0.9), WithinAbs(std::numbers::pi + 0.25, 1e-15));
    CHECK_THAT(fabricated_solution(1.1, 1.0, 0.0), WithinAbs(4.0 * std::atan(std::numbers::e) + 1.0, 1e-14));
    CHECK_THAT(fabricated_solution_dz(0.1, 0.0), WithinAbs(2.0, 1e-15));
    CHECK_THROWS_AS(fabricated_solution(0.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(fabricated_solution_dz(0.0, 1.5), DomainError);

    // slope against a centred difference of the kink itself
    for (double z = -9.5; z <= 9.5; z += 0.5) {
        const double d = 1e-5;
        const double fd = (fabricated_solution(z + d, 0.3, 0.9) - fabricated_solution(z - d, 0.3, 0.9)) / (2 * d);
        CHECK_THAT(fabricated_solution_dz(z, 0.9), WithinAbs(fd, 1e-8));
    }
}

TEST_CASE("kink curvature matches the hyperbolic form and finite differences") {
    for (double c : {0.0, 0.5, 0.9}) {
        const double w = std::sqrt(1.0 - c * c);
        for (double z = -10.0; z <= 10.0; z += 0.37) {
            const double u = (z - 0.1) / w;
            const double ref = -2.0 * std::tanh(u) / (w * w * std::cosh(u));
            CHECK_THAT(kink_second_derivative(z, c), WithinAbs(ref, 1e-13));
            const double d = 1e-5;
            const double fd = (fabricated_solution_dz(z + d, c) - fabricated_solution_dz(z - d, c)) / (2 * d);
            CHECK_THAT(kink_second_derivative(z, c), WithinAbs(fd, 1e-7));
        }
        CHECK(kink_second_derivative(0.1, c) == 0.0);
    }
    // far tails stay finite
    CHECK(std::isfinite(kink_second_derivative(800.0, 0.9)));
    CHECK(std::isfinite(kink_second_derivative(-800.0, 0.9)));
}

TEST_CASE("artificial forcing at rest collapses to -lambda") {
    DimensionlessParams p;
    p.c = 0.0;
    p.alpha = 0.8;
    for (double z = -10.0; z <= 10.0; z += 1.3) CHECK_THAT(artificial_forcing(z, 0.0, p), WithinAbs(-p.lambda, 1e-14));

    // a moving kink has φ_zz = sin φ/(1 - c²), so only part of the sine cancels
    p.c = 0.9;
    for (double z = -4.0; z <= 4.0; z += 0.7) {
        const double s = std::sin(fabricated_solution(z, 0.0, 0.9));
        CHECK_THAT(artificial_forcing(z, 0.0, p), WithinAbs(s * (1.0 - 1.0 / 0.19) - p.lambda, 1e-12));
    }
    p.c = 0.0;

    // at α = 1 the memory terms become 2γ₁t + 2γ₂
    p.alpha = 1.0;
    const double t = 0.4;
    for (double z : {-3.0, 0.1, 2.0}) {
        const double ref = std::sin(fabricated_solution(z, t, 0.0)) - kink_second_derivative(z, 0.0) + 2 * p.gamma1 * t +
                           2 * p.gamma2 - p.lambda;
        CHECK_THAT(artificial_forcing(z, t, p), WithinAbs(ref, 1e-13));
    }

    p.alpha = 0.7;
    p.c = 0.9;
    const double z = 1.5;
    const double ref = std::sin(fabricated_solution(z, t, 0.9)) - kink_second_derivative(z, 0.9) +
                       2 * p.gamma1 * std::pow(t, 1.3) / boost::math::tgamma(2.3) +
                       2 * p.gamma2 * std::pow(t, 0.6) / boost::math::tgamma(1.6) - p.lambda;
    CHECK_THAT(artificial_forcing(z, t, p), WithinRel(ref, 1e-13));
}

TEST_CASE("mms_config installs forcing and boundary data") {
    SolverConfig base;
    base.initialProfile = [](double) { return 1.0; };
    const auto cfg = mms_config(base);
    CHECK(cfg.params.Abc == fabricated_solution_dz(-10.0, base.params.c));
    CHECK(cfg.params.Bbc == fabricated_solution_dz(10.0, base.params.c));
    REQUIRE(cfg.forcing);
    CHECK(cfg.forcing(0.3, 0.2) == artificial_forcing(0.3, 0.2, base.params));
    CHECK_FALSE(cfg.initialProfile);
    CHECK(cfg.n == base.n);
}

TEST_CASE("least-squares slope") {
    const auto exact = fit_slope({0.0, 1.0, 2.0}, {1.0, 3.0, 5.0});
    CHECK_THAT(exact.slope, WithinAbs(2.0, 1e-15));
    CHECK_THAT(exact.intercept, WithinAbs(1.0, 1e-15));
    CHECK_THAT(exact.residual, WithinAbs(0.0, 1e-15));

    const auto noisy = fit_slope({0.0, 1.0, 2.0, 3.0}, {0.0, 1.0, 1.0, 3.0});
    CHECK_THAT(noisy.slope, WithinAbs(0.9, 1e-14));
    CHECK_THAT(noisy.intercept, WithinAbs(-0.1, 1e-14));
    CHECK(noisy.residual > 0.0);

    CHECK_THROWS_AS(fit_slope({1.0}, {2.0}), DomainError);
    CHECK_THROWS_AS(fit_slope({1.0, 1.0}, {2.0, 3.0}), DomainError);
    CHECK_THROWS_AS(fit_slope({1.0, 2.0}, {2.0}), PreconditionError);
}

TEST_CASE("default coupling keeps tau proportional to h") {
    const auto rule = default_coupling();
    CHECK(rule(40, 1.0) == 640);
    CHECK(rule(320, 1.0) == 5120);
    CHECK(rule(10, 0.5) == 80);
    CHECK(rule(3, 0.1) == 5);
}

TEST_CASE("small convergence study") {
    const auto table = convergence_study(SolverConfig{}, {40, 80}, default_coupling(), 2);
    REQUIRE(table.rows.size() == 2);
    REQUIRE_FALSE(table.failure);
    const auto& a = table.rows[0];
    const auto& b = table.rows[1];
    CHECK(a.n == 40);
    CHECK(a.m == 640);
    CHECK(b.n == 80);
    CHECK(b.h == 0.25);
    CHECK(b.tau == 1.0 / 1280.0);
    CHECK(a.h1 >= a.l2);
    CHECK(a.l2 / b.l2 > 3.5);
    CHECK(a.l2 / b.l2 < 4.5);
    CHECK(a.h1 / b.h1 > 1.8);
    CHECK(a.h1 / b.h1 < 2.2);
    CHECK(b.maxDeviation < a.maxDeviation);
    REQUIRE(table.l2Fit);
    CHECK_THAT(table.l2Fit->slope, WithinAbs(std::log2(a.l2 / b.l2), 1e-12));
    CHECK(b.z.size() == 81);
    CHECK(b.exact[40] == fabricated_solution(0.0, 1.0, 0.9));

    // worker count does not change the numbers
    const auto serial = convergence_study(SolverConfig{}, {40}, default_coupling(), 1);
    CHECK(serial.rows[0].l2 == a.l2);
    CHECK(serial.rows[0].approx == a.approx);
    CHECK_FALSE(serial.l2Fit);

    std::ostringstream csv;
    write_convergence_csv(csv, table);
    CHECK(csv.str().rfind("n,m,h,tau,l2_error,h1_error,max_deviation\n", 0) == 0);
    CHECK(count_lines(csv.str()) == 3);
    std::ostringstream overlay;
    write_overlay_csv(overlay, b);
    CHECK(overlay.str().rfind("z,approx,exact,deviation,max_deviation\n", 0) == 0);
    CHECK(count_lines(overlay.str()) == 82);

    const auto j = nlohmann::json::parse(convergence_summary_json(table));
    CHECK(j["meshes"] == nlohmann::json::array({40, 80}));
    CHECK(j["l2"]["slope"].get<double>() == table.l2Fit->slope);
    CHECK_FALSE(j.contains("notice"));
    CHECK_FALSE(j.contains("failure"));
    const auto js = nlohmann::json::parse(convergence_summary_json(serial));
    CHECK(js["l2"].is_null());
    CHECK(js.contains("notice"));
}

TEST_CASE("a failing run stops the table and is reported") {
    SolverConfig base;
    base.newtonTol = 1e-300;
    base.newtonMaxIter = 2;
    const auto table = convergence_study(base, {20, 40});
    CHECK(table.rows.empty());
    REQUIRE(table.failure);
    CHECK(table.failedN == 20);
    CHECK_FALSE(table.l2Fit);
    const auto j = nlohmann::json::parse(convergence_summary_json(table));
    CHECK(j["failure"]["n"] == 20);
    CHECK_THAT(j["failure"]["message"].get<std::string>(), ContainsSubstring("2"));
}
