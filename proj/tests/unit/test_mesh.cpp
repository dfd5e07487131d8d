#include "jjfrac/errors.hpp"
#include "jjfrac/mesh.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <numeric>

using namespace jjfrac;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("build_mesh examples") {
    const auto two = build_mesh(2);
    CHECK(two.nodes() == 3);
    CHECK(two.h() == 10.0);
    CHECK(two.z(0) == -10.0);
    CHECK(two.z(1) == 0.0);
    CHECK(two.z(2) == 10.0);

    const auto forty = build_mesh(40);
    CHECK(forty.h() == 0.5);
    CHECK(forty.nodes() == 41);

    CHECK(build_mesh(320).h() == 0.0625);
}

TEST_CASE("build_mesh rejects fewer than two elements") {
    CHECK_THROWS_AS(build_mesh(1), DomainError);
    CHECK_THROWS_AS(build_mesh(0), DomainError);
}

TEST_CASE("mesh nodes are increasing and equally spaced") {
    for (std::size_t n : {2u, 3u, 7u, 40u, 160u, 999u}) {
        const auto mesh = build_mesh(n);
        double total = 0.0;
        for (std::size_t e = 0; e < mesh.elements(); ++e) {
            CHECK(mesh.z(e + 1) > mesh.z(e));
            CHECK_THAT(mesh.z(e + 1) - mesh.z(e), WithinAbs(mesh.h(), 64 * 1e-16 * 10.0));
            CHECK_THAT(mesh.element_midpoint(e), WithinAbs(0.5 * (mesh.z(e) + mesh.z(e + 1)), 1e-15));
            total += mesh.element_length(e);
        }
        CHECK_THAT(total, WithinAbs(20.0, static_cast<double>(n) * 20.0 * std::numeric_limits<double>::epsilon()));
        CHECK(mesh.z(mesh.nodes() - 1) == domain_right);
        CHECK(mesh.coordinates().size() == mesh.nodes());
    }
}

TEST_CASE("gauss_rule examples") {
    const auto mid = gauss_rule(1);
    REQUIRE(mid.size() == 1);
    CHECK(mid.points[0] == 0.5);
    CHECK(mid.weights[0] == 1.0);

    const auto two = gauss_rule(3);
    REQUIRE(two.size() == 2);
    CHECK_THAT(two.points[0], WithinAbs((3.0 - std::sqrt(3.0)) / 6.0, 1e-15));
    CHECK_THAT(two.points[1], WithinAbs((3.0 + std::sqrt(3.0)) / 6.0, 1e-15));
    CHECK_THAT(two.weights[0], WithinAbs(0.5, 1e-15));
    CHECK_THAT(two.weights[1], WithinAbs(0.5, 1e-15));

    double cubic = 0.0;
    for (std::size_t q = 0; q < two.size(); ++q) cubic += two.weights[q] * std::pow(two.points[q], 3);
    CHECK_THAT(cubic, WithinAbs(0.25, 1e-15));
}

TEST_CASE("gauss_rule rejects unsupported degrees") {
    CHECK_THROWS_AS(gauss_rule(0), DomainError);
    CHECK_THROWS_AS(gauss_rule(8), DomainError);
    CHECK_THROWS_AS(gauss_legendre(0), DomainError);
}

TEST_CASE("quadrature rules integrate monomials up to their degree") {
    for (int degree = 1; degree <= 7; ++degree) {
        const auto rule = gauss_rule(degree);
        CHECK(rule.degree >= degree);
        CHECK(rule.size() == static_cast<std::size_t>((degree + 2) / 2));
        CHECK_THAT(std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0), WithinRel(1.0, 1e-15));
        for (int k = 0; k <= degree; ++k) {
            double sum = 0.0;
            for (std::size_t q = 0; q < rule.size(); ++q) sum += rule.weights[q] * std::pow(rule.points[q], k);
            CHECK_THAT(sum, WithinRel(1.0 / (k + 1.0), 1e-14));
        }
    }
    for (std::size_t points : {8u, 16u, 32u}) {
        const auto rule = gauss_legendre(points);
        CHECK(rule.degree == static_cast<int>(2 * points - 1));
        for (int k = 0; k <= rule.degree; ++k) {
            double sum = 0.0;
            for (std::size_t q = 0; q < rule.size(); ++q) sum += rule.weights[q] * std::pow(rule.points[q], k);
            CHECK_THAT(sum, WithinRel(1.0 / (k + 1.0), 1e-13));
        }
    }
}

TEST_CASE("gauss_legendre nodes agree with boost's tabulated rule") {
    using Ref = boost::math::quadrature::gauss<double, 7>;
    const auto rule = gauss_legendre(7);
    const auto& absc = Ref::abscissa();
    const auto& wts = Ref::weights();
    // boost stores the non-negative half of the [-1, 1] rule, centre first
    for (std::size_t i = 0; i < absc.size(); ++i) {
        const double s = 0.5 * (1.0 + absc[i]);
        const std::size_t q = 3 + i;
        CHECK_THAT(rule.points[q], WithinAbs(s, 1e-15));
        CHECK_THAT(rule.weights[q], WithinAbs(0.5 * wts[i], 1e-15));
        CHECK_THAT(rule.points[6 - q], WithinAbs(1.0 - s, 1e-15));
    }
}
