#include "briesz/specfun.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace briesz;

TEST_CASE("gamma: integer and half-integer anchors") {
    CHECK(specfun::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(specfun::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-14));
    // Frozen from the quadrature oracle (= sqrt(pi)).
    CHECK(specfun::gamma(0.5) == doctest::Approx(1.7724538509055160273).epsilon(1e-13));
}

TEST_CASE("gamma: quadrature oracle over the working range") {
    for (double x : {0.2, 0.5, 1.3, 2.7, 4.1, 7.9, 12.4}) {
        const double ref = static_cast<double>(oracles::gamma_quadrature(x));
        CHECK(specfun::gamma(x) == doctest::Approx(ref).epsilon(2e-11));
    }
}

TEST_CASE("gamma: recurrence Gamma(x+1) = x Gamma(x) on (0, 40]") {
    for (int i = 1; i <= 160; ++i) {
        const double x = 0.25 * i;
        const double lhs = specfun::gamma(x + 1.0);
        const double rhs = x * specfun::gamma(x);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("gamma: domain errors") {
    CHECK_THROWS_AS(specfun::gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(specfun::gamma(-1.5), std::domain_error);
}

TEST_CASE("bessel_j: anchors") {
    CHECK(specfun::bessel_j(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    // Frozen from the series oracle.
    const double j11 = static_cast<double>(oracles::bessel_series(1.0L, 1.0L));
    CHECK(j11 == doctest::Approx(0.44005058574493351596).epsilon(1e-15));
    CHECK(specfun::bessel_j(1.0, 1.0) == doctest::Approx(j11).epsilon(1e-13));
    // Closed form J_{1/2}(x) = sqrt(2/(pi x)) sin x at x = pi/2.
    CHECK(specfun::bessel_j(0.5, M_PI / 2.0) == doctest::Approx(2.0 / M_PI).epsilon(1e-12));
}

TEST_CASE("bessel_j: half-integer closed form across both branches") {
    for (double x : {0.3, 1.0, 4.0, 12.0, 19.5, 20.5, 50.0, 250.0, 1000.0}) {
        const double ref = std::sqrt(2.0 / (M_PI * x)) * std::sin(x);
        CHECK(std::abs(specfun::bessel_j(0.5, x) - ref) <= 1e-10);
    }
}

TEST_CASE("bessel_j: series oracle below crossover") {
    for (double nu : {0.0, 0.5, 1.0, 2.5, 7.0}) {
        for (double x : {0.1, 1.0, 5.0, 12.0, 19.9}) {
            const double ref = static_cast<double>(oracles::bessel_series(nu, x));
            CHECK(std::abs(specfun::bessel_j(nu, x) - ref) <= 1e-10);
        }
    }
}

TEST_CASE("bessel_j: |J_nu| <= 1 on a log-spaced grid") {
    for (double nu : {0.0, 0.5, 1.0, 3.0, 6.5, 10.0}) {
        for (int k = 0; k <= 40; ++k) {
            const double x = 1e-2 * std::pow(1e5, k / 40.0);
            CHECK(std::abs(specfun::bessel_j(nu, x)) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("bessel_j: three-term recurrence") {
    for (double nu : {0.5, 1.0, 2.5, 5.0, 10.0}) {
        for (int k = 0; k <= 30; ++k) {
            const double x = 0.1 * std::pow(1000.0, k / 30.0);
            const double lhs = specfun::bessel_j(nu - 0.5, x) + specfun::bessel_j(nu + 1.5, x);
            // shifted so all orders stay >= 0: identity at order nu + 1/2
            const double mid = specfun::bessel_j(nu + 0.5, x);
            const double rhs = 2.0 * (nu + 0.5) / x * mid;
            const double scale =
                std::max({std::abs(lhs), std::abs(rhs), 1e-4});
            CHECK(std::abs(lhs - rhs) / scale <= 1e-8);
        }
    }
}

TEST_CASE("bessel_j: branch agreement around the crossover") {
    specfun::SpecFunConfig series_far;
    series_far.crossover_x = 30.0;  // force series branch
    specfun::SpecFunConfig asym_near;
    asym_near.crossover_x = 15.0;  // force asymptotic branch
    for (double nu : {0.0, 0.5, 1.5, 3.5, 8.0}) {
        for (double x = 16.0; x <= 28.0; x += 1.0) {
            const double a = specfun::bessel_j(nu, x, series_far);
            const double b = specfun::bessel_j(nu, x, asym_near);
            CHECK(std::abs(a - b) <= 1e-8);
        }
    }
}

TEST_CASE("bessel_j: domain errors") {
    CHECK_THROWS_AS(specfun::bessel_j(-0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(specfun::bessel_j(1.0, -1.0), std::domain_error);
}

TEST_CASE("bessel_ratio: limits at zero") {
    CHECK(specfun::bessel_ratio(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(specfun::bessel_ratio(1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
    // J_{1/2}(pi) = 0 because sin(pi) = 0.
    CHECK(std::abs(specfun::bessel_ratio(0.5, M_PI)) <= 1e-14);
}

TEST_CASE("bessel_ratio: continuous across the branch handoff") {
    // Evaluate both branches at the default switch point itself.
    const double x = specfun::SpecFunConfig{}.crossover_x;
    specfun::SpecFunConfig series_branch;
    series_branch.crossover_x = x + 1.0;
    specfun::SpecFunConfig asym_branch;
    asym_branch.crossover_x = x - 1.0;
    for (double nu : {0.0, 0.5, 1.5, 3.5}) {
        const double below = specfun::bessel_ratio(nu, x, series_branch);
        const double above = specfun::bessel_ratio(nu, x, asym_branch);
        const double scale = std::max(std::abs(below), 1e-30);
        CHECK(std::abs(above - below) / scale <= 1e-9);
    }
}

TEST_CASE("bessel_ratio: matches bessel_j / x^nu") {
    for (double nu : {0.5, 1.0, 2.5}) {
        for (double x : {0.5, 3.0, 25.0}) {
            const double ref = specfun::bessel_j(nu, x) / std::pow(x, nu);
            CHECK(specfun::bessel_ratio(nu, x) == doctest::Approx(ref).epsilon(1e-12));
        }
    }
}

TEST_CASE("bessel_j_zero: brackets sign changes") {
    for (double nu : {0.0, 0.5, 1.5, 3.5}) {
        double prev = 0.0;
        for (int m = 1; m <= 12; ++m) {
            const double z = specfun::bessel_j_zero(nu, m);
            CHECK(z > prev);
            CHECK(std::abs(specfun::bessel_j(nu, z)) <= 1e-9);
            prev = z;
        }
    }
    // j_{0,1} = 2.404825557695773 (classical value)
    CHECK(specfun::bessel_j_zero(0.0, 1) == doctest::Approx(2.404825557695773).epsilon(1e-10));
}
