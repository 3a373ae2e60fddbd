#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "twobody/numerics.hpp"

using namespace twobody::numerics;

TEST_CASE("finite integrals") {
    const auto r = integrate([](double x) { return std::exp(-x) * std::cos(5.0 * x); }, 0.0, 3.0);
    const double want = (1.0 - std::exp(-3.0) * (std::cos(15.0) - 5.0 * std::sin(15.0))) / 26.0;
    CHECK(r.converged);
    CHECK(std::abs(r.value - want) < 1e-12);
    CHECK(r.abs_error < 1e-10);

    const auto s = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
    CHECK(std::abs(s.value - 2.0) < 1e-9);

    const auto rev = integrate([](double x) { return x * x; }, 2.0, 0.0);
    CHECK(std::abs(rev.value + 8.0 / 3.0) < 1e-13);
}

TEST_CASE("semi-infinite integrals") {
    SUBCASE("endpoint singularity and exponential decay") {
        // integral_0^inf t^-1/2 e^-t dt = sqrt(pi)
        const auto r = integrate_semi_infinite([](double t) { return std::exp(-t) / std::sqrt(t); });
        CHECK(r.converged);
        CHECK(std::abs(r.value - std::sqrt(std::numbers::pi)) < 1e-11);
    }
    SUBCASE("algebraic t^-3/2 tail") {
        // integral_0^inf (1+t)^-3/2 dt = 2
        const auto r = integrate_semi_infinite([](double t) { return std::pow(1.0 + t, -1.5); });
        CHECK(std::abs(r.value - 2.0) < 1e-11);
    }
    SUBCASE("narrow peak located by a hint") {
        QuadratureSpec spec;
        spec.rel_tol = 1e-12;
        const double hint[] = {400.0};
        const auto r = integrate_semi_infinite(
            [](double t) { return std::exp(-0.5 * (t - 400.0) * (t - 400.0)); }, spec, hint);
        CHECK(std::abs(r.value - std::sqrt(2.0 * std::numbers::pi)) < 1e-10);
    }
    SUBCASE("split point does not change the answer") {
        auto f = [](double t) { return std::exp(-2.0 * t) * std::pow(t, -0.5); };
        for (double sp : {0.1, 1.0, 8.0}) {
            QuadratureSpec spec;
            spec.split_point = sp;
            CHECK(std::abs(integrate_semi_infinite(f, spec).value - std::sqrt(std::numbers::pi / 2.0)) < 1e-11);
        }
    }
    SUBCASE("invalid specs") {
        QuadratureSpec spec;
        spec.split_point = -1.0;
        CHECK_THROWS_AS(integrate_semi_infinite([](double) { return 0.0; }, spec), std::invalid_argument);
        spec = {};
        spec.abs_tol = 0.0;
        spec.rel_tol = 0.0;
        CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    }
}

TEST_CASE("bracketed root finding") {
    const auto root = find_root_bracketed([](double x) { return std::cos(x) - x; },
                                          RootBracket::evaluate([](double x) { return std::cos(x) - x; }, 0.0, 1.0),
                                          1e-15);
    CHECK(std::abs(root - 0.739085133215160641655312087673873) < 1e-14);

    SUBCASE("never evaluates the bracket ends") {
        // Pole-like behaviour at both ends: tan on (-pi/2, pi/2) shifted.
        auto f = [](double x) {
            if (x <= 0.0 || x >= 1.0) {
                throw std::logic_error("end evaluated");
            }
            return 1.0 / x - 1.0 / (1.0 - x) - 0.3;
        };
        const double r = find_root_bracketed(f, RootBracket::from_signs(0.0, 1.0, +1, -1), 1e-14);
        CHECK(std::abs(f(r)) < 1e-11);
    }
    CHECK_THROWS_AS(RootBracket::from_signs(0.0, 1.0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(RootBracket::from_signs(1.0, 0.0, 1, -1), std::invalid_argument);
}

TEST_CASE("series summation") {
    SUBCASE("geometric") {
        const auto r = sum_series([](long k) { return std::pow(0.5, static_cast<double>(k)); });
        CHECK(r.converged);
        CHECK(std::abs(r.value - 2.0) < 1e-12);
    }
    SUBCASE("algebraic decay with Richardson extrapolation") {
        SeriesOptions opt;
        opt.first_index = 1;
        opt.decay_exponent = 1.5;
        opt.abs_tol = 1e-10;
        const auto r = sum_series([](long k) { return std::pow(static_cast<double>(k), -1.5); }, opt);
        CHECK(r.converged);
        CHECK(std::abs(r.value - std::riemann_zeta(1.5)) < 1e-9);
    }
    SUBCASE("decay exponent estimated from the terms") {
        SeriesOptions opt;
        opt.first_index = 1;
        opt.abs_tol = 1e-9;
        const auto r = sum_series([](long k) { return 1.0 / (static_cast<double>(k) * k); }, opt);
        CHECK(std::abs(r.value - std::numbers::pi * std::numbers::pi / 6.0) < 1e-8);
    }
    SUBCASE("alternating") {
        SeriesOptions opt;
        opt.first_index = 1;
        const auto r = sum_series([](long k) { return (k % 2 ? 1.0 : -1.0) / std::pow(static_cast<double>(k), 3.0); }, opt);
        CHECK(std::abs(r.value - 0.75 * std::riemann_zeta(3.0)) < 1e-10);
    }
    CHECK_THROWS_AS(sum_series([](long) { return 0.0; }, SeriesOptions{0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("Richardson limit") {
    std::vector<double> samples;
    for (int k = 0; k < 6; ++k) {
        const double h = 0.1 / std::ldexp(1.0, k);
        samples.push_back(2.0 + 0.3 * h - 1.1 * h * h + 0.7 * h * h * h);
    }
    const auto e = twobody::numerics::richardson_limit(samples);
    CHECK(e.value == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(e.error < 1e-12);
    std::vector<double> quadratic;
    for (int k = 0; k < 5; ++k) {
        const double h = 0.2 / std::ldexp(1.0, k);
        quadratic.push_back(std::cos(h));
    }
    CHECK(twobody::numerics::richardson_limit(quadratic, 2.0).value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(twobody::numerics::richardson_limit(std::vector<double>{}), std::invalid_argument);
}
