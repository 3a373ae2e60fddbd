#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "twobody/errors.hpp"
#include "twobody/specfun.hpp"
#include "twobody/spectral.hpp"

using namespace twobody::spectral;
namespace sf = twobody::specfun;

namespace {

double rel(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}

// Plain trapezoid rule in s = log t, with the integrand written directly from
// its definition. Below t0 the integrand is c t^(-1/2) + O(t^(1/2)) with
// c = eta/2 + 1/4 - x, which is added analytically.
double brute_force_f(double x, double eta) {
    auto f = [x, eta](double t) {
        return eta * std::exp(-x * t) / (std::sqrt(-std::expm1(-t)) * -std::expm1(-eta * t)) -
               std::pow(t, -1.5);
    };
    const double lo = -24.0;
    const double hi = 90.0;
    const int nodes = 60000;
    const double h = (hi - lo) / nodes;
    double sum = 0.0;
    for (int i = 0; i <= nodes; ++i) {
        const double s = lo + i * h;
        const double w = (i == 0 || i == nodes) ? 0.5 : 1.0;
        const double t = std::exp(s);
        sum += w * f(t) * t;
    }
    const double c = 0.5 * eta + 0.25 - x;
    return sum * h + 2.0 * c * std::exp(0.5 * lo);
}

double recurrence_rhs(double x, double eta) {
    return eta * sf::kSqrtPi * sf::gamma_ratio_value(x, x + 0.5);
}

}  // namespace

TEST_CASE("defining integral") {
    CHECK(std::abs(f_integral({1.0, 1.0}).value + 2.0) < 1e-12);
    CHECK(std::abs(f_integral({0.5, 1.0}).value) < 1e-12);
    CHECK(f_integral({1.0, 1.0}).route == Route::integral);
    CHECK(rel(f_integral({0.7, 2.0}).value, f_cigar(0.7, 2).value) < 1e-10);
    CHECK(std::abs(1e-6 * f_integral({1e-6, 2.5}).value - 2.5) < 1e-4);
    CHECK(std::abs(1e-6 * f_integral({1e-6, 0.3}).value - 0.3) < 1e-4);
    CHECK_THROWS_AS(f_integral({0.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(f_integral({-0.3, 1.0}), std::domain_error);
    CHECK_THROWS_AS(f_integral({1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("closed forms") {
    for (double x : {0.3, 1.7, -0.6, -2.2}) {
        CHECK(f_cigar(x, 1).value == doctest::Approx(-2.0 * sf::kSqrtPi * sf::gamma_ratio_value(x, x - 0.5)).epsilon(1e-14));
        CHECK(f_pancake(x, 1).value == doctest::Approx(f_spherical(x).value).epsilon(1e-14));
    }
    CHECK(std::abs(f_cigar(2.0, 1).value + 4.0) < 1e-13);
    CHECK(rel(f_cigar(0.7, 3).value, f_integral({0.7, 3.0}).value) < 1e-10);
    CHECK(rel(f_pancake(0.9, 2).value, f_integral({0.9, 0.5}).value) < 1e-10);
    CHECK(rel(f_pancake(0.9, 4).value, f_integral({0.9, 0.25}).value) < 1e-10);
    CHECK_THROWS_AS(f_cigar(-3.0, 2), twobody::PoleError);
    CHECK_THROWS_AS(f_pancake(-0.5, 2), twobody::PoleError);
}

TEST_CASE("recurrence continuation") {
    const double lhs = f_recurrence_extend({0.3, 1.7}).value - f_recurrence_extend({2.0, 1.7}).value;
    CHECK(std::abs(lhs - recurrence_rhs(0.3, 1.7)) < 1e-10);
    CHECK(rel(f_recurrence_extend({-0.4, 1.0}).value, f_spherical(-0.4).value) < 1e-11);

    const SpectralValue deep = f_recurrence_extend({-2.3, 100.0});
    CHECK(deep.route == Route::recurrence);
    CHECK(std::isfinite(deep.value));
    CHECK(rel(deep.value, f_quasi1d({-2.3, 100.0}).value) < 1e-3);
    CHECK_THROWS_AS(f_recurrence_extend({-1.7 - 1e-11, 1.7}), twobody::PoleError);
}

TEST_CASE("dispatcher") {
    const SpectralValue s = f_eval({1.0, 1.0});
    CHECK(s.route == Route::spherical);
    CHECK(std::abs(s.value + 2.0) < 1e-14);
    CHECK(f_eval({0.7, 3.0}).route == Route::cigar);
    CHECK(f_eval({0.7, 0.25}).route == Route::pancake);
    CHECK(f_eval({0.7, 2.5}).route == Route::recurrence);
    CHECK(f_eval({0.7, 1.0 + 1e-9}).route == Route::integral);
    CHECK(f_eval({0.2, 1.0 + 1e-9}).route == Route::recurrence);

    const SpectralValue generic = f_eval({0.5, 2.5});
    CHECK(rel(generic.value, brute_force_f(0.5, 2.5)) < 1e-8);

    const SpectralValue cigar = f_eval({-1.2, 2.0});
    CHECK(cigar.route == Route::cigar);
    CHECK(rel(cigar.value, f_recurrence_extend({-1.2, 2.0}).value) < 1e-11);

    SUBCASE("pole proximity is reported with the pole location") {
        try {
            f_eval({-2.5 + 3e-10, 0.5});
            FAIL("expected a pole");
        } catch (const twobody::PoleError& e) {
            CHECK(e.location() == doctest::Approx(-2.5));
        }
        CHECK_THROWS_AS(f_eval({0.0, 0.37}), twobody::PoleError);
        CHECK_NOTHROW(f_eval({-0.37 + 1e-6, 0.37}));
    }
}

TEST_CASE("route agreement on integer geometries") {
    for (int n : {2, 3, 4}) {
        for (int i = 0; i < 25; ++i) {
            const double x = 0.1 + 4.9 * i / 24.0;
            CAPTURE(n);
            CAPTURE(x);
            CHECK(rel(f_cigar(x, n).value, f_integral({x, static_cast<double>(n)}).value) < 1e-7);
            CHECK(rel(f_pancake(x, n).value, f_integral({x, 1.0 / n}).value) < 1e-7);
        }
    }
}

TEST_CASE("recurrence residual for random arguments") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> ux(-3.0, 4.0);
    std::uniform_real_distribution<double> ueta(0.05, 12.0);
    int tested = 0;
    while (tested < 100) {
        const double eta = ueta(rng);
        const double x = ux(rng);
        if (x <= 0.0 && std::abs(x - nearest_pole(x, eta)) < 1e-3) {
            continue;
        }
        const double lhs = f_eval({x, eta}).value - f_eval({x + eta, eta}).value;
        const double rhs = recurrence_rhs(x, eta);
        CAPTURE(x);
        CAPTURE(eta);
        CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(rhs)));
        ++tested;
    }
}

TEST_CASE("monotone decrease between poles") {
    for (double eta : {0.37, 1.0, 2.0, 5.5}) {
        const PoleGrid grid = pole_grid(eta, -4.0);
        std::vector<double> edges = grid.poles;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const double hi = i == 0 ? 8.0 : edges[i - 1];
            const double lo = edges[i];
            double prev = f_eval({hi - 1e-6, eta}).value;
            for (int s = 1; s <= 40; ++s) {
                const double x = hi - 1e-6 - (hi - lo - 2e-6) * s / 40.0;
                const double v = f_eval({x, eta}).value;
                CAPTURE(eta);
                CAPTURE(x);
                CHECK(v > prev);
                prev = v;
            }
        }
    }
}

TEST_CASE("quasi-1D asymptote") {
    SUBCASE("definition") {
        const double x = 1.0;
        const double eta = 100.0;
        const double v = f_quasi1d({x, eta}).value;
        const double parts = sf::hurwitz_zeta_half(1.0 + x / eta) + std::sqrt(eta) * sf::gamma_ratio_value(x, x + 0.5);
        CHECK(std::abs(v / std::sqrt(sf::kPi * eta) - parts) < 1e-12 * std::abs(parts));
        CHECK(f_quasi1d({x, eta}).route == Route::quasi1d);
    }
    SUBCASE("error is the leading neglected term and falls like eta^(-1/2)") {
        for (double eta : {100.0, 400.0, 1600.0}) {
            for (double x : {-0.3 * eta - 0.25, 1.0, 5.0}) {
                const SpectralValue q = f_quasi1d({x, eta});
                const double err = std::abs(q.value - f_eval({x, eta}).value);
                CAPTURE(eta);
                CAPTURE(x);
                CHECK(err == doctest::Approx(q.est_error).epsilon(0.05));
            }
        }
        CHECK(rel(f_quasi1d({1.0, 100.0}).value, f_eval({1.0, 100.0}).value) < 1e-3);
    }
    SUBCASE("bound-state form") {
        const SpectralValue b = f_quasi1d({50.0, 100.0}, Branch::bound);
        const double exact = f_integral({50.0, 100.0}).value;
        CHECK(std::abs(b.value - exact) <= 1.01 * b.est_error);
        CHECK(rel(f_quasi1d({800.0, 1600.0}, Branch::bound).value, f_integral({800.0, 1600.0}).value) < 1e-3);
    }
    CHECK_THROWS_AS(f_quasi1d({-100.0, 100.0}), std::domain_error);
    CHECK_THROWS_AS(f_quasi1d({1.0, 5.0}), std::domain_error);
    CHECK_NOTHROW(f_quasi1d({1.0, 5.0}, Branch::general, 2.0));
}

TEST_CASE("quasi-2D asymptote") {
    SUBCASE("error is first order in eta") {
        for (double x : {-0.5053, 0.3, 0.5, 2.0}) {
            const double e2 = std::abs(f_quasi2d({x, 0.01}).value - f_eval({x, 0.01}).value);
            const double e3 = std::abs(f_quasi2d({x, 0.001}).value - f_eval({x, 0.001}).value);
            CAPTURE(x);
            CHECK(e2 / e3 == doctest::Approx(10.0).epsilon(0.15));
        }
        CHECK(rel(f_quasi2d({0.5, 0.001}).value, f_eval({0.5, 0.001}).value) < 1e-3);
        CHECK(rel(f_quasi2d({0.5, 1e-4}).value, f_eval({0.5, 1e-4}).value) < 1e-4);
    }
    SUBCASE("bound-state form") {
        const SpectralValue b = f_quasi2d({2.0, 0.01}, Branch::bound);
        CHECK(std::abs(b.value - f_integral({2.0, 0.01}).value) <= b.est_error);
        CHECK(rel(f_quasi2d({2.0, 1e-4}, Branch::bound).value, f_integral({2.0, 1e-4}).value) < 1e-4);
    }
    SUBCASE("digamma pole at x = 0") {
        const double x = 1e-7;
        CHECK(rel(f_quasi2d({x, 0.01}).value, f_eval({x, 0.01}).value) < 1e-3);
        CHECK(f_quasi2d({x, 0.01}).value > 1e4);
    }
    CHECK_THROWS_AS(f_quasi2d({-1.0, 0.01}), std::domain_error);
    CHECK_THROWS_AS(f_quasi2d({1.0, 0.5}), std::domain_error);
}

TEST_CASE("Phi") {
    CHECK(std::abs(phi(0.0) - 1.938) < 1e-3);
    CHECK(std::abs(2.0 * std::exp(-phi(0.0)) - 0.288) < 1e-3);
    CHECK(std::abs(phi(0.0) - 1.93778978374) < 1e-9);
    for (double x : {-0.5, 0.0, 3.0}) {
        CHECK(phi_partial(x, 0) == doctest::Approx(2.0 - std::log1p(x)).epsilon(1e-15));
    }
    // Partial sums approach the limit like N^(-1/2).
    const double d1 = std::abs(phi(2.0) - phi_partial(2.0, 2000));
    const double d2 = std::abs(phi(2.0) - phi_partial(2.0, 8000));
    CHECK(d1 / d2 == doctest::Approx(2.0).epsilon(0.02));
    CHECK(std::abs(phi(2.0) - 4.00413268963) < 1e-9);
    CHECK_THROWS_AS(phi(-1.0), std::domain_error);
}

TEST_CASE("Phi series against the integral form") {
    for (double x : {-0.9995, -0.9947, -0.99, -0.9, -0.5, 0.0, 0.3, 1.0, 2.0, 3.0}) {
        CAPTURE(x);
        const SeriesPhi s = phi_series(x);
        CHECK(s.converged);
        CHECK(s.terms > 0);
        CHECK(std::abs(s.value - phi(x)) < std::max(1e-9, 10.0 * s.error));
    }
    CHECK(std::abs(phi(-0.9) - (-0.10944810764707)) < 1e-10);
    for (double x : {5.0, 20.0, 100.0}) {
        CAPTURE(x);
        // beyond the reach of the series: compare with F at small eta
        const double eta = 1e-4;
        const SpectralArgument arg{x, eta};
        CHECK(std::abs(phi(x) + std::log(eta) + twobody::specfun::digamma(x / eta) + f_recurrence_extend(arg).value) < 50.0 * eta);
    }
}

TEST_CASE("pole grid") {
    CHECK(pole_grid(1.0, -3.5).poles == std::vector<double>{0.0, -1.0, -2.0, -3.0});
    CHECK(pole_grid(2.0, -3.5).poles == std::vector<double>{0.0, -1.0, -2.0, -3.0});
    CHECK(pole_grid(0.5, -1.6).poles == std::vector<double>{0.0, -0.5, -1.0, -1.5});
    const PoleGrid g = pole_grid(0.37, -2.0);
    for (std::size_t i = 1; i < g.poles.size(); ++i) {
        CHECK(g.poles[i] < g.poles[i - 1]);
    }
    CHECK(g.poles.size() == 10);
    CHECK(nearest_pole(-0.36, 0.37) == doctest::Approx(-0.37));
    CHECK(nearest_pole(-1.1, 0.37) == doctest::Approx(-1.11));
}
