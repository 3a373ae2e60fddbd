#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "twobody/errors.hpp"
#include "twobody/specfun.hpp"
#include "twobody/solver.hpp"
#include "twobody/spectral.hpp"

using namespace twobody::solver;
namespace sp = twobody::spectral;
namespace sf = twobody::specfun;

namespace {

const double kSqrt2Pi = std::sqrt(2.0 * sf::kPi);
const double kInf = std::numeric_limits<double>::infinity();

double rel(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}

}  // namespace

TEST_CASE("ground energy offset") {
    CHECK(ground_energy_offset({1.0}) == 1.5);
    CHECK(ground_energy_offset({100.0}) == 100.5);
    CHECK(ground_energy_offset({0.01}) == doctest::Approx(0.51).epsilon(1e-15));
    CHECK_THROWS_AS(ground_energy_offset({0.0}), std::invalid_argument);
}

TEST_CASE("spherical trap spectrum") {
    const TrapGeometry g{1.0};
    SUBCASE("unitarity") {
        for (double a : {kInf, -kInf}) {
            const auto levels = eigenenergies(InteractionModel::fixed_length(a), g, {0.0, 20.0}, 5);
            REQUIRE(levels.size() == 5);
            for (int n = 0; n < 5; ++n) {
                CHECK(std::abs(levels[n].E - (0.5 + 2.0 * n)) < 1e-12);
                CHECK(levels[n].branch_index == n);
            }
        }
    }
    SUBCASE("weak repulsion gives a deep level near E0 - 1/a^2") {
        for (double a : {0.1, 0.03}) {
            const EnergyLevel b = bound_state_exact(InteractionModel::fixed_length(a), g);
            CHECK((1.5 - b.E) * a * a == doctest::Approx(1.0).epsilon(3.0 * a * a + 1e-3));
        }
    }
    SUBCASE("weak coupling: excited levels sit next to the poles") {
        for (double inv_a : {1e4, -1e4}) {
            const auto levels = eigenenergies(InteractionModel::fixed_inverse(inv_a), g, {1.0, 12.0}, 5);
            for (const auto& l : levels) {
                const double pole_e = 1.5 + 2.0 * std::round((l.E - 1.5) / 2.0);
                CHECK(std::abs(l.E - pole_e) < 1e-3);
            }
        }
        const auto free_levels = eigenenergies(InteractionModel::fixed_length(0.0), {2.5}, {0.0, 12.0}, 10);
        for (const auto& l : free_levels) {
            CHECK(l.noninteracting);
        }
        CHECK(free_levels[0].E == 3.0);
        CHECK(free_levels[1].E == 5.0);
        CHECK(free_levels[2].E == 7.0);
        CHECK(free_levels[3].E == 8.0);
    }
    SUBCASE("the a = 1 level below E0 matches the closed-form root") {
        const EnergyLevel b = bound_state_exact(InteractionModel::fixed_length(1.0), g);
        CHECK(std::abs(sp::f_spherical(b.x).value + kSqrt2Pi) < 1e-10);
        CHECK(b.E < 1.5);
        CHECK(b.E == doctest::Approx(1.5 - 2.0 * b.x).epsilon(1e-15));
    }
    SUBCASE("attractive a = -0.1 still has a level below E0") {
        // F runs from +inf at x -> 0+ to -inf, so a sub-E0 root exists for any finite a.
        const EnergyLevel b = bound_state_exact(InteractionModel::fixed_length(-0.1), g);
        CHECK(b.E < 1.5);
        CHECK(std::abs(residual(InteractionModel::fixed_length(-0.1), g, b.E)) < 1e-8);
    }
}

TEST_CASE("level invariants") {
    for (double eta : {0.37, 1.0, 2.0, 5.0}) {
        const TrapGeometry g{eta};
        for (double inv_a : {-3.0, -0.5, 0.0, 0.7, 2.0}) {
            const auto model = InteractionModel::fixed_inverse(inv_a);
            const auto levels = eigenenergies(model, g, default_window(g, 8), 8);
            CHECK(levels.size() == 8);
            for (std::size_t i = 0; i < levels.size(); ++i) {
                CAPTURE(eta);
                CAPTURE(inv_a);
                CHECK(std::abs(residual(model, g, levels[i].E)) < 1e-8);
                CHECK(levels[i].branch_index == static_cast<int>(i));
                CHECK(levels[i].x > levels[i].bracket.lo);
                CHECK(levels[i].x < levels[i].bracket.hi);
                if (i > 0) {
                    CHECK(levels[i].E > levels[i - 1].E);
                }
            }
        }
        SUBCASE("branches move monotonically with 1/a") {
            std::vector<double> prev;
            for (double inv_a = -3.0; inv_a <= 3.0; inv_a += 0.25) {
                const auto levels = eigenenergies(InteractionModel::fixed_inverse(inv_a), g, default_window(g, 5), 5);
                REQUIRE(levels.size() == 5);
                if (!prev.empty()) {
                    for (std::size_t i = 0; i < 5; ++i) {
                        CHECK(levels[i].E < prev[i]);
                    }
                }
                prev.clear();
                for (const auto& l : levels) {
                    prev.push_back(l.E);
                }
            }
        }
    }
}

TEST_CASE("renormalized low-dimensional lengths") {
    const TrapGeometry cigar{100.0};
    CHECK(a1d_effective(0.0, cigar) == doctest::Approx(0.103270).epsilon(1e-5));
    CHECK(a1d_effective(1.0, cigar) == doctest::Approx(0.093270).epsilon(1e-5));
    CHECK(a1d_effective(-1.0, cigar) > a1d_effective(0.0, cigar));
    CHECK(a2d_effective(0.0) == doctest::Approx(std::exp(0.5 * sp::phi(0.0)) / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(std::abs(a2d_effective(0.0) - 1.8635) < 5e-4);
    CHECK(a2d_effective(1.0) < a2d_effective(0.5));
    CHECK(std::abs(2.0 * std::exp(-sp::phi(0.0)) - 0.288) < 1e-3);
    CHECK_THROWS_AS(a1d_effective(kInf, cigar), std::domain_error);
}

TEST_CASE("reference low-dimensional spectra") {
    SUBCASE("1D at 1/a_1D = 0 sits on the zeros of the gamma ratio") {
        const TrapGeometry g{100.0};
        const auto e = spectrum_1d_reference(0.0, g, {100.0, 110.0});
        REQUIRE(e.size() == 5);
        for (int n = 0; n < 5; ++n) {
            CHECK(std::abs(e[n] - (100.5 + 2.0 * n)) < 1e-10);
        }
    }
    SUBCASE("quasi-1D overlay") {
        const TrapGeometry g{100.0};
        for (double inv_a : {-1.0, 1.0}) {
            const auto exact = eigenenergies(InteractionModel::fixed_inverse(inv_a), g, {100.5, 140.5}, 40);
            const auto ref = spectrum_1d_reference(1.0 / a1d_effective(inv_a, g), g, {100.5, 140.5});
            REQUIRE(exact.size() == ref.size());
            for (std::size_t i = 0; i < ref.size(); ++i) {
                CHECK(rel(ref[i], exact[i].E) < 1e-3);
            }
        }
    }
    SUBCASE("quasi-2D overlay") {
        const TrapGeometry g{0.01};
        for (double inv_a : {-1.0, 1.0}) {
            const auto exact = eigenenergies(InteractionModel::fixed_inverse(inv_a), g, {0.51, 0.91}, 40);
            const auto ref = spectrum_2d_reference(a2d_effective(inv_a), g, {0.51, 0.91});
            REQUIRE(exact.size() == ref.size());
            for (std::size_t i = 0; i < ref.size(); ++i) {
                CHECK(rel(ref[i], exact[i].E) < 1e-3);
            }
        }
    }
    SUBCASE("2D levels approach E0 + 2 k eta as a_2D -> 0") {
        const TrapGeometry g{0.01};
        const auto e = spectrum_2d_reference(1e-60, g, {0.515, 0.6});
        for (double v : e) {
            const double k = std::round((v - 0.51) / 0.02);
            CHECK(std::abs(v - (0.51 + 0.02 * k)) < 2e-4);
        }
    }
    SUBCASE("reference bound branches differ from the exact ones") {
        const TrapGeometry g{100.0};
        const double exact = bound_state_exact(InteractionModel::fixed_inverse(1.0), g).E;
        const auto ref = spectrum_1d_reference(1.0 / a1d_effective(1.0, g), g, {-400.0, 100.5});
        REQUIRE(ref.size() == 1);
        CHECK(rel(ref[0], exact) > 0.1);
    }
}

TEST_CASE("asymptotic bound states") {
    SUBCASE("quasi-1D") {
        const TrapGeometry g{100.0};
        const auto u = bound_state_quasi1d(0.0, g);
        CHECK(u.in_regime);
        CHECK((100.5 - u.E) / 200.0 == doctest::Approx(0.302721).epsilon(2e-6));
        const double exact = bound_state_exact(InteractionModel::fixed_inverse(0.0), g).E;
        CHECK(rel(100.5 - u.E, 100.5 - exact) < 1e-2);
        const double e1 = bound_state_exact(InteractionModel::fixed_inverse(1.0), g).E;
        CHECK(rel(100.5 - bound_state_quasi1d(1.0, g).E, 100.5 - e1) < 1e-2);
        const double a = 0.02;
        CHECK((100.5 - bound_state_quasi1d(1.0 / a, g).E) * a * a == doctest::Approx(1.0).epsilon(0.02));
        CHECK_FALSE(bound_state_quasi1d(0.0, {3.0}).in_regime);
    }
    SUBCASE("quasi-2D") {
        const TrapGeometry g{0.01};
        for (double a : {-0.3, -0.25}) {
            const double b = 0.51 - bound_state_quasi2d(1.0 / a, g).E;
            CHECK(b == doctest::Approx(2.0 * std::exp(-sp::phi(0.0)) * std::exp(kSqrt2Pi / a)).epsilon(1e-3));
        }
        const double exact = bound_state_exact(InteractionModel::fixed_inverse(1.0), g).E;
        CHECK(rel(0.51 - bound_state_quasi2d(1.0, g).E, 0.51 - exact) < 1e-2);
        const double xi = 0.5 * (0.51 - bound_state_quasi2d(0.0, g).E);
        CHECK(std::abs(sp::phi(xi) + std::log(xi)) < 1e-10);
        CHECK_FALSE(bound_state_quasi2d(0.0, {0.5}).in_regime);
    }
}

TEST_CASE("resonance model") {
    const ResonanceParams background{1.3, 0.0, 2.0};
    for (double e : {0.1, 1.0, 7.0}) {
        CHECK(resonance_a_eff(e, background) == doctest::Approx(1.3).epsilon(1e-15));
    }
    SUBCASE("matches -tan(delta0)/k for E > 0") {
        const ResonanceParams p{0.8, 0.3, 2.5};
        for (double e : {0.2, 1.1, 3.7, 9.0}) {
            const double k = std::sqrt(e);
            const double delta = -std::atan(k * p.a_bg) - std::atan(p.gamma * k / (e - p.e_res));
            CHECK(resonance_a_eff(e, p) == doctest::Approx(-std::tan(delta) / k).epsilon(1e-12));
        }
    }
    SUBCASE("zero-energy limit and divergence") {
        const ResonanceParams p{0.8, 0.3, 2.5};
        CHECK(resonance_a_eff(1e-12, p) == doctest::Approx(p.a_bg - p.gamma / p.e_res).epsilon(1e-10));
        CHECK(resonance_a_eff(-0.7, p) == doctest::Approx((0.8 * (-3.2) + 0.3) / (-3.2 + 0.7 * 0.8 * 0.3)).epsilon(1e-14));
        const double e_div = p.e_res / (1.0 - p.a_bg * p.gamma);
        CHECK(std::abs(resonance_a_eff(e_div * (1.0 + 1e-9), p)) > 1e6);
        CHECK_THROWS_AS(resonance_a_eff(5.0, {2.0, 0.25, 2.5}), twobody::PoleError);
        const ResonanceParams narrow{0.0, 0.3, 2.5};
        CHECK_THROWS_AS(resonance_a_eff(2.5, narrow), twobody::PoleError);
        CHECK(std::abs(resonance_inverse_a_eff(e_div, p)) < 1e-15);
    }
}

TEST_CASE("self-consistent solve") {
    SUBCASE("constant a_eff reproduces the fixed-a levels") {
        for (double eta : {1.0, 2.5, 0.3}) {
            const TrapGeometry g{eta};
            const auto w = default_window(g, 6);
            for (double a : {1.0, -2.0}) {
                const auto fixed = eigenenergies(InteractionModel::fixed_length(a), g, w, 6);
                const auto sc = solve_self_consistent(InteractionModel::energy_dependent([a](double) { return a; }), g, w, 6);
                REQUIRE(sc.size() == fixed.size());
                for (std::size_t i = 0; i < sc.size(); ++i) {
                    CHECK(std::abs(sc[i].E - fixed[i].E) < 1e-10);
                }
            }
        }
    }
    SUBCASE("background-only resonance model equals fixed a_bg") {
        const TrapGeometry g{1.0};
        const auto w = default_window(g, 5);
        const auto fixed = eigenenergies(InteractionModel::fixed_length(1.0), g, w, 5);
        const auto sc = solve_self_consistent(InteractionModel::resonance({1.0, 0.0, 3.3}), g, w, 5);
        REQUIRE(sc.size() == fixed.size());
        for (std::size_t i = 0; i < sc.size(); ++i) {
            CHECK(std::abs(sc[i].E - fixed[i].E) < 1e-10);
        }
    }
    SUBCASE("narrow resonance: levels shift linearly in gamma and satisfy the equation") {
        const TrapGeometry g{1.0};
        const auto w = default_window(g, 5);
        const auto base = eigenenergies(InteractionModel::fixed_length(1.0), g, w, 5);
        std::vector<double> shifts;
        for (double gamma : {1e-3, 5e-4, 2.5e-4}) {
            const auto model = InteractionModel::resonance({1.0, gamma, 3.3});
            const auto levels = solve_self_consistent(model, g, w, 8);
            double worst = 0.0;
            for (const auto& b : base) {
                double nearest = kInf;
                for (const auto& l : levels) {
                    nearest = std::min(nearest, std::abs(l.E - b.E));
                }
                worst = std::max(worst, nearest);
            }
            for (const auto& l : levels) {
                CHECK(std::abs(residual(model, g, l.E)) < 1e-8);
            }
            shifts.push_back(worst);
        }
        CHECK(shifts[0] / shifts[1] == doctest::Approx(2.0).epsilon(0.02));
        CHECK(shifts[1] / shifts[2] == doctest::Approx(2.0).epsilon(0.02));
    }
    SUBCASE("the resonance adds a level") {
        const TrapGeometry g{1.0};
        const EnergyWindow w{0.0, 6.0};
        const auto base = eigenenergies(InteractionModel::fixed_length(1.0), g, w, 10);
        const auto levels = solve_self_consistent(InteractionModel::resonance({1.0, 0.05, 3.3}), g, w, 10);
        CHECK(levels.size() == base.size() + 1);
    }
}
