#include "twobody/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "twobody/solver.hpp"
#include "twobody/specfun.hpp"
#include "twobody/spectral.hpp"
#include "twobody/wavefn.hpp"

namespace twobody::acceptance {

namespace {

namespace sp = spectral;
namespace sv = solver;
namespace wf = wavefn;

constexpr double kPi = specfun::kPi;
constexpr double kSqrtPi = specfun::kSqrtPi;

struct Measurement {
    double measured = 0.0;
    std::string detail;
};

double rel(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
        v[i] = lo + (hi - lo) * i / (n - 1);
    }
    return v;
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, format, a, b, c);
    return buf;
}

// Several sub-checks with their own thresholds are folded into one number:
// the largest error-to-threshold ratio, passing below 1.
struct Parts {
    double worst = 0.0;
    std::string detail;

    void add(const std::string& name, double error, double threshold) {
        worst = std::max(worst, std::isnan(error) ? INFINITY : error / threshold);
        if (!detail.empty()) {
            detail += "; ";
        }
        detail += name + fmt(" %.3g (< %.3g)", error, threshold);
    }

    Measurement done() const { return {worst, detail}; }
};

Measurement spherical_closed_form() {
    double worst = 0.0;
    double at = 0.0;
    for (double x : linspace(0.1, 10.0, 40)) {
        const double want = -2.0 * kSqrtPi * std::tgamma(x) / std::tgamma(x - 0.5);
        const double e = rel(sp::f_integral({x, 1.0}).value, want);
        if (e > worst) {
            worst = e;
            at = x;
        }
    }
    return {worst, fmt("worst at x = %.4g", at)};
}

Measurement closed_forms() {
    double worst = 0.0;
    std::string where;
    for (int n : {2, 3, 4}) {
        for (double x : linspace(0.1, 5.0, 50)) {
            const double ec = rel(sp::f_cigar(x, n).value, sp::f_integral({x, double(n)}).value);
            const double ep = rel(sp::f_pancake(x, n).value, sp::f_integral({x, 1.0 / n}).value);
            if (ec > worst) {
                worst = ec;
                where = fmt("worst: eta = %g, x = %.4g", n, x);
            }
            if (ep > worst) {
                worst = ep;
                where = fmt("worst: eta = 1/%g, x = %.4g", n, x);
            }
        }
    }
    return {worst, where};
}

Measurement recurrence_residual() {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> ux(0.05, 4.0);
    std::uniform_real_distribution<double> ulog_eta(std::log(0.1), std::log(10.0));
    double worst = 0.0;
    std::string where;
    for (int i = 0; i < 100; ++i) {
        const double x = ux(rng);
        const double eta = std::exp(ulog_eta(rng));
        const double lhs = sp::f_integral({x, eta}).value - sp::f_integral({x + eta, eta}).value;
        const double rhs = eta * kSqrtPi * std::exp(std::lgamma(x) - std::lgamma(x + 0.5));
        const double e = std::abs(lhs - rhs);
        if (e > worst) {
            worst = e;
            where = fmt("worst: x = %.4g, eta = %.4g", x, eta);
        }
    }
    return {worst, where};
}

Measurement phi_constant(const RunOptions& options) {
    const double phi0 = options.phi_terms ? sp::phi_partial(0.0, *options.phi_terms) : sp::phi(0.0);
    const double prefactor = 2.0 * std::exp(-phi0);
    Parts parts;
    parts.add(fmt("Phi(0) = %.6f", phi0), std::abs(phi0 - 1.938), 1e-3);
    parts.add(fmt("2 exp(-Phi(0)) = %.6f", prefactor), std::abs(prefactor - 0.288), 1e-3);
    if (options.phi_terms) {
        parts.detail += fmt("; series truncated after %g terms", double(*options.phi_terms));
    }
    return parts.done();
}

Measurement unitarity_spectrum() {
    const sv::TrapGeometry g{1.0};
    const auto levels = sv::eigenenergies(sv::InteractionModel::fixed_inverse(0.0), g, sv::default_window(g, 5), 5);
    if (levels.size() != 5) {
        return {INFINITY, fmt("found %g levels", double(levels.size()))};
    }
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        worst = std::max(worst, std::abs(levels[i].E - (0.5 + 2.0 * i)));
    }
    return {worst, fmt("levels %.12g .. %.12g", levels.front().E, levels.back().E)};
}

Measurement asymptote(const std::vector<double>& xs, double eta,
                      const std::function<sp::SpectralValue(const sp::SpectralArgument&)>& approx) {
    double worst = 0.0;
    double at = 0.0;
    int over = 0;
    for (double x : xs) {
        const double e = rel(approx({x, eta}).value, sp::f_eval({x, eta}).value);
        over += e >= 1e-3;
        if (e > worst) {
            worst = e;
            at = x;
        }
    }
    return {worst, fmt("worst at x = %.4g; %g of %g points at or above 1e-3", at, over, double(xs.size()))};
}

Measurement quasi1d_asymptote() {
    std::vector<double> xs;
    for (int i = 0; i < 210; ++i) {
        xs.push_back(-100.0 + 0.5 * (i + 0.5));
    }
    return asymptote(xs, 100.0, [](const sp::SpectralArgument& a) { return sp::f_quasi1d(a); });
}

Measurement quasi2d_asymptote() {
    std::vector<double> xs;
    for (int i = 0; i < 100; ++i) {
        xs.push_back(-0.9947 + 0.06 * i);
    }
    return asymptote(xs, 0.01, [](const sp::SpectralArgument& a) { return sp::f_quasi2d(a); });
}

Measurement bound_asymptotics() {
    double worst = 0.0;
    std::string detail;
    for (double eta : {100.0, 0.01}) {
        const sv::TrapGeometry g{eta};
        const double e0 = sv::ground_energy_offset(g);
        for (double inv_a : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
            const double exact = sv::bound_state_exact(sv::InteractionModel::fixed_inverse(inv_a), g).E;
            const double approx = eta > 1.0 ? sv::bound_state_quasi1d(inv_a, g).E : sv::bound_state_quasi2d(inv_a, g).E;
            const double e = rel(e0 - approx, e0 - exact);
            worst = std::max(worst, e);
            if (e >= 1e-2) {
                detail += fmt("eta = %g, 1/a = %g: %.3g; ", eta, inv_a, e);
            }
        }
    }
    return {worst, detail.empty() ? "all within threshold" : detail.substr(0, detail.size() - 2)};
}

Measurement overlays() {
    double worst = 0.0;
    std::string detail;
    struct Case {
        double eta;
        double width;
    };
    for (const Case c : {Case{100.0, 40.0}, Case{0.01, 0.4}}) {
        const sv::TrapGeometry g{c.eta};
        const double e0 = sv::ground_energy_offset(g);
        const sv::EnergyWindow w{e0, e0 + c.width};
        for (double inv_a : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
            const auto exact = sv::eigenenergies(sv::InteractionModel::fixed_inverse(inv_a), g, w, 1000);
            const auto ref = c.eta > 1.0 ? sv::spectrum_1d_reference(1.0 / sv::a1d_effective(inv_a, g), g, w)
                                         : sv::spectrum_2d_reference(sv::a2d_effective(inv_a), g, w);
            if (exact.size() != ref.size()) {
                worst = INFINITY;
                detail += fmt("eta = %g, 1/a = %g: level counts differ; ", c.eta, inv_a);
                continue;
            }
            for (std::size_t i = 0; i < ref.size(); ++i) {
                worst = std::max(worst, rel(ref[i], exact[i].E));
            }
        }
        detail += fmt("eta = %g window [E0, E0 + %g]; ", c.eta, c.width);
    }
    return {worst, detail.substr(0, detail.size() - 2)};
}

Measurement route_agreement() {
    const wf::SeriesTruncation trunc{20000, 1e-12};
    const std::vector<double> grid{0.4, 0.8, 1.2, 1.6, 2.0};
    double worst = 0.0;
    std::string where;
    struct Case {
        double eta;
        double inv_a;
    };
    for (const Case c : {Case{0.5, 1.0}, Case{2.0, -0.5}, Case{1.0, 0.0}}) {
        const sv::TrapGeometry g{c.eta};
        const double E = sv::bound_state_exact(sv::InteractionModel::fixed_inverse(c.inv_a), g).E;
        for (double rho : grid) {
            for (double z : grid) {
                const double vi = wf::psi_integral(rho, z, E, g);
                const double vr = wf::psi_series_radial(rho, z, E, g, trunc);
                const double va = wf::psi_series_axial(rho, z, E, g, trunc);
                const double e = std::max({rel(vr, vi), rel(va, vi), rel(va, vr)});
                if (e > worst) {
                    worst = e;
                    where = fmt("worst: eta = %g, rho = %g, z = %g", c.eta, rho, z);
                }
            }
        }
    }
    return {worst, where};
}

Measurement contact_singularity() {
    Parts parts;
    const sv::TrapGeometry g{2.0};
    const double eb = sv::bound_state_exact(sv::InteractionModel::fixed_length(-2.0), g).E;
    double amp = 0.0;
    for (double theta : {0.0, kPi / 4.0, kPi / 2.0}) {
        amp = std::max(amp, std::abs(wf::contact_amplitude(eb, g, theta).value - 1.0));
    }
    parts.add("|2 pi r Psi - 1|", amp, 1e-4);
    struct Case {
        double a;
        double eta;
    };
    for (const Case c : {Case{1.0, 1.0}, Case{-2.0, 2.0}}) {
        const sv::TrapGeometry gc{c.eta};
        const double E = sv::bound_state_exact(sv::InteractionModel::fixed_length(c.a), gc).E;
        const double a = wf::scattering_length_from_contact(wf::contact_coefficient(E, gc));
        parts.add(fmt("a = %g, eta = %g: |a_rec - a|", c.a, c.eta), std::abs(a - c.a), 1e-4);
    }
    return parts.done();
}

// Largest relative deviation of an asymptotic profile from the exact one on
// 40 points of (0, 4 l].
double profile_deviation(wf::Axis axis, double E, const sv::TrapGeometry& g,
                         double (*profile)(wf::Axis, double, double, const sv::TrapGeometry&)) {
    const double range = 4.0 * wf::characteristic_length(axis, E, g);
    double worst = 0.0;
    for (int i = 1; i <= 40; ++i) {
        const double c = range * i / 40.0;
        const double exact = axis == wf::Axis::axial ? wf::psi(0.0, c, E, g) : wf::psi(c, 0.0, E, g);
        worst = std::max(worst, rel(profile(axis, c, E, g), exact));
    }
    return worst;
}

Measurement figure_profiles() {
    Parts parts;
    const auto unitarity = sv::InteractionModel::fixed_inverse(0.0);

    const sv::TrapGeometry cigar{100.0};
    const double e1 = sv::bound_state_exact(unitarity, cigar).E;
    parts.add("quasi-1D axial", profile_deviation(wf::Axis::axial, e1, cigar, wf::profile_quasi1d), 0.05);
    parts.add("quasi-1D radial", profile_deviation(wf::Axis::radial, e1, cigar, wf::profile_quasi1d), 0.05);

    const sv::TrapGeometry pancake{0.01};
    const double e2 = sv::bound_state_exact(unitarity, pancake).E;
    parts.add("quasi-2D radial", profile_deviation(wf::Axis::radial, e2, pancake, wf::profile_quasi2d), 0.05);
    parts.add("quasi-2D axial", profile_deviation(wf::Axis::axial, e2, pancake, wf::profile_quasi2d), 0.05);

    // Least-squares slope of log Psi(0, z) on [3 l, 8 l].
    const double l = wf::characteristic_length(wf::Axis::axial, e1, cigar);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const int n = 41;
    for (int i = 0; i < n; ++i) {
        const double z = l * (3.0 + 5.0 * i / (n - 1));
        const double y = std::log(wf::psi(0.0, z, e1, cigar));
        sx += z;
        sy += y;
        sxx += z * z;
        sxy += z * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double want = -std::sqrt(-2.0 * (e1 - sv::ground_energy_offset(cigar)));
    parts.add(fmt("axial slope %.5g vs %.5g", slope, want), rel(slope, want), 0.01);
    return parts.done();
}

Measurement self_consistent() {
    Parts parts;
    double fixed_diff = 0.0;
    for (double eta : {1.0, 2.5, 0.3}) {
        const sv::TrapGeometry g{eta};
        const auto w = sv::default_window(g, 6);
        for (double a : {1.0, -2.0}) {
            const auto fixed = sv::eigenenergies(sv::InteractionModel::fixed_length(a), g, w, 6);
            const auto sc = sv::solve_self_consistent(
                sv::InteractionModel::energy_dependent([a](double) { return a; }), g, w, 6);
            if (sc.size() != fixed.size()) {
                fixed_diff = INFINITY;
                continue;
            }
            for (std::size_t i = 0; i < sc.size(); ++i) {
                fixed_diff = std::max(fixed_diff, std::abs(sc[i].E - fixed[i].E));
            }
        }
    }
    parts.add("constant a_eff vs fixed a", fixed_diff, 1e-10);

    const sv::TrapGeometry g{1.0};
    const auto w = sv::default_window(g, 5);
    const auto base = sv::eigenenergies(sv::InteractionModel::fixed_length(1.0), g, w, 5);
    std::vector<double> shifts;
    for (double gamma : {1e-3, 5e-4, 2.5e-4}) {
        const auto levels = sv::solve_self_consistent(sv::InteractionModel::resonance({1.0, gamma, 3.3}), g, w, 8);
        double worst = 0.0;
        for (const auto& b : base) {
            double nearest = INFINITY;
            for (const auto& lv : levels) {
                nearest = std::min(nearest, std::abs(lv.E - b.E));
            }
            worst = std::max(worst, nearest);
        }
        shifts.push_back(worst);
    }
    const double linearity = std::max(std::abs(shifts[0] / shifts[1] - 2.0), std::abs(shifts[1] / shifts[2] - 2.0)) / 2.0;
    parts.add(fmt("shift halving with gamma (shifts %.3g, %.3g, %.3g)", shifts[0], shifts[1], shifts[2]), linearity, 0.02);
    return parts.done();
}

Measurement measure(int id, const RunOptions& options) {
    switch (id) {
        case 1: return spherical_closed_form();
        case 2: return closed_forms();
        case 3: return recurrence_residual();
        case 4: return phi_constant(options);
        case 5: return unitarity_spectrum();
        case 6: return quasi1d_asymptote();
        case 7: return quasi2d_asymptote();
        case 8: return bound_asymptotics();
        case 9: return overlays();
        case 10: return route_agreement();
        case 11: return contact_singularity();
        case 12: return figure_profiles();
        case 13: return self_consistent();
        default: throw std::out_of_range("no criterion " + std::to_string(id));
    }
}

}  // namespace

const std::vector<CriterionInfo>& criteria() {
    static const std::vector<CriterionInfo> list{
        {1, "spherical closed form vs integral", 1e-8, 5.0, true},
        {2, "cigar and pancake closed forms vs integral", 1e-7, 30.0, false},
        {3, "recurrence residual", 1e-9, 20.0, true},
        {4, "Phi(0) and the quasi-2D prefactor", 1.0, 1.0, true},
        {5, "unitarity spectrum of the isotropic trap", 1e-8, 2.0, true},
        {6, "quasi-1D asymptote of F at eta = 100", 1e-3, 30.0, false},
        {7, "quasi-2D asymptote of F at eta = 0.01", 1e-3, 30.0, false},
        {8, "asymptotic bound states", 1e-2, 60.0, false},
        {9, "renormalized-length spectra overlays", 1e-3, 60.0, false},
        {10, "wave function route agreement", 1e-6, 60.0, false},
        {11, "contact singularity", 1.0, 30.0, true},
        {12, "unitarity profiles and axial tail slope", 1.0, 120.0, false},
        {13, "self-consistent reduction", 1.0, 30.0, true},
    };
    return list;
}

CriterionResult run_criterion(int id, const RunOptions& options) {
    const auto& list = criteria();
    const auto it = std::find_if(list.begin(), list.end(), [id](const CriterionInfo& c) { return c.id == id; });
    if (it == list.end()) {
        throw std::out_of_range("no criterion " + std::to_string(id));
    }
    CriterionResult result;
    result.info = *it;
    const auto start = std::chrono::steady_clock::now();
    try {
        const Measurement m = measure(id, options);
        result.measured = m.measured;
        result.detail = m.detail;
    } catch (const std::exception& e) {
        result.measured = INFINITY;
        result.detail = std::string("error: ") + e.what();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.passed = result.measured < it->threshold && result.seconds < it->budget_seconds;
    return result;
}

std::string format_result(const CriterionResult& r) {
    std::ostringstream out;
    out << "CRITERION " << r.info.id << ' ' << (r.passed ? "PASS" : "FAIL") << ' ' << r.info.title
        << fmt(": measured %.3g, threshold %.3g, time %.2f s", r.measured, r.info.threshold, r.seconds)
        << fmt(" (budget %g s)", r.info.budget_seconds);
    if (!r.detail.empty()) {
        out << " [" << r.detail << ']';
    }
    return out.str();
}

}  // namespace twobody::acceptance
