#include "twobody/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "twobody/errors.hpp"
#include "twobody/specfun.hpp"
#include "twobody/spectral.hpp"

namespace twobody::solver {

namespace sf = twobody::specfun;
namespace sp = twobody::spectral;

namespace {

const double kSqrt2Pi = std::sqrt(2.0 * sf::kPi);

// Distance kept between a bracket end and a pole of the function.
constexpr double kInset = 2e-9;

struct Interval {
    double lo = 0.0;  // x, lower edge (pole or split point)
    double hi = 0.0;  // x, upper edge (pole, split point or search limit)
    int index = 0;
};

double to_x(double energy, double e0) {
    return 0.5 * (e0 - energy);
}

double to_energy(double x, double e0) {
    return e0 - 2.0 * x;
}

// Pole intervals of F covering [x_lo, x_hi], ordered by decreasing x. The
// first one is (0, x_top) when x_hi > 0.
std::vector<Interval> pole_intervals(double eta, double x_lo, double x_hi, double x_top) {
    std::vector<Interval> out;
    if (x_hi > 0.0) {
        out.push_back({0.0, x_top, 0});
    }
    const sp::PoleGrid grid = sp::pole_grid(eta, std::min(x_lo, 0.0) - 1.0 - eta);
    for (std::size_t i = 1; i < grid.poles.size(); ++i) {
        const double lo = grid.poles[i];
        const double hi = grid.poles[i - 1];
        if (hi <= x_lo) {
            break;
        }
        if (lo < x_hi) {
            out.push_back({lo, hi, static_cast<int>(i)});
        }
    }
    return out;
}

double f_value(double x, double eta) {
    return sp::f_eval({x, eta}).value;
}

int sign_of(double v) {
    return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
}

}  // namespace

void TrapGeometry::validate() const {
    if (!std::isfinite(eta) || !(eta > 0.0)) {
        throw std::invalid_argument("trap anisotropy eta must be finite and positive");
    }
}

void ResonanceParams::validate() const {
    if (!std::isfinite(a_bg) || !std::isfinite(gamma) || !std::isfinite(e_res)) {
        throw std::invalid_argument("resonance parameters must be finite");
    }
    if (a_bg == 0.0 && gamma == 0.0) {
        throw std::invalid_argument("resonance model with a_bg = gamma = 0 has a_eff identically zero");
    }
}

void EnergyWindow::validate() const {
    if (!std::isfinite(e_min) || !std::isfinite(e_max) || !(e_min < e_max)) {
        throw std::invalid_argument("energy window must be finite with e_min < e_max");
    }
}

InteractionModel InteractionModel::fixed_length(double a) {
    if (std::isnan(a)) {
        throw std::invalid_argument("scattering length is NaN");
    }
    InteractionModel m;
    if (a == 0.0) {
        m.noninteracting_ = true;
        m.inv_a_ = std::numeric_limits<double>::infinity();
        return m;
    }
    m.inv_a_ = std::isinf(a) ? 0.0 : 1.0 / a;
    return m;
}

InteractionModel InteractionModel::fixed_inverse(double inv_a) {
    if (!std::isfinite(inv_a)) {
        throw std::invalid_argument("inverse scattering length must be finite (use fixed_length(0) for a = 0)");
    }
    InteractionModel m;
    m.inv_a_ = inv_a;
    return m;
}

InteractionModel InteractionModel::energy_dependent(std::function<double(double)> a_eff) {
    if (!a_eff) {
        throw std::invalid_argument("a_eff callable is empty");
    }
    return energy_dependent_inverse([f = std::move(a_eff)](double e) {
        const double a = f(e);
        return a == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / a;
    });
}

InteractionModel InteractionModel::energy_dependent_inverse(std::function<double(double)> inv_a_eff) {
    if (!inv_a_eff) {
        throw std::invalid_argument("1/a_eff callable is empty");
    }
    InteractionModel m;
    m.kind_ = Kind::energy_dependent;
    m.inv_a_eff_ = std::move(inv_a_eff);
    return m;
}

InteractionModel InteractionModel::resonance(const ResonanceParams& params) {
    params.validate();
    InteractionModel m =
        energy_dependent_inverse([params](double e) { return resonance_inverse_a_eff(e, params); });
    if (params.a_bg != 0.0) {
        m.singular_.push_back(params.e_res - params.gamma / params.a_bg);
    }
    m.resonance_ = params;
    return m;
}

double InteractionModel::inverse_length(double energy) const {
    if (kind_ == Kind::fixed) {
        return inv_a_;
    }
    return inv_a_eff_(energy);
}

double ground_energy_offset(const TrapGeometry& g) {
    g.validate();
    return 0.5 + g.eta;
}

EnergyWindow default_window(const TrapGeometry& g, int max_levels) {
    const double e0 = ground_energy_offset(g);
    return {e0 - 50.0, e0 + 4.0 * (1.0 + g.eta) * std::max(max_levels, 1)};
}

double residual(const InteractionModel& model, const TrapGeometry& g, double energy) {
    const double e0 = ground_energy_offset(g);
    return f_value(to_x(energy, e0), g.eta) + kSqrt2Pi * model.inverse_length(energy);
}

namespace {

std::vector<EnergyLevel> noninteracting_levels(const TrapGeometry& g, const EnergyWindow& window,
                                               int max_levels) {
    const double e0 = ground_energy_offset(g);
    const double x_lo = to_x(window.e_max, e0);
    std::vector<EnergyLevel> out;
    const sp::PoleGrid grid = sp::pole_grid(g.eta, std::min(x_lo, 0.0) - 1e-12);
    for (std::size_t i = 0; i < grid.poles.size() && static_cast<int>(out.size()) < max_levels; ++i) {
        const double p = grid.poles[i];
        const double e = to_energy(p, e0);
        if (e < window.e_min || e > window.e_max) {
            continue;
        }
        EnergyLevel level;
        level.E = e;
        level.x = p;
        level.bracket = numerics::RootBracket::from_signs(p - kInset, p + kInset, -1, 1);
        level.branch_index = static_cast<int>(i);
        level.noninteracting = true;
        out.push_back(level);
    }
    return out;
}

// Upper search limit for the interval above the top pole: doubles until
// the residual turns negative.
std::optional<double> bound_search_limit(const std::function<double(double)>& resid, double x_max) {
    double x = 1.0;
    while (x <= x_max) {
        if (resid(x) < 0.0) {
            return x;
        }
        x *= 2.0;
    }
    return std::nullopt;
}

}  // namespace

std::vector<EnergyLevel> eigenenergies(const InteractionModel& model, const TrapGeometry& g,
                                       const EnergyWindow& window, int max_levels,
                                       const SolverOptions& options) {
    g.validate();
    window.validate();
    if (max_levels < 1) {
        throw std::invalid_argument("max_levels must be >= 1");
    }
    if (model.kind() == InteractionModel::Kind::energy_dependent) {
        return solve_self_consistent(model, g, window, max_levels, options);
    }
    if (model.noninteracting()) {
        return noninteracting_levels(g, window, max_levels);
    }
    const double e0 = ground_energy_offset(g);
    const double x_lo = to_x(window.e_max, e0);
    const double x_hi = to_x(window.e_min, e0);
    const double shift = kSqrt2Pi * model.inverse_length(0.0);
    auto resid = [&](double x) { return f_value(x, g.eta) + shift; };

    std::vector<EnergyLevel> out;
    double x_top = 0.0;
    if (x_hi > 0.0) {
        const auto limit = bound_search_limit(resid, options.bound_x_max);
        x_top = limit.value_or(0.0);
    }
    for (const Interval& iv : pole_intervals(g.eta, x_lo, x_hi, x_top)) {
        if (static_cast<int>(out.size()) >= max_levels) {
            break;
        }
        if (iv.index == 0 && x_top == 0.0) {
            continue;  // no sign change below E0 within the search limit
        }
        const double lo = iv.lo + kInset;
        const double hi = iv.index == 0 ? iv.hi : iv.hi - kInset;
        if (!(lo < hi)) {
            continue;
        }
        const auto bracket = numerics::RootBracket::from_signs(lo, hi, 1, -1);
        const double x = numerics::find_root_bracketed(resid, bracket, options.root_tol);
        const double e = to_energy(x, e0);
        if (e < window.e_min || e > window.e_max) {
            continue;
        }
        out.push_back({e, x, bracket, iv.index, false});
    }
    return out;
}

std::vector<EnergyLevel> solve_self_consistent(const InteractionModel& model, const TrapGeometry& g,
                                               const EnergyWindow& window, int max_levels,
                                               const SolverOptions& options) {
    g.validate();
    window.validate();
    if (max_levels < 1) {
        throw std::invalid_argument("max_levels must be >= 1");
    }
    if (model.noninteracting()) {
        return noninteracting_levels(g, window, max_levels);
    }
    if (options.samples_per_interval < 2) {
        throw std::invalid_argument("samples_per_interval must be >= 2");
    }
    const double e0 = ground_energy_offset(g);
    const double x_lo = to_x(window.e_max, e0);
    const double x_hi = to_x(window.e_min, e0);
    auto resid = [&](double x) {
        return f_value(x, g.eta) + kSqrt2Pi * model.inverse_length(to_energy(x, e0));
    };

    std::vector<double> splits;
    for (double e : model.singular_energies()) {
        splits.push_back(to_x(e, e0));
    }

    std::vector<EnergyLevel> out;
    for (const Interval& iv : pole_intervals(g.eta, x_lo, x_hi, std::max(x_hi, 0.0))) {
        if (static_cast<int>(out.size()) >= max_levels) {
            break;
        }
        // Sample points ordered by decreasing x (ascending energy). The ends next
        // to poles of F carry the sign of F there.
        struct Sample {
            double x;
            int sign;
        };
        std::vector<Sample> samples;
        const bool top = iv.index == 0;
        const double upper = top ? iv.hi : iv.hi - kInset;
        const double lower = iv.lo + kInset;
        if (!(lower < upper)) {
            continue;
        }
        samples.push_back({upper, top ? sign_of(resid(upper)) : -1});
        std::vector<double> interior;
        const int n = options.samples_per_interval;
        for (int k = 1; k < n; ++k) {
            interior.push_back(upper - (upper - lower) * k / n);
        }
        for (double s : splits) {
            if (s > lower && s < upper) {
                const double d = std::max(kInset, 1e-12 * std::abs(s));
                interior.push_back(s + d);
                interior.push_back(s - d);
            }
        }
        std::sort(interior.begin(), interior.end(), std::greater<>());
        for (double x : interior) {
            if (x < upper && x > lower) {
                samples.push_back({x, sign_of(resid(x))});
            }
        }
        samples.push_back({lower, 1});

        for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
            if (static_cast<int>(out.size()) >= max_levels) {
                break;
            }
            const Sample& right = samples[i];
            const Sample& left = samples[i + 1];
            if (right.sign == 0) {
                const double e = to_energy(right.x, e0);
                if (e >= window.e_min && e <= window.e_max) {
                    out.push_back({e, right.x,
                                   numerics::RootBracket::from_signs(left.x, right.x, 1, -1), iv.index, false});
                }
                continue;
            }
            if (left.sign == 0 || left.sign == right.sign) {
                continue;
            }
            const auto bracket = numerics::RootBracket::from_signs(left.x, right.x, left.sign, right.sign);
            const double x = numerics::find_root_bracketed(resid, bracket, options.root_tol);
            const double f = f_value(x, g.eta);
            const double r = f + kSqrt2Pi * model.inverse_length(to_energy(x, e0));
            if (!(std::abs(r) <= options.residual_tol + 1e-9 * std::abs(f))) {
                continue;  // a divergence of 1/a_eff, not a root
            }
            const double e = to_energy(x, e0);
            if (e < window.e_min || e > window.e_max) {
                continue;
            }
            out.push_back({e, x, bracket, iv.index, false});
        }
    }
    std::sort(out.begin(), out.end(), [](const EnergyLevel& a, const EnergyLevel& b) { return a.E < b.E; });
    return out;
}

double a1d_effective(double inv_a, const TrapGeometry& g) {
    g.validate();
    if (!std::isfinite(inv_a)) {
        throw std::domain_error("a_1D is undefined for a = 0");
    }
    return -inv_a / g.eta - sf::hurwitz_zeta_half(1.0) / std::sqrt(2.0 * g.eta);
}

double a2d_effective(double inv_a) {
    if (!std::isfinite(inv_a)) {
        throw std::domain_error("a_2D is undefined for a = 0");
    }
    return std::exp(0.5 * (sp::phi(0.0) - kSqrt2Pi * inv_a)) / std::sqrt(2.0);
}

std::vector<double> spectrum_1d_reference(double inv_a1d, const TrapGeometry& g,
                                          const EnergyWindow& window, const SolverOptions& options) {
    g.validate();
    window.validate();
    if (!std::isfinite(inv_a1d)) {
        throw std::domain_error("1/a_1D must be finite");
    }
    const double e0 = ground_energy_offset(g);
    const double target = inv_a1d / std::sqrt(2.0);
    // Gamma(y + 1/2) / Gamma(y) rises from -inf to +inf between its poles at
    // y = -1/2 - n, and from -inf to +inf on (-1/2, inf).
    auto h = [target](double y) {
        const sf::GammaRatio r = sf::gamma_ratio(y + 0.5, y);
        return r.value - target;
    };
    const double y_lo = to_x(window.e_max, e0);
    const double y_hi = to_x(window.e_min, e0);
    std::vector<double> out;
    // Top interval.
    if (y_hi > -0.5) {
        double upper = std::max(1.0, y_hi);
        while (h(upper) < 0.0) {
            upper *= 2.0;
        }
        const double y = numerics::find_root_bracketed(
            h, numerics::RootBracket::from_signs(-0.5 + kInset, upper, -1, 1), options.root_tol);
        const double e = to_energy(y, e0);
        if (e >= window.e_min && e <= window.e_max) {
            out.push_back(e);
        }
    }
    for (int n = 0;; ++n) {
        const double hi = -0.5 - n;
        const double lo = hi - 1.0;
        if (hi <= y_lo) {
            break;
        }
        if (lo >= y_hi) {
            continue;
        }
        const double y = numerics::find_root_bracketed(
            h, numerics::RootBracket::from_signs(lo + kInset, hi - kInset, -1, 1), options.root_tol);
        const double e = to_energy(y, e0);
        if (e >= window.e_min && e <= window.e_max) {
            out.push_back(e);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> spectrum_2d_reference(double a2d, const TrapGeometry& g, const EnergyWindow& window,
                                          const SolverOptions& options) {
    g.validate();
    window.validate();
    if (!std::isfinite(a2d) || !(a2d > 0.0)) {
        throw std::domain_error("a_2D must be finite and positive");
    }
    const double e0 = ground_energy_offset(g);
    const double eta = g.eta;
    const double shift = std::log(2.0 * a2d * a2d * eta);
    // psi(y / eta) rises from -inf to +inf between its poles at y = -k eta.
    auto h = [eta, shift](double y) { return sf::digamma(y / eta) + shift; };
    const double y_lo = to_x(window.e_max, e0);
    const double y_hi = to_x(window.e_min, e0);
    std::vector<double> out;
    if (y_hi > 0.0) {
        double upper = std::max(eta, y_hi);
        while (h(upper) < 0.0) {
            upper *= 2.0;
        }
        const double y = numerics::find_root_bracketed(
            h, numerics::RootBracket::from_signs(kInset * eta, upper, -1, 1), options.root_tol);
        const double e = to_energy(y, e0);
        if (e >= window.e_min && e <= window.e_max) {
            out.push_back(e);
        }
    }
    for (long k = 0;; ++k) {
        const double hi = -static_cast<double>(k) * eta;
        const double lo = hi - eta;
        if (hi <= y_lo) {
            break;
        }
        if (lo >= y_hi) {
            continue;
        }
        const double inset = kInset * eta;
        const double y = numerics::find_root_bracketed(
            h, numerics::RootBracket::from_signs(lo + inset, hi - inset, -1, 1), options.root_tol);
        const double e = to_energy(y, e0);
        if (e >= window.e_min && e <= window.e_max) {
            out.push_back(e);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

EnergyLevel bound_state_exact(const InteractionModel& model, const TrapGeometry& g,
                              const SolverOptions& options) {
    g.validate();
    if (model.noninteracting()) {
        throw NoRootError("no bound state for a noninteracting pair");
    }
    const double e0 = ground_energy_offset(g);
    if (model.kind() == InteractionModel::Kind::energy_dependent) {
        const EnergyWindow w{e0 - 2.0 * options.bound_x_max, e0};
        const auto levels = solve_self_consistent(model, g, w, 1, options);
        if (levels.empty() || levels.front().branch_index != 0) {
            throw NoRootError("no level below E0 found");
        }
        return levels.front();
    }
    const double shift = kSqrt2Pi * model.inverse_length(0.0);
    auto resid = [&](double x) { return f_value(x, g.eta) + shift; };
    const auto limit = bound_search_limit(resid, options.bound_x_max);
    if (!limit) {
        throw NoRootError("no level below E0 with x <= " + std::to_string(options.bound_x_max));
    }
    const auto bracket = numerics::RootBracket::from_signs(kInset, *limit, 1, -1);
    const double x = numerics::find_root_bracketed(resid, bracket, options.root_tol);
    return {to_energy(x, e0), x, bracket, 0, false};
}

AsymptoticBoundState bound_state_quasi1d(double inv_a, const TrapGeometry& g, const SolverOptions& options) {
    g.validate();
    if (!std::isfinite(inv_a)) {
        throw std::domain_error("1/a must be finite");
    }
    const double eta = g.eta;
    const double c = std::sqrt(2.0) * inv_a;
    const double root_eta = std::sqrt(eta);
    // zeta(1/2, q) falls from +inf (q -> 0) to -inf.
    auto h = [&](double x) { return c + root_eta * sf::hurwitz_zeta_half(x / eta); };
    double upper = eta;
    while (h(upper) > 0.0) {
        upper *= 2.0;
        if (upper > 1e300) {
            throw NoRootError("quasi-1D bound-state equation has no root");
        }
    }
    const double x = numerics::find_root_bracketed(
        h, numerics::RootBracket::from_signs(1e-300, upper, 1, -1), options.root_tol * std::max(1.0, eta));
    return {to_energy(x, ground_energy_offset(g)), eta >= 10.0};
}

AsymptoticBoundState bound_state_quasi2d(double inv_a, const TrapGeometry& g, const SolverOptions& options) {
    g.validate();
    if (!std::isfinite(inv_a)) {
        throw std::domain_error("1/a must be finite");
    }
    const double target = kSqrt2Pi * inv_a;
    // Phi(x) + log(x) rises from -inf to +inf on x > 0.
    auto h = [target](double x) { return sp::phi(x) + std::log(x) - target; };
    double lower = 1.0;
    while (h(lower) > 0.0) {
        lower *= 0.5;
        if (lower < 1e-300) {
            throw NoRootError("quasi-2D bound-state equation has no root");
        }
    }
    double upper = std::max(1.0, 2.0 * lower);
    while (h(upper) < 0.0) {
        upper *= 2.0;
        if (upper > 1e300) {
            throw NoRootError("quasi-2D bound-state equation has no root");
        }
    }
    const double tol = options.root_tol * std::max(lower, 1e-300);
    const double x = numerics::find_root_bracketed(h, numerics::RootBracket::from_signs(lower, upper, -1, 1),
                                                   std::max(tol, 1e-300));
    return {to_energy(x, ground_energy_offset(g)), g.eta <= 0.1};
}

double resonance_a_eff(double energy, const ResonanceParams& params) {
    params.validate();
    const double num = params.a_bg * (energy - params.e_res) + params.gamma;
    const double den = energy - params.e_res - energy * params.a_bg * params.gamma;
    if (den == 0.0) {
        throw PoleError("a_eff diverges at E = " + std::to_string(energy), energy);
    }
    return num / den;
}

double resonance_inverse_a_eff(double energy, const ResonanceParams& params) {
    const double num = params.a_bg * (energy - params.e_res) + params.gamma;
    const double den = energy - params.e_res - energy * params.a_bg * params.gamma;
    if (num == 0.0) {
        return den > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    }
    return den / num;
}

}  // namespace twobody::solver
