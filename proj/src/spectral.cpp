#include "twobody/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include "twobody/errors.hpp"
#include "twobody/specfun.hpp"

namespace twobody::spectral {

namespace sf = twobody::specfun;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kIntegerTolerance = 1e-12;

// log((1 - e^-y) / y)
double log_sinhc_like(double y) {
    if (y < 0.25) {
        const double y2 = y * y;
        return -0.5 * y + y2 / 24.0 - y2 * y2 / 2880.0 + y2 * y2 * y2 / 181440.0 -
               y2 * y2 * y2 * y2 / 9676800.0;
    }
    return std::log(-std::expm1(-y) / y);
}

void check_not_on_pole(double x, double eta) {
    if (x > kPoleTolerance) {
        return;
    }
    const double p = nearest_pole(x, eta);
    if (std::abs(x - p) < kPoleTolerance) {
        throw PoleError("F(x, eta) has a pole at x = " + std::to_string(p), p);
    }
}

bool near_integer(double v, int& n) {
    const double r = std::nearbyint(v);
    if (r >= 1.0 && std::abs(v - r) < kIntegerTolerance) {
        n = static_cast<int>(r);
        return true;
    }
    return false;
}

// sqrt(pi) eta Gamma(y) / Gamma(y + 1/2)
double recurrence_term(double y, double eta) {
    const sf::GammaRatio r = sf::gamma_ratio(y, y + 0.5);
    if (r.is_pole) {
        throw PoleError("F(x, eta) has a pole at x = " + std::to_string(y), y);
    }
    return eta * sf::kSqrtPi * r.value;
}

// (k + 1/2) log((x + k) / (x + k + 1)) + 1, without the cancellation at large k.
double phi_bracket(double x, long k) {
    const double w = x + static_cast<double>(k) + 1.0;
    const double u = 1.0 / w;
    const double d = x + 0.5;  // k + 1/2 = w - d
    const double log_ratio = std::log1p(-u);
    if (u > 0.05) {
        return (w - d) * log_ratio + 1.0;
    }
    // 1 + w log(1 - u) = -(u/2 + u^2/3 + u^3/4 + ...)
    double acc = 0.0;
    double power = u;
    for (int n = 2; n < 40; ++n) {
        const double t = power / n;
        acc += t;
        if (t < kEps * acc) {
            break;
        }
        power *= u;
    }
    return -acc - d * log_ratio;
}

double phi_weight(long k) {
    // c_k = Gamma(k + 1/2) / (sqrt(pi) Gamma(k + 1))
    const double kd = static_cast<double>(k);
    return sf::gamma_ratio_value(kd + 0.5, kd + 1.0) / sf::kSqrtPi;
}

}  // namespace

std::string_view route_name(Route route) noexcept {
    switch (route) {
        case Route::integral: return "integral";
        case Route::cigar: return "cigar";
        case Route::pancake: return "pancake";
        case Route::spherical: return "spherical";
        case Route::recurrence: return "recurrence";
        case Route::quasi1d: return "quasi1d";
        case Route::quasi2d: return "quasi2d";
    }
    return "unknown";
}

void SpectralArgument::validate() const {
    if (!std::isfinite(x)) {
        throw std::invalid_argument("spectral argument x must be finite");
    }
    if (!std::isfinite(eta) || !(eta > 0.0)) {
        throw std::invalid_argument("anisotropy eta must be finite and positive");
    }
}

numerics::QuadratureSpec default_integral_spec() {
    numerics::QuadratureSpec spec;
    spec.abs_tol = 1e-14;
    spec.rel_tol = 1e-12;
    spec.max_refinements = 20000;
    return spec;
}

SpectralValue f_integral(const SpectralArgument& arg, const numerics::QuadratureSpec& spec) {
    arg.validate();
    const double x = arg.x;
    const double eta = arg.eta;
    if (!(x > 0.0)) {
        throw std::domain_error("the defining integral of F converges only for x > 0");
    }
    // integrand = t^(-3/2) expm1(-x t - h(t)/2 - h(eta t)), h(y) = log((1 - e^-y)/y)
    auto integrand = [x, eta](double t) {
        const double lg = -x * t - 0.5 * log_sinhc_like(t) - log_sinhc_like(eta * t);
        return std::expm1(lg) / (t * std::sqrt(t));
    };
    numerics::QuadratureSpec local = spec;
    local.split_point = std::min({1.0, 1.0 / eta, spec.split_point});
    const std::array<double, 6> hints = {1.0, 1.0 / eta, 1.0 / x, 4.0 / x, 16.0 / x, 64.0 / x};
    const auto r = numerics::integrate_semi_infinite(integrand, local, hints);
    if (!r.converged) {
        throw ConvergenceError("F integral did not converge", r.abs_error);
    }
    return {r.value, Route::integral, r.abs_error};
}

SpectralValue f_spherical(double x) {
    const sf::GammaRatio r = sf::gamma_ratio(x, x - 0.5);
    if (r.is_pole) {
        throw PoleError("F(x, 1) has a pole at x = " + std::to_string(x), x);
    }
    const double v = -2.0 * sf::kSqrtPi * r.value;
    return {v, Route::spherical, 8.0 * kEps * std::abs(v)};
}

SpectralValue f_cigar(double x, int n) {
    if (n < 1) {
        throw std::invalid_argument("cigar closed form needs n >= 1");
    }
    if (n == 1) {
        SpectralValue v = f_spherical(x);
        v.route = Route::cigar;
        return v;
    }
    if (sf::is_nonpositive_integer(x)) {
        throw PoleError("F(x, n) has a pole at x = " + std::to_string(x), x);
    }
    std::complex<double> sum = 0.0;
    double magnitude = 0.0;
    for (int m = 1; m < n; ++m) {
        const std::complex<double> z = std::polar(1.0, 2.0 * sf::kPi * m / n);
        const std::complex<double> term = sf::beta_hyp2f1_one(x, z);
        sum += term;
        magnitude += std::abs(term);
    }
    if (std::abs(sum.imag()) > 1e-10 * std::max(1.0, magnitude)) {
        throw ConvergenceError("cigar sum over roots of unity is not real", std::abs(sum.imag()));
    }
    const SpectralValue sph = f_spherical(x);
    const double v = sum.real() + sph.value;
    return {v, Route::cigar, 64.0 * kEps * (magnitude + std::abs(sph.value))};
}

SpectralValue f_pancake(double x, int n) {
    if (n < 1) {
        throw std::invalid_argument("pancake closed form needs n >= 1");
    }
    double sum = 0.0;
    double magnitude = 0.0;
    for (int m = 0; m < n; ++m) {
        const double shift = static_cast<double>(m) / n;
        const sf::GammaRatio r = sf::gamma_ratio(x + shift, x - 0.5 + shift);
        if (r.is_pole) {
            throw PoleError("F(x, 1/n) has a pole at x = " + std::to_string(x), x);
        }
        sum += r.value;
        magnitude += std::abs(r.value);
    }
    const double scale = 2.0 * sf::kSqrtPi / n;
    return {-scale * sum, Route::pancake, 16.0 * kEps * scale * magnitude};
}

SpectralValue f_recurrence_extend(const SpectralArgument& arg, const numerics::QuadratureSpec& spec) {
    arg.validate();
    check_not_on_pole(arg.x, arg.eta);
    const double target = 0.5 * std::max(arg.eta, 1.0);
    if (arg.x >= target) {
        return f_integral(arg, spec);
    }
    const long m = static_cast<long>(std::ceil((target - arg.x) / arg.eta));
    double sum = 0.0;
    double carry = 0.0;
    double magnitude = 0.0;
    for (long i = 0; i < m; ++i) {
        const double t = recurrence_term(arg.x + static_cast<double>(i) * arg.eta, arg.eta);
        const double y = t - carry;
        const double next = sum + y;
        carry = (next - sum) - y;
        sum = next;
        magnitude += std::abs(t);
    }
    const double x_end = arg.x + static_cast<double>(m) * arg.eta;
    const SpectralValue tail = f_integral({x_end, arg.eta}, spec);
    return {tail.value + sum, Route::recurrence, tail.est_error + 8.0 * kEps * magnitude};
}

SpectralValue f_eval(const SpectralArgument& arg) {
    arg.validate();
    check_not_on_pole(arg.x, arg.eta);
    int n = 0;
    if (near_integer(arg.eta, n)) {
        if (n == 1) {
            return f_spherical(arg.x);
        }
        return f_cigar(arg.x, n);
    }
    if (near_integer(1.0 / arg.eta, n)) {
        return f_pancake(arg.x, n);
    }
    return f_recurrence_extend(arg);
}

SpectralValue f_quasi1d(const SpectralArgument& arg, Branch branch, double min_eta) {
    arg.validate();
    const double eta = arg.eta;
    if (eta < min_eta) {
        throw std::domain_error("quasi-1D asymptote needs eta >= " + std::to_string(min_eta));
    }
    const double scale = std::sqrt(sf::kPi * eta);
    // Leading correction: (sqrt(pi) / 8) eta^(-1/2) zeta(3/2, 1 + x/eta).
    if (branch == Branch::bound) {
        if (!(arg.x > 0.0)) {
            throw std::domain_error("bound-state quasi-1D form needs x > 0");
        }
        const double q = arg.x / eta;
        const SpectralValue general = f_quasi1d(arg, Branch::general, min_eta);
        const double v = scale * sf::hurwitz_zeta_half(q);
        return {v, Route::quasi1d, general.est_error + std::abs(v - general.value)};
    }
    if (!(arg.x > -eta)) {
        throw std::domain_error("quasi-1D asymptote needs x > -eta");
    }
    const double q = 1.0 + arg.x / eta;
    const sf::GammaRatio r = sf::gamma_ratio(arg.x, arg.x + 0.5);
    if (r.is_pole) {
        throw PoleError("quasi-1D asymptote has a pole at x = " + std::to_string(arg.x), arg.x);
    }
    const double v = scale * (sf::hurwitz_zeta_half(q) + std::sqrt(eta) * r.value);
    const double corr = sf::kSqrtPi / 8.0 / std::sqrt(eta) * sf::hurwitz_zeta(1.5, q);
    return {v, Route::quasi1d, corr};
}

SpectralValue f_quasi2d(const SpectralArgument& arg, Branch branch, double max_eta) {
    arg.validate();
    const double eta = arg.eta;
    if (eta > max_eta) {
        throw std::domain_error("quasi-2D asymptote needs eta <= " + std::to_string(max_eta));
    }
    if (!(arg.x > -1.0)) {
        throw std::domain_error("quasi-2D asymptote needs x > -1");
    }
    if (branch == Branch::bound) {
        if (!(arg.x > 0.0)) {
            throw std::domain_error("bound-state quasi-2D form needs x > 0");
        }
        const double p = phi(arg.x);
        const double v = -p - std::log(arg.x);
        const double general = -p - std::log(eta) - sf::digamma(arg.x / eta);
        return {v, Route::quasi2d, eta + std::abs(v - general)};
    }
    const double v = -phi(arg.x) - std::log(eta) - sf::digamma(arg.x / eta);
    return {v, Route::quasi2d, eta};
}

double phi_partial(double x, long terms) {
    if (!(x > -1.0)) {
        throw std::domain_error("Phi(x) needs x > -1");
    }
    double sum = 0.0;
    for (long k = 1; k <= terms; ++k) {
        sum += phi_weight(k) * phi_bracket(x, k);
    }
    return 2.0 - std::log1p(x) + 2.0 * sum;
}

SeriesPhi phi_series(double x, double abs_tol, long max_terms) {
    if (!(x > -1.0)) {
        throw std::domain_error("Phi(x) needs x > -1");
    }
    numerics::SeriesOptions opt;
    opt.first_index = 1;
    opt.abs_tol = abs_tol;
    opt.max_terms = max_terms;
    opt.decay_exponent = 1.5;
    const auto r = numerics::sum_series([x](long k) { return phi_weight(k) * phi_bracket(x, k); }, opt);
    return {2.0 - std::log1p(x) + 2.0 * r.value, 2.0 * r.error, r.terms, r.converged};
}

double phi(double x) {
    if (!(x > -1.0)) {
        throw std::domain_error("Phi(x) needs x > -1");
    }
    // Phi(x) = -integral_0^inf [(e^(-x t) ((1 - e^-t)^(-1/2) - 1) + e^-t) / t - t^(-3/2)] dt
    auto integrand = [x](double t) {
        if (t < 1.0) {
            const double h = log_sinhc_like(t);
            return std::expm1(-x * t - 0.5 * h) / (t * std::sqrt(t)) +
                   std::exp(-t) * -std::expm1((1.0 - x) * t) / t;
        }
        // e^(-(1 + x) t) / (2 t) is removed here and integrated in closed form below.
        // r = e^t ((1 - e^-t)^(-1/2) - 1) - 1/2
        const double w = std::exp(-t);
        const double r = t > 20.0 ? w * (0.375 + w * (0.3125 + w * 0.2734375))
                                  : std::expm1(-0.5 * std::log1p(-w)) / w - 0.5;
        return (std::exp(-(1.0 + x) * t) * r + w) / t - 1.0 / (t * std::sqrt(t));
    };
    numerics::QuadratureSpec spec;
    spec.abs_tol = 1e-14;
    spec.rel_tol = 1e-13;
    spec.max_refinements = 20000;
    const std::array<double, 3> hints = {1.0, 4.0, 16.0};
    const auto r = numerics::integrate_semi_infinite(integrand, spec, hints);
    if (!r.converged) {
        throw ConvergenceError("Phi integral did not converge", r.abs_error);
    }
    return -(r.value - 0.5 * std::expint(-(1.0 + x)));
}

PoleGrid pole_grid(double eta, double x_min) {
    if (!std::isfinite(eta) || !(eta > 0.0)) {
        throw std::invalid_argument("pole_grid needs eta > 0");
    }
    if (!std::isfinite(x_min)) {
        throw std::invalid_argument("pole_grid needs a finite x_min");
    }
    std::vector<double> all;
    for (long k = 0; static_cast<double>(k) * eta <= -x_min + 1e-12; ++k) {
        for (long j = 0; static_cast<double>(j) + static_cast<double>(k) * eta <= -x_min + 1e-12; ++j) {
            all.push_back(-(static_cast<double>(j) + static_cast<double>(k) * eta));
        }
    }
    std::sort(all.begin(), all.end(), std::greater<>());
    PoleGrid grid;
    for (double p : all) {
        if (p < x_min) {
            break;
        }
        if (grid.poles.empty() || grid.poles.back() - p > 1e-12) {
            grid.poles.push_back(p == 0.0 ? 0.0 : p);
        }
    }
    return grid;
}

double nearest_pole(double x, double eta) {
    if (!std::isfinite(eta) || !(eta > 0.0)) {
        throw std::invalid_argument("nearest_pole needs eta > 0");
    }
    if (x >= 0.0) {
        return 0.0;
    }
    const double depth = -x;
    double best = 0.0;
    double best_dist = std::abs(x);
    const long k_max = static_cast<long>(std::floor(depth / eta)) + 1;
    for (long k = 0; k <= k_max; ++k) {
        const double rest = depth - static_cast<double>(k) * eta;
        for (double j : {std::floor(rest), std::ceil(rest)}) {
            if (j < 0.0) {
                continue;
            }
            const double p = -(j + static_cast<double>(k) * eta);
            const double dist = std::abs(x - p);
            if (dist < best_dist) {
                best_dist = dist;
                best = p;
            }
        }
    }
    return best;
}

}  // namespace twobody::spectral
