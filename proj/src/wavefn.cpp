#include "twobody/wavefn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "twobody/errors.hpp"
#include "twobody/specfun.hpp"
#include "twobody/spectral.hpp"

namespace twobody::wavefn {

namespace {

using specfun::kPi;
using specfun::kSqrtPi;

constexpr double kLn2 = 0.693147180559945309417232121458176568;
// Bound on |H_n(x)| e^(-x^2/2) / sqrt(2^n n!) (Cramer's inequality).
constexpr double kHermiteEnvelope = 1.0865;
constexpr int kExplicitTerms = 256;

double log_sinh(double y) {
    if (y < 0.5) {
        return std::log(std::sinh(y));
    }
    return y - kLn2 + std::log1p(-std::exp(-2.0 * y));
}

// log(sinh(y) / y)
double log_sinhc(double y) {
    if (y < 1e-2) {
        const double y2 = y * y;
        return y2 * (1.0 / 6.0 - y2 * (1.0 / 180.0 - y2 / 2835.0));
    }
    return log_sinh(y) - std::log(y);
}

// coth(t) - 1/t
double coth_minus_inverse(double t) {
    if (t < 1e-2) {
        const double t2 = t * t;
        return t * (1.0 / 3.0 - t2 * (1.0 / 45.0 - 2.0 * t2 / 945.0));
    }
    return 1.0 / std::tanh(t) - 1.0 / t;
}

double ground(const TrapGeometry& g) {
    g.validate();
    return solver::ground_energy_offset(g);
}

void check_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + " must be finite");
    }
}

std::vector<double> integral_hints(double r2, double decay, double eta) {
    std::vector<double> hints = {r2 / 3.0, r2, 1.0, 1.0 / eta};
    for (double k : {1.0, 4.0, 16.0, 64.0}) {
        hints.push_back(k / decay);
    }
    std::erase_if(hints, [](double h) { return !(h > 0.0) || !std::isfinite(h); });
    std::sort(hints.begin(), hints.end());
    return hints;
}

// Psi(0, z) - 1/(2 pi |z|) for E < E0 (integral part only).
double axis_regular_part(double z, double E, const TrapGeometry& g) {
    const double eta = g.eta;
    const double z2 = z * z;
    auto f = [=](double t) {
        const double lam = t * E - 0.5 * z2 * coth_minus_inverse(t) - 0.5 * log_sinhc(t) - log_sinhc(eta * t);
        return std::pow(t, -1.5) * std::exp(-0.5 * z2 / t) * std::expm1(lam);
    };
    numerics::QuadratureSpec spec;
    spec.abs_tol = 1e-14;
    spec.rel_tol = 1e-12;
    spec.max_refinements = 20000;
    spec.split_point = 1.0;
    const auto hints = integral_hints(z2, 0.5 + eta - E, eta);
    const auto r = numerics::integrate_semi_infinite(f, spec, hints);
    if (!r.converged) {
        throw ConvergenceError("axis integral did not converge", r.abs_error);
    }
    return r.value / std::pow(2.0 * kPi, 1.5);
}

// Number of transverse modes summed in closed form on the axis.
int axis_mode_count(double ecal, double eta) {
    return std::max(0, static_cast<int>(std::ceil((ecal + 0.5 * eta) / (2.0 * eta))));
}

double axis_modes(double z, double ecal, const TrapGeometry& g, int modes) {
    double sum = 0.0;
    for (int m = 0; m < modes; ++m) {
        sum += specfun::gamma_kummer_u(g.eta * m - 0.5 * ecal, 0.5, z * z);
    }
    return g.eta * std::exp(-0.5 * z * z) / (2.0 * kPi * kSqrtPi) * sum;
}

[[noreturn]] void series_failure(const char* route, double tail) {
    throw ConvergenceError(std::string(route) + " series did not reach its tolerance", tail);
}

struct Grid {
    std::vector<double> rho;
    std::vector<double> z;
    // values[i][j] at (rho[i], z[j])
    std::vector<std::vector<double>> values;
};

Grid tensor_grid(const ProfileSamples& s) {
    std::map<double, std::size_t> rho_index;
    std::map<double, std::size_t> z_index;
    for (const auto& p : s.coordinates) {
        rho_index.emplace(p.rho, 0);
        z_index.emplace(p.z, 0);
    }
    Grid grid;
    for (auto& [v, i] : rho_index) {
        i = grid.rho.size();
        grid.rho.push_back(v);
    }
    for (auto& [v, j] : z_index) {
        j = grid.z.size();
        grid.z.push_back(v);
    }
    if (grid.rho.size() < 3 || grid.z.size() < 3) {
        throw std::invalid_argument("normalize needs at least 3 distinct rho and z values");
    }
    if (grid.rho.size() * grid.z.size() != s.coordinates.size()) {
        throw std::invalid_argument("normalize needs a complete tensor grid without duplicates");
    }
    if (grid.rho.front() < 0.0) {
        throw std::invalid_argument("normalize needs rho >= 0");
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    grid.values.assign(grid.rho.size(), std::vector<double>(grid.z.size(), nan));
    for (std::size_t n = 0; n < s.coordinates.size(); ++n) {
        double& cell = grid.values[rho_index[s.coordinates[n].rho]][z_index[s.coordinates[n].z]];
        if (!std::isnan(cell)) {
            throw std::invalid_argument("normalize needs a complete tensor grid without duplicates");
        }
        cell = s.values[n];
    }
    return grid;
}

template <class F>
double trapezoid(const std::vector<double>& x, F&& f) {
    double sum = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        sum += 0.5 * (x[i] - x[i - 1]) * (f(i) + f(i - 1));
    }
    return sum;
}

// Geometric continuation of a decaying strip sequence past the grid edge.
double edge_tail(double last, double previous, double spacing) {
    if (last == 0.0) {
        return 0.0;
    }
    const double ratio = last / previous;
    if (!(ratio < 1.0) || !(ratio > 0.0)) {
        return std::numeric_limits<double>::infinity();
    }
    return last * spacing * ratio / (1.0 - ratio);
}

}  // namespace

std::string_view method_name(Method method) noexcept {
    switch (method) {
        case Method::integral: return "integral";
        case Method::radial_series: return "radial_series";
        case Method::axial_series: return "axial_series";
        case Method::asym_q1d: return "asym_q1d";
        case Method::asym_q2d: return "asym_q2d";
    }
    return "unknown";
}

void ProfileSamples::validate() const {
    if (coordinates.size() != values.size()) {
        throw std::invalid_argument("ProfileSamples: coordinates and values differ in length");
    }
    if (normalized && !(norm_constant > 0.0)) {
        throw std::invalid_argument("ProfileSamples: norm_constant must be > 0 once normalized");
    }
}

void SeriesTruncation::validate() const {
    if (max_terms < 1) {
        throw std::invalid_argument("SeriesTruncation: max_terms must be >= 1");
    }
    if (!(tail_tol > 0.0)) {
        throw std::invalid_argument("SeriesTruncation: tail_tol must be > 0");
    }
}

numerics::QuadratureSpec default_psi_spec() {
    numerics::QuadratureSpec spec;
    spec.abs_tol = 0.0;
    spec.rel_tol = 1e-12;
    spec.max_refinements = 20000;
    return spec;
}

double psi_integral(double rho, double z, double E, const TrapGeometry& g,
                    const numerics::QuadratureSpec& spec) {
    const double e0 = ground(g);
    check_finite(rho, "rho");
    check_finite(z, "z");
    if (!(E < e0)) {
        throw std::domain_error("psi_integral requires E < E0 = " + std::to_string(e0));
    }
    if (rho < 0.0) {
        throw std::invalid_argument("psi_integral requires rho >= 0");
    }
    const double r2 = rho * rho + z * z;
    if (r2 == 0.0) {
        throw std::domain_error("Psi diverges at r = 0; use contact_coefficient");
    }
    const double eta = g.eta;
    const double x = eta * rho * rho;
    const double z2 = z * z;
    auto f = [=](double t) {
        const double l = t * E - 0.5 * z2 / std::tanh(t) - 0.5 * x / std::tanh(eta * t) - 0.5 * log_sinh(t) -
                         log_sinh(eta * t);
        return std::exp(l);
    };
    numerics::QuadratureSpec local = spec;
    local.split_point = std::clamp(r2, 1e-12, 1.0);
    const auto hints = integral_hints(r2, e0 - E, eta);
    const auto r = numerics::integrate_semi_infinite(f, local, hints);
    if (!r.converged) {
        throw ConvergenceError("psi_integral quadrature did not converge", r.abs_error);
    }
    return eta * r.value / std::pow(2.0 * kPi, 1.5);
}

double psi_series_radial(double rho, double z, double E, const TrapGeometry& g, const SeriesTruncation& trunc) {
    const double ecal = E - ground(g);
    trunc.validate();
    check_finite(rho, "rho");
    check_finite(z, "z");
    if (rho < 0.0) {
        throw std::invalid_argument("psi_series_radial requires rho >= 0");
    }
    if (rho == 0.0 && z == 0.0) {
        throw std::domain_error("Psi diverges at r = 0; use contact_coefficient");
    }
    const double eta = g.eta;
    const double x = eta * rho * rho;
    const double w = z * z;

    double sum = 0.0;
    double l_prev = 0.0;
    double l_cur = 1.0;
    double v_prev = 0.0;
    double envelope = 0.0;
    double tail = std::numeric_limits<double>::infinity();
    for (int m = 0; m < trunc.max_terms; ++m) {
        if (m > 0) {
            const double next = ((2.0 * m - 1.0 - x) * l_cur - (m - 1.0) * l_prev) / m;
            l_prev = l_cur;
            l_cur = next;
        }
        const double a = eta * m - 0.5 * ecal;
        const double v = specfun::gamma_kummer_u(a, 0.5, w);
        sum += l_cur * v;
        envelope = std::max(0.9 * envelope, std::abs(l_cur));
        if (a > 0.0 && m > 0 && v_prev > 0.0) {
            const double ratio = v / v_prev;
            if (ratio < 1.0) {
                tail = 2.0 * envelope * v * ratio / (1.0 - ratio);
                if (tail <= trunc.tail_tol * std::abs(sum)) {
                    return eta * std::exp(-0.5 * (x + w)) / (2.0 * kPi * kSqrtPi) * sum;
                }
            }
        }
        v_prev = v;
    }
    series_failure("radial", tail / std::abs(sum));
}

double psi_series_axial(double rho, double z, double E, const TrapGeometry& g, const SeriesTruncation& trunc) {
    const double ecal = E - ground(g);
    trunc.validate();
    check_finite(rho, "rho");
    check_finite(z, "z");
    if (!(rho > 0.0)) {
        throw std::domain_error("psi_series_axial requires rho > 0");
    }
    const double eta = g.eta;
    const double x = eta * rho * rho;
    const double gauss = std::exp(-0.5 * z * z);

    // h_n = H_n(z) / sqrt(2^n n!)
    double h_prev = 0.0;
    double h_cur = 1.0;
    int n = 0;
    auto advance = [&] {
        const double next = std::sqrt(2.0 / (n + 1.0)) * z * h_cur - std::sqrt(n / (n + 1.0)) * h_prev;
        h_prev = h_cur;
        h_cur = next;
        ++n;
    };

    double sum = 0.0;
    double sqrt_c = 1.0;
    double v_prev = 0.0;
    double tail = std::numeric_limits<double>::infinity();
    for (int k = 0; k < trunc.max_terms; ++k) {
        if (k > 0) {
            advance();
            advance();
            sqrt_c *= std::sqrt((2.0 * k - 1.0) / (2.0 * k));
        }
        const double a = (k - 0.5 * ecal) / eta;
        const double v = specfun::gamma_kummer_u(a, 1.0, x);
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        sum += sign * sqrt_c * h_cur * gauss * v;
        if (a > 0.0 && k > 0 && v_prev > 0.0) {
            const double ratio = v / v_prev;
            if (ratio < 1.0) {
                tail = kHermiteEnvelope * sqrt_c * v * ratio / (1.0 - ratio);
                if (tail <= trunc.tail_tol * std::abs(sum)) {
                    return std::exp(-0.5 * x) / (2.0 * kPi * kSqrtPi) * sum;
                }
            }
        }
        v_prev = v;
    }
    series_failure("axial", tail / std::abs(sum));
}

double psi_axis(double z, double E, const TrapGeometry& g) {
    const double e0 = ground(g);
    check_finite(z, "z");
    if (z == 0.0) {
        throw std::domain_error("Psi diverges at r = 0; use contact_coefficient");
    }
    const double ecal = E - e0;
    const int modes = axis_mode_count(ecal, g.eta);
    const double rest = psi_integral(0.0, z, E - 2.0 * g.eta * modes, g);
    return axis_modes(z, ecal, g, modes) + rest;
}

Method select_method(double rho, double z, double E, const TrapGeometry& g) {
    const double e0 = ground(g);
    if (rho == 0.0 && z == 0.0) {
        throw std::domain_error("Psi diverges at r = 0; use contact_coefficient");
    }
    if (E < e0 || rho < 1e-6) {
        return Method::integral;
    }
    if (z == 0.0) {
        return Method::axial_series;
    }
    return g.eta >= 1.0 ? Method::radial_series : Method::axial_series;
}

double psi(double rho, double z, double E, const TrapGeometry& g, const PsiOptions& options) {
    const Method method = options.method.value_or(select_method(rho, z, E, g));
    switch (method) {
        case Method::integral:
            if (E >= ground(g) && rho < 1e-6) {
                return psi_axis(z, E, g);
            }
            return psi_integral(rho, z, E, g, options.quadrature);
        case Method::radial_series:
            return psi_series_radial(rho, z, E, g, options.truncation);
        case Method::axial_series:
            return psi_series_axial(rho, z, E, g, options.truncation);
        case Method::asym_q1d:
        case Method::asym_q2d: {
            const auto profile = method == Method::asym_q1d ? profile_quasi1d : profile_quasi2d;
            if (rho == 0.0) {
                return profile(Axis::axial, z, E, g);
            }
            if (z == 0.0) {
                return profile(Axis::radial, rho, E, g);
            }
            throw std::domain_error("asymptotic profiles exist only on the axes");
        }
    }
    throw std::invalid_argument("unknown method");
}

double profile_quasi1d(Axis axis, double coordinate, double E, const TrapGeometry& g) {
    const double ecal = E - ground(g);
    check_finite(coordinate, "coordinate");
    if (!(ecal < 0.0)) {
        throw std::domain_error("asymptotic profiles require E < E0");
    }
    const double eta = g.eta;
    const double xi = -0.5 * ecal;
    const double c = std::abs(coordinate);
    if (axis == Axis::radial) {
        if (coordinate == 0.0) {
            throw std::domain_error("radial profile diverges at rho = 0");
        }
        const double zeta = specfun::hurwitz_zeta(0.5, xi / eta);
        return std::exp(-0.5 * eta * c * c) * (1.0 / c + std::sqrt(eta) * zeta) / (2.0 * kPi);
    }
    if (coordinate == 0.0) {
        throw std::domain_error("axial profile diverges at z = 0");
    }
    double sum = 0.0;
    for (int m = 0; m < kExplicitTerms; ++m) {
        const double s = std::sqrt(m * eta + xi);
        sum += std::exp(-2.0 * c * s) / s;
    }
    // sum_(m >= M) ~ integral from M - 1/2
    const double s_tail = std::sqrt((kExplicitTerms - 0.5) * eta + xi);
    sum += std::exp(-2.0 * c * s_tail) / (eta * c);
    return eta / (2.0 * kPi) * sum;
}

double profile_quasi2d(Axis axis, double coordinate, double E, const TrapGeometry& g) {
    const double ecal = E - ground(g);
    check_finite(coordinate, "coordinate");
    if (!(ecal < 0.0)) {
        throw std::domain_error("asymptotic profiles require E < E0");
    }
    const double xi = -0.5 * ecal;
    const double c = std::abs(coordinate);
    if (axis == Axis::axial) {
        if (coordinate == 0.0) {
            throw std::domain_error("axial profile diverges at z = 0");
        }
        return std::exp(-0.5 * c * c) / (2.0 * kPi) * (1.0 / c - (spectral::phi(xi) + std::log(xi)) / kSqrtPi);
    }
    if (coordinate == 0.0) {
        throw std::domain_error("radial profile diverges at rho = 0");
    }
    double sum = 0.0;
    double weight = 1.0;
    for (int m = 0; m < kExplicitTerms; ++m) {
        if (m > 0) {
            weight *= (2.0 * m - 1.0) / (2.0 * m);
        }
        sum += weight * specfun::bessel_k0(2.0 * c * std::sqrt(m + xi));
    }
    const double s0 = std::sqrt(kExplicitTerms - 0.5 + xi);
    if (2.0 * c * s0 < 700.0) {
        auto f = [=](double s) {
            const double m = s * s - xi;
            return 2.0 * s * specfun::gamma_ratio_value(m + 0.5, m + 1.0) / kSqrtPi *
                   specfun::bessel_k0(2.0 * c * s);
        };
        numerics::QuadratureSpec spec;
        spec.abs_tol = 1e-15 * sum;
        spec.rel_tol = 1e-12;
        const double s1 = s0 + 40.0 / c;
        const std::array<double, 3> breaks = {s0 + 1.0 / c, s0 + 4.0 / c, s0 + 12.0 / c};
        const auto r = numerics::integrate(f, s0, s1, spec, breaks);
        if (!r.converged) {
            throw ConvergenceError("quasi-2D radial tail did not converge", r.abs_error);
        }
        sum += r.value;
    }
    return sum / (kPi * kSqrtPi);
}

double characteristic_length(Axis axis, double E, const TrapGeometry& g) {
    const double ecal = E - ground(g);
    if (!(ecal < 0.0)) {
        throw std::domain_error("characteristic_length requires E < E0");
    }
    const bool elongated = g.eta >= 1.0;
    if ((axis == Axis::axial) == elongated) {
        return 1.0 / std::sqrt(-2.0 * ecal);
    }
    return axis == Axis::radial ? 1.0 / std::sqrt(g.eta) : 1.0;
}

ProfileSamples normalize(const ProfileSamples& samples, const TrapGeometry& g, const NormalizeOptions& options) {
    g.validate();
    samples.validate();
    const Grid grid = tensor_grid(samples);
    const std::size_t nr = grid.rho.size();
    const std::size_t nz = grid.z.size();
    for (std::size_t i = 0; i < nr; ++i) {
        if (grid.rho[i] == 0.0) {
            continue;
        }
        for (std::size_t j = 0; j < nz; ++j) {
            if (!std::isfinite(grid.values[i][j])) {
                throw std::invalid_argument("normalize: non-finite sample off the rho = 0 row");
            }
        }
    }
    const bool mirrored = grid.z.front() >= 0.0;
    const double mirror = mirrored ? 2.0 : 1.0;

    // Psi ~ A / (2 pi r) + B + C r near the origin.
    double amp = 0.0;
    double offset = 0.0;
    if (options.contact_singularity) {
        std::size_t j0 = 0;
        for (std::size_t j = 1; j < nz; ++j) {
            if (std::abs(grid.z[j]) < std::abs(grid.z[j0])) {
                j0 = j;
            }
        }
        std::size_t i0 = grid.rho.front() == 0.0 ? 1 : 0;
        if (i0 + 3 > nr) {
            throw std::invalid_argument("normalize needs three rho > 0 values for the contact fit");
        }
        std::array<std::array<double, 4>, 3> m{};
        for (std::size_t k = 0; k < 3; ++k) {
            const double r = std::hypot(grid.rho[i0 + k], grid.z[j0]);
            m[k] = {1.0 / (2.0 * kPi * r), 1.0, r, grid.values[i0 + k][j0]};
        }
        for (std::size_t col = 0; col < 3; ++col) {
            std::size_t piv = col;
            for (std::size_t row = col + 1; row < 3; ++row) {
                if (std::abs(m[row][col]) > std::abs(m[piv][col])) {
                    piv = row;
                }
            }
            std::swap(m[col], m[piv]);
            for (std::size_t row = 0; row < 3; ++row) {
                if (row != col) {
                    const double f = m[row][col] / m[col][col];
                    for (std::size_t c = col; c < 4; ++c) {
                        m[row][c] -= f * m[col][c];
                    }
                }
            }
        }
        amp = m[0][3] / m[0][0];
        offset = m[1][3] / m[1][1];
    }
    auto singular_density = [=](double r) {
        return std::exp(-r * r) * (amp * amp / (4.0 * kPi * kPi * r * r) + amp * offset / (kPi * r));
    };
    const double singular_total = amp * amp / (2.0 * kSqrtPi) + 2.0 * amp * offset;

    std::vector<double> column(nr, 0.0);
    std::vector<double> column_raw(nr, 0.0);
    for (std::size_t i = 0; i < nr; ++i) {
        const double rho = grid.rho[i];
        if (rho == 0.0) {
            continue;
        }
        const auto& v = grid.values[i];
        column[i] = rho * trapezoid(grid.z, [&](std::size_t j) {
            return v[j] * v[j] - singular_density(std::hypot(rho, grid.z[j]));
        });
        column_raw[i] = rho * trapezoid(grid.z, [&](std::size_t j) { return v[j] * v[j]; });
    }
    const double norm =
        2.0 * kPi * mirror * trapezoid(grid.rho, [&](std::size_t i) { return column[i]; }) + singular_total;
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw std::invalid_argument("normalize: the sampled norm is not positive");
    }

    auto row_integral = [&](std::size_t j) {
        return trapezoid(grid.rho, [&](std::size_t i) {
            const double v = grid.values[i][j];
            return grid.rho[i] == 0.0 ? 0.0 : grid.rho[i] * v * v;
        });
    };
    double tail = edge_tail(column_raw[nr - 1], column_raw[nr - 2], grid.rho[nr - 1] - grid.rho[nr - 2]) * mirror;
    tail += edge_tail(row_integral(nz - 1), row_integral(nz - 2), grid.z[nz - 1] - grid.z[nz - 2]) * mirror;
    if (!mirrored) {
        tail += edge_tail(row_integral(0), row_integral(1), grid.z[1] - grid.z[0]);
    }
    const double tail_fraction = 2.0 * kPi * tail / norm;
    if (!(tail_fraction <= options.max_tail_fraction)) {
        throw ConvergenceError("normalize: estimated norm outside the grid is " + std::to_string(tail_fraction) +
                                   " of the total; extend the grid",
                               tail_fraction);
    }

    ProfileSamples out = samples;
    const double scale = 1.0 / std::sqrt(norm);
    for (double& v : out.values) {
        v *= scale;
    }
    out.normalized = true;
    out.norm_constant = samples.norm_constant * scale;
    return out;
}

double contact_coefficient(double E, const TrapGeometry& g) {
    const double e0 = ground(g);
    check_finite(E, "E");
    const double ecal = E - e0;
    const int modes = axis_mode_count(ecal, g.eta);
    const double e_rest = E - 2.0 * g.eta * modes;
    constexpr int kLevels = 7;
    std::array<double, kLevels> samples{};
    for (int k = 0; k < kLevels; ++k) {
        const double z = 0.1 / std::ldexp(1.0, k);
        samples[k] = axis_modes(z, ecal, g, modes) + axis_regular_part(z, e_rest, g);
    }
    const auto ext = numerics::richardson_limit(samples);
    if (!(ext.error <= 1e-9 * std::max(1.0, std::abs(ext.value)))) {
        throw ConvergenceError("contact coefficient extrapolation did not settle", ext.error);
    }
    return ext.value;
}

double scattering_length_from_contact(double coefficient) {
    if (coefficient == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return -1.0 / (std::sqrt(2.0) * kPi * coefficient);
}

numerics::Extrapolation contact_amplitude(double E, const TrapGeometry& g, double theta) {
    const double e0 = ground(g);
    check_finite(theta, "theta");
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    if (!(E < e0) && std::abs(s) > 0.0) {
        throw std::domain_error("contact_amplitude off the axis requires E < E0");
    }
    constexpr int kLevels = 8;
    std::array<double, kLevels> samples{};
    for (int k = 0; k < kLevels; ++k) {
        const double r = 0.05 / std::ldexp(1.0, k);
        const double value = std::abs(s) > 0.0 ? psi_integral(std::abs(r * s), r * c, E, g) : psi_axis(r * c, E, g);
        samples[k] = 2.0 * kPi * r * value;
    }
    return numerics::richardson_limit(samples);
}

}  // namespace twobody::wavefn
