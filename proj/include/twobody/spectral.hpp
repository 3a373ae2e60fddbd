#pragma once

// The spectral function
//
//   F(x, eta) = integral_0^inf [eta e^(-x t) / (sqrt(1 - e^-t) (1 - e^(-eta t))) - t^(-3/2)] dt
//
// and its continuation to x <= 0. Eigenenergies of the trapped pair solve
// -sqrt(2 pi) / a = F(-(E - E0) / 2, eta) with E0 = 1/2 + eta. F has simple
// poles at x = -(j + k eta), j, k >= 0 (the noninteracting even levels).

#include <string_view>
#include <vector>

#include "twobody/numerics.hpp"

namespace twobody::spectral {

enum class Route { integral, cigar, pancake, spherical, recurrence, quasi1d, quasi2d };

std::string_view route_name(Route route) noexcept;

struct SpectralArgument {
    double x = 0.0;
    double eta = 1.0;

    /// Throws std::invalid_argument unless eta > 0 and both are finite.
    void validate() const;
};

struct SpectralValue {
    double value = 0.0;
    Route route = Route::integral;
    double est_error = 0.0;
};

/// Which form of the asymptotic expressions to use. `bound` is the variant
/// written for x > 0 (energies below E0).
enum class Branch { general, bound };

struct PoleGrid {
    /// Strictly decreasing, starting at 0.
    std::vector<double> poles;
};

/// Distance within which an argument counts as sitting on a pole.
inline constexpr double kPoleTolerance = 1e-9;

/// Default quadrature settings for the defining integral.
numerics::QuadratureSpec default_integral_spec();

/// The defining integral; x > 0 only.
SpectralValue f_integral(const SpectralArgument& arg,
                         const numerics::QuadratureSpec& spec = default_integral_spec());

/// Closed form for eta = n (integer), any x off the poles.
SpectralValue f_cigar(double x, int n);

/// Closed form for eta = 1/n (integer n), any x off the poles.
SpectralValue f_pancake(double x, int n);

/// eta = 1: -2 sqrt(pi) Gamma(x) / Gamma(x - 1/2).
SpectralValue f_spherical(double x);

/// F(x) = F(x + m eta) + sum_{i<m} eta sqrt(pi) Gamma(x + i eta) / Gamma(x + i eta + 1/2)
/// with the smallest m such that x + m eta >= max(eta, 1) / 2; the last F
/// comes from the integral.
SpectralValue f_recurrence_extend(const SpectralArgument& arg,
                                  const numerics::QuadratureSpec& spec = default_integral_spec());

/// Dispatcher: closed forms when eta or 1/eta is an integer (within 1e-12),
/// otherwise recurrence plus integral. PoleError within kPoleTolerance of a pole.
SpectralValue f_eval(const SpectralArgument& arg);

/// Large-eta asymptote
///   sqrt(pi eta) [zeta(1/2, 1 + x/eta) + sqrt(eta) Gamma(x) / Gamma(x + 1/2)],
/// or sqrt(pi eta) zeta(1/2, x/eta) for Branch::bound (x > 0).
/// Requires eta >= min_eta and x > -eta. est_error is the leading neglected
/// term (sqrt(pi)/8) eta^(-1/2) zeta(3/2, 1 + x/eta), plus the difference
/// between the two forms for Branch::bound.
SpectralValue f_quasi1d(const SpectralArgument& arg, Branch branch = Branch::general,
                        double min_eta = 10.0);

/// Small-eta asymptote -Phi(x) - log(eta) - psi(x / eta), or -Phi(x) - log(x)
/// for Branch::bound (x > 0). Requires eta <= max_eta and x > -1. The
/// neglected terms are O(eta); est_error is eta (plus the difference between
/// the two forms for Branch::bound), an order of magnitude only.
SpectralValue f_quasi2d(const SpectralArgument& arg, Branch branch = Branch::general,
                        double max_eta = 0.1);

/// Phi(x) = 2 - log(1 + x) + 2 sum_{k>=1} c_k [(k + 1/2) log((x + k) / (x + k + 1)) + 1],
/// c_k = (2k)! / (2^k k!)^2, for x > -1. Evaluated from the equivalent integral
///   Phi(x) = -integral_0^inf [(e^(-x t) ((1 - e^-t)^(-1/2) - 1) + e^-t) / t - t^(-3/2)] dt,
/// the small-eta limit of F(x, eta) + log(eta) + psi(x / eta).
double phi(double x);

struct SeriesPhi {
    double value = 0.0;
    double error = 0.0;
    long terms = 0;
    bool converged = false;
};

/// Phi(x) from the series itself, with tail extrapolation. The series needs
/// k >> x before its tail is regular, so this is practical for x up to a few.
SeriesPhi phi_series(double x, double abs_tol = 1e-10, long max_terms = 1L << 21);

/// Phi truncated after `terms` series terms (0 gives 2 - log(1 + x)).
double phi_partial(double x, long terms);

/// Poles -(j + k eta) >= x_min, descending, merged within 1e-12.
PoleGrid pole_grid(double eta, double x_min);

/// Pole of F(., eta) nearest to x.
double nearest_pole(double x, double eta);

}  // namespace twobody::spectral
