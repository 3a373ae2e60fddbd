#pragma once

// Relative-motion wave function of the trapped pair (m_z = 0, not normalized):
//
//   Psi(rho, z) = eta / (2 pi)^(3/2) integral_0^inf dt
//                 exp[t E - z^2/2 coth t - eta rho^2/2 coth(eta t)] / (sqrt(sinh t) sinh(eta t)),
//
// which behaves like 1 / (2 pi r) at the origin. The integral needs E < E0;
// the two mode expansions below hold for any E off the noninteracting levels.
// Lengths are in units of the axial oscillator length.

#include <optional>
#include <string_view>
#include <vector>

#include "twobody/numerics.hpp"
#include "twobody/solver.hpp"

namespace twobody::wavefn {

using solver::TrapGeometry;

enum class Method { integral, radial_series, axial_series, asym_q1d, asym_q2d };

std::string_view method_name(Method method) noexcept;

enum class Axis { axial, radial };

struct Point {
    double rho = 0.0;
    double z = 0.0;
};

struct ProfileSamples {
    std::vector<Point> coordinates;
    std::vector<double> values;
    Method method = Method::integral;
    bool normalized = false;
    /// Factor the raw values were multiplied by (1 until normalized).
    double norm_constant = 1.0;

    void validate() const;
};

struct SeriesTruncation {
    int max_terms = 200;
    /// Stop once the estimated remainder is below tail_tol * |partial sum|.
    double tail_tol = 1e-10;

    void validate() const;
};

numerics::QuadratureSpec default_psi_spec();

/// The integral above. Requires E < E0 and (rho, z) != (0, 0).
double psi_integral(double rho, double z, double E, const TrapGeometry& g,
                    const numerics::QuadratureSpec& spec = default_psi_spec());

/// Transverse oscillator modes times the axial pair solution:
///   eta e^(-(eta rho^2 + z^2)/2) / (2 pi^(3/2)) sum_m L_m(eta rho^2) V(eta m - Ecal/2, 1/2, z^2),
/// V(a, b, x) = Gamma(a) U(a, b, x), Ecal = E - E0. This is the same sum as
/// 2^(m eta - Ecal/2) Gamma((2 eta m - Ecal)/2) D_(Ecal - 2 eta m)(|z| sqrt 2) with
/// the powers of two cancelled. Slow near z = 0.
double psi_series_radial(double rho, double z, double E, const TrapGeometry& g,
                         const SeriesTruncation& trunc = {});

/// Axial oscillator modes times the transverse pair solution:
///   e^(-(eta rho^2 + z^2)/2) / (2 pi^(3/2)) sum_k (-1)^k H_2k(z) / (4^k k!) V(k/eta - Ecal/(2 eta), 1, eta rho^2).
/// Rejects rho = 0 (logarithmic U limit); slow near rho = 0.
double psi_series_axial(double rho, double z, double E, const TrapGeometry& g,
                        const SeriesTruncation& trunc = {});

/// Psi(0, z) for any E off the poles. The lowest transverse modes, whose
/// thresholds lie below E + eta/2, are summed in closed form; the rest is
/// the integral with those modes removed, which converges.
double psi_axis(double z, double E, const TrapGeometry& g);

/// Integral for E < E0 off the origin, the axis function near rho = 0,
/// the axial series at z = 0, otherwise the radial series for eta >= 1 and
/// the axial series for eta < 1.
Method select_method(double rho, double z, double E, const TrapGeometry& g);

struct PsiOptions {
    std::optional<Method> method;
    SeriesTruncation truncation;
    numerics::QuadratureSpec quadrature = default_psi_spec();
};

double psi(double rho, double z, double E, const TrapGeometry& g, const PsiOptions& options = {});

/// eta >> 1, E < E0. Axial: (eta / 2 pi) sum_m exp(-2|z| s_m) / s_m, s_m = sqrt(m eta - Ecal/2)
/// (z = 0 rejected). Radial: e^(-eta rho^2/2) [1/rho + sqrt(eta) zeta(1/2, -Ecal/(2 eta))] / (2 pi)
/// (rho = 0 rejected).
double profile_quasi1d(Axis axis, double coordinate, double E, const TrapGeometry& g);

/// eta << 1, E < E0. Radial: pi^(-3/2) sum_m c_m K0(2 rho sqrt(m - Ecal/2)),
/// c_m = (2m)! / (2^m m!)^2 (rho = 0 rejected). Axial:
/// e^(-z^2/2) [1/|z| - (Phi(-Ecal/2) + log(-Ecal/2)) / sqrt(pi)] / (2 pi) (z = 0 rejected).
double profile_quasi2d(Axis axis, double coordinate, double E, const TrapGeometry& g);

/// Length over which the ground profile along `axis` decays for E < E0:
/// 1/sqrt(-2 Ecal) along the weakly confined direction, the oscillator length
/// (1/sqrt(eta) radially, 1 axially) along the tight one. eta >= 1 counts as elongated.
double characteristic_length(Axis axis, double E, const TrapGeometry& g);

struct NormalizeOptions {
    /// Subtract the 1/(2 pi r) contact singularity (amplitude fitted from the
    /// samples nearest the origin) before the grid quadrature.
    bool contact_singularity = true;
    /// Largest accepted estimate of the norm lying outside the grid.
    double max_tail_fraction = 1e-4;
};

/// Scales samples on a tensor grid rho_i x z_j so that
/// 2 pi integral rho drho dz |Psi|^2 = 1. A grid with z >= 0 only is
/// mirrored. Rows at rho = 0 carry no weight and may hold any value.
/// Throws std::invalid_argument for a malformed grid and ConvergenceError
/// when the tail estimate exceeds the threshold.
ProfileSamples normalize(const ProfileSamples& samples, const TrapGeometry& g,
                         const NormalizeOptions& options = {});

/// lim_(r -> 0) d/dr (r Psi) along the z axis, by Richardson extrapolation of
/// Psi(0, z) - 1/(2 pi z). Equals -1 / (sqrt(2) pi a) at an eigenenergy.
double contact_coefficient(double E, const TrapGeometry& g);

/// Scattering length whose boundary condition the contact coefficient encodes.
double scattering_length_from_contact(double coefficient);

/// lim_(r -> 0) 2 pi r Psi along the direction at polar angle theta from the
/// z axis, by Richardson extrapolation. Requires E < E0 unless theta = 0.
numerics::Extrapolation contact_amplitude(double E, const TrapGeometry& g, double theta);

}  // namespace twobody::wavefn
