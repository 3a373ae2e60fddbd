#pragma once

// Special functions used by the spectral and wavefunction layers. Real
// arguments only. Functions that have poles raise twobody::PoleError there.

#include <complex>

namespace twobody::specfun {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kSqrtPi = 1.77245385090551602729816748334114518;
inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

bool is_nonpositive_integer(double x) noexcept;

/// sin(pi x) with exact zeros at the integers.
double sin_pi(double x) noexcept;
double cos_pi(double x) noexcept;

struct SignedLog {
    double log_abs = 0.0;
    int sign = 1;
};

/// log|Gamma(x)| and the sign of Gamma(x).
SignedLog ln_gamma(double x);

/// Gamma(x); overflows to +-inf for large x like std::tgamma.
double gamma(double x);

struct GammaRatio {
    double value = 0.0;
    bool is_pole = false;
    bool is_zero = false;
};

/// Gamma(num) / Gamma(den), computed without forming either factor.
/// Flags a pole of the numerator (is_pole) or of the denominator (is_zero);
/// throws std::invalid_argument when both are poles.
GammaRatio gamma_ratio(double num, double den);

/// Gamma(num) / Gamma(den) as a number; PoleError if the numerator is at a pole.
double gamma_ratio_value(double num, double den);

/// Digamma psi(x).
double digamma(double x);

/// Hurwitz zeta(s, q) for real s != 1 and q > 0 (Euler-Maclaurin).
double hurwitz_zeta(double s, double q);

/// zeta(1/2, q), q > 0.
double hurwitz_zeta_half(double q);

/// 2F1(1, x; x + 1/2; z) for |z| = 1, z != 1, via the Gauss continued fraction
/// (analytic continuation; the hypergeometric series diverges there). Falls
/// back to the Euler integral when the fraction does not settle.
std::complex<double> hyp2f1_one(double x, std::complex<double> z);

/// Same function from the Euler integral representation (x > 0 only).
std::complex<double> hyp2f1_one_integral(double x, std::complex<double> z);

/// B(x, 1/2) * 2F1(1, x; x + 1/2; z) = integral_0^1 t^(x-1) (1-t)^(-1/2) / (1 - z t) dt,
/// continued to x <= 0. Finite where 2F1 has its poles (x + 1/2 a nonpositive
/// integer); PoleError for x a nonpositive integer.
std::complex<double> beta_hyp2f1_one(double x, std::complex<double> z);

/// Tricomi U(a, b, x) for b in {1/2, 1, 3/2} and x > 0.
double kummer_u(double a, double b, double x);

/// Gamma(a) * U(a, b, x). Stays representable where Gamma(a) alone overflows.
/// x = 0 is accepted for b < 1 (finite limit).
double gamma_kummer_u(double a, double b, double x);

/// Parabolic cylinder function D_nu(x), x >= 0.
double parabolic_cylinder_d(double nu, double x);

enum class PolyKind { laguerre, hermite };

/// Laguerre L_n(x) or physicists' Hermite H_n(x) by three-term recurrence.
double orthopoly(PolyKind kind, int degree, double x);

/// H_n(x) / sqrt(2^n n!), which stays finite for large n.
double hermite_normalized(int degree, double x);

/// Modified Bessel function K_0(x), x > 0.
double bessel_k0(double x);

}  // namespace twobody::specfun
