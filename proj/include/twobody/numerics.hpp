#pragma once

// Generic numerical kernels: adaptive Gauss-Kronrod quadrature (finite and
// semi-infinite), bracketed root finding and series summation with tail
// estimation. Everything here is a pure function of its arguments.

#include <functional>
#include <optional>
#include <span>

namespace twobody::numerics {

using ScalarFunction = std::function<double(double)>;
using SeriesTerm = std::function<double(long)>;

struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    /// Boundary between the singular head (0, split_point) and the tail.
    double split_point = 1.0;
    /// Upper bound on the number of subinterval bisections.
    int max_refinements = 4000;

    /// Throws std::invalid_argument when the invariants do not hold.
    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    bool converged = false;
    int intervals = 0;
};

/// Adaptive G10K21 quadrature over [a, b]. The optional `breakpoints` (inside
/// (a, b)) seed the initial partition.
QuadratureResult integrate(const ScalarFunction& f, double a, double b,
                           const QuadratureSpec& spec = {},
                           std::span<const double> breakpoints = {});

/// Integral of f over (0, inf).
///
/// The head (0, split_point) is integrated in u with t = u*u, which turns a
/// t^(-1/2) endpoint singularity into a bounded integrand. The tail uses
/// t = split_point / u^2, which maps t^(-3/2) decay onto a bounded integrand
/// and exponential decay onto a smooth one. Both pieces share one adaptive
/// error budget. `hints` are t-values where the integrand has structure; they
/// are added to the initial partition.
QuadratureResult integrate_semi_infinite(const ScalarFunction& f,
                                         const QuadratureSpec& spec = {},
                                         std::span<const double> hints = {});

/// Interval known to contain a sign change of a continuous function.
///
/// Only the signs at the ends are stored: the ends may sit next to a pole
/// where the function itself must not be evaluated.
struct RootBracket {
    double lo = 0.0;
    double hi = 0.0;
    int f_lo_sign = 0;
    int f_hi_sign = 0;

    /// Bracket from known end signs. Throws std::invalid_argument unless
    /// lo < hi and the signs are nonzero and opposite.
    static RootBracket from_signs(double lo, double hi, int f_lo_sign, int f_hi_sign);

    /// Bracket from evaluating f at both ends (rejects a missing sign change).
    static RootBracket evaluate(const ScalarFunction& f, double lo, double hi);
};

/// Brent's method. Starts by bisecting until both bracket ends carry an
/// evaluated function value, so the original ends are never evaluated.
/// Returns a point whose enclosing bracket is narrower than `tol` (plus a few
/// ulps), or an exact zero.
double find_root_bracketed(const ScalarFunction& f, const RootBracket& bracket,
                           double tol, int max_iterations = 400);

struct SeriesOptions {
    double abs_tol = 1e-12;
    double rel_tol = 0.0;
    long max_terms = 200000;
    long first_index = 0;
    /// Known algebraic decay |term(k)| ~ k^(-p). Enables Richardson
    /// extrapolation of the partial sums; estimated from the terms when absent.
    std::optional<double> decay_exponent;
};

struct SeriesResult {
    double value = 0.0;
    double error = 0.0;
    long terms = 0;
    bool converged = false;
};

/// Sum of term(k) for k >= first_index.
///
/// Fast-decaying series stop once the estimated remainder (from the decay
/// of the term envelope) is below tolerance. Slowly convergent algebraic
/// series are extrapolated from partial sums at doubling lengths, assuming a
/// remainder expansion in N^-(p-1), N^-p, N^-(p+1).
SeriesResult sum_series(const SeriesTerm& term, const SeriesOptions& options = {});

struct Extrapolation {
    double value = 0.0;
    /// Difference between the two best diagonal entries of the tableau.
    double error = 0.0;
};

/// Limit h -> 0 of g(h) from samples g(h0 / 2^k), k = 0..n-1, assuming
/// g(h) = g(0) + c1 h^p + c2 h^(p+1) + ... (Neville-Richardson tableau).
Extrapolation richardson_limit(std::span<const double> halving_samples, double first_power = 1.0);

}  // namespace twobody::numerics
