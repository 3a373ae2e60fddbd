#include "twobody/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace twobody::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK dqk21).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    double a = 0.0;
    double b = 0.0;
    double value = 0.0;
    double error = 0.0;
    double resabs = 0.0;
};

struct ByError {
    bool operator()(const Segment& x, const Segment& y) const { return x.error < y.error; }
};

double checked_eval(const ScalarFunction& f, double t) {
    const double v = f(t);
    if (!std::isfinite(v)) {
        throw std::domain_error("integrand is not finite at t = " + std::to_string(t));
    }
    return v;
}

Segment gauss_kronrod(const ScalarFunction& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::array<double, 10> f1{};
    std::array<double, 10> f2{};

    const double fc = checked_eval(f, center);
    double resk = kWgk[10] * fc;
    double resg = 0.0;
    double resabs = kWgk[10] * std::abs(fc);
    for (std::size_t j = 0; j < 5; ++j) {
        const std::size_t jtw = 2 * j + 1;
        const double dx = half * kXgk[jtw];
        f1[jtw] = checked_eval(f, center - dx);
        f2[jtw] = checked_eval(f, center + dx);
        resg += kWg[j] * (f1[jtw] + f2[jtw]);
        resk += kWgk[jtw] * (f1[jtw] + f2[jtw]);
        resabs += kWgk[jtw] * (std::abs(f1[jtw]) + std::abs(f2[jtw]));
    }
    for (std::size_t j = 0; j < 5; ++j) {
        const std::size_t jtwm1 = 2 * j;
        const double dx = half * kXgk[jtwm1];
        f1[jtwm1] = checked_eval(f, center - dx);
        f2[jtwm1] = checked_eval(f, center + dx);
        resk += kWgk[jtwm1] * (f1[jtwm1] + f2[jtwm1]);
        resabs += kWgk[jtwm1] * (std::abs(f1[jtwm1]) + std::abs(f2[jtwm1]));
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[10] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 10; ++j) {
        resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }

    const double h = std::abs(half);
    Segment s{a, b, resk * half, std::abs((resk - resg) * half), resabs * h};
    resasc *= h;
    if (resasc != 0.0 && s.error != 0.0) {
        s.error = resasc * std::min(1.0, std::pow(200.0 * s.error / resasc, 1.5));
    }
    if (s.resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
        s.error = std::max(50.0 * kEps * s.resabs, s.error);
    }
    return s;
}

bool roundoff_limited(const Segment& s) {
    const double width = std::abs(s.b - s.a);
    const double scale = std::max(std::abs(s.a), std::abs(s.b));
    return width <= 64.0 * kEps * std::max(scale, 1e-300) ||
           s.error <= 50.0 * kEps * s.resabs * 1.0001;
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || !(abs_tol + rel_tol > 0.0)) {
        throw std::invalid_argument("quadrature tolerances must be >= 0 with a positive sum");
    }
    if (!std::isfinite(split_point) || !(split_point > 0.0)) {
        throw std::invalid_argument("quadrature split point must be finite and positive");
    }
    if (max_refinements < 0) {
        throw std::invalid_argument("max_refinements must be non-negative");
    }
}

QuadratureResult integrate(const ScalarFunction& f, double a, double b,
                           const QuadratureSpec& spec, std::span<const double> breakpoints) {
    spec.validate();
    if (!(a < b)) {
        if (a == b) {
            return {0.0, 0.0, true, 0};
        }
        QuadratureResult r = integrate(f, b, a, spec, breakpoints);
        r.value = -r.value;
        return r;
    }

    std::vector<double> edges{a};
    for (double p : breakpoints) {
        if (p > a && p < b) {
            edges.push_back(p);
        }
    }
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::priority_queue<Segment, std::vector<Segment>, ByError> active;
    std::vector<Segment> frozen;
    double total = 0.0;
    double total_error = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Segment s = gauss_kronrod(f, edges[i], edges[i + 1]);
        total += s.value;
        total_error += s.error;
        active.push(s);
    }

    QuadratureResult result;
    int refinements = 0;
    while (true) {
        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
        if (total_error <= tol) {
            result.converged = true;
            break;
        }
        if (active.empty()) {
            // Every remaining contribution sits at the rounding floor.
            result.converged = true;
            break;
        }
        if (refinements >= spec.max_refinements) {
            break;
        }
        Segment worst = active.top();
        active.pop();
        if (roundoff_limited(worst)) {
            frozen.push_back(worst);
            continue;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        Segment left = gauss_kronrod(f, worst.a, mid);
        Segment right = gauss_kronrod(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        active.push(left);
        active.push(right);
        ++refinements;
    }

    // Recompute the sums to shed accumulated update error.
    double value = 0.0;
    double error = 0.0;
    int count = static_cast<int>(frozen.size() + active.size());
    for (const Segment& s : frozen) {
        value += s.value;
        error += s.error;
    }
    while (!active.empty()) {
        value += active.top().value;
        error += active.top().error;
        active.pop();
    }
    result.value = value;
    result.abs_error = error;
    result.intervals = count;
    return result;
}

QuadratureResult integrate_semi_infinite(const ScalarFunction& f, const QuadratureSpec& spec,
                                         std::span<const double> hints) {
    spec.validate();
    const double s = spec.split_point;
    // v in [0,1]: t = s v^2.  v in [1,2): u = 2 - v, t = s / u^2.
    auto mapped = [&f, s](double v) -> double {
        if (v <= 1.0) {
            if (v <= 0.0) {
                return 0.0;
            }
            return 2.0 * s * v * f(s * v * v);
        }
        const double u = 2.0 - v;
        if (u <= 0.0) {
            return 0.0;
        }
        const double t = s / (u * u);
        if (!std::isfinite(t)) {
            return 0.0;
        }
        return f(t) * 2.0 * s / (u * u * u);
    };

    std::vector<double> cuts{0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75};
    for (double t : hints) {
        if (!(t > 0.0) || !std::isfinite(t)) {
            continue;
        }
        cuts.push_back(t <= s ? std::sqrt(t / s) : 2.0 - std::sqrt(s / t));
    }
    return integrate(mapped, 0.0, 2.0, spec, cuts);
}

RootBracket RootBracket::from_signs(double lo, double hi, int f_lo_sign, int f_hi_sign) {
    if (!(lo < hi)) {
        throw std::invalid_argument("root bracket needs lo < hi");
    }
    if (f_lo_sign == 0 || f_hi_sign == 0 || (f_lo_sign > 0) == (f_hi_sign > 0)) {
        throw std::invalid_argument("root bracket has no sign change");
    }
    return {lo, hi, f_lo_sign > 0 ? 1 : -1, f_hi_sign > 0 ? 1 : -1};
}

RootBracket RootBracket::evaluate(const ScalarFunction& f, double lo, double hi) {
    const double flo = f(lo);
    const double fhi = f(hi);
    auto sign = [](double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); };
    if (std::isnan(flo) || std::isnan(fhi)) {
        throw std::invalid_argument("root bracket end evaluates to NaN");
    }
    return from_signs(lo, hi, sign(flo), sign(fhi));
}

double find_root_bracketed(const ScalarFunction& f, const RootBracket& bracket, double tol,
                           int max_iterations) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("root tolerance must be positive");
    }
    double a = bracket.lo;
    double b = bracket.hi;
    const int sa = bracket.f_lo_sign;
    double fa = std::numeric_limits<double>::quiet_NaN();
    double fb = std::numeric_limits<double>::quiet_NaN();

    int iter = 0;
    // Bisect until both ends carry evaluated values.
    while ((std::isnan(fa) || std::isnan(fb)) && iter < max_iterations) {
        const double m = 0.5 * (a + b);
        if (b - a <= tol) {
            return m;
        }
        const double fm = f(m);
        ++iter;
        if (fm == 0.0) {
            return m;
        }
        if ((fm > 0.0) == (sa > 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }

    double c = b;
    double fc = fb;
    double d = b - a;
    double e = d;
    for (; iter < max_iterations; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * kEps * std::abs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) {
            return b;
        }
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            const double s = fb / fa;
            double p;
            double q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) {
                q = -q;
            } else {
                p = -p;
            }
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
        fb = f(b);
        if (std::isnan(fb)) {
            throw std::domain_error("root function returned NaN");
        }
    }
    throw std::runtime_error("root finder exceeded its iteration limit");
}

namespace {

// Solves the small dense system m * x = rhs in place (partial pivoting).
template <std::size_t N>
std::array<double, N> solve_dense(std::array<std::array<double, N>, N> m, std::array<double, N> rhs) {
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < N; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) {
                piv = r;
            }
        }
        std::swap(m[col], m[piv]);
        std::swap(rhs[col], rhs[piv]);
        for (std::size_t r = col + 1; r < N; ++r) {
            const double factor = m[r][col] / m[col][col];
            for (std::size_t k = col; k < N; ++k) {
                m[r][k] -= factor * m[col][k];
            }
            rhs[r] -= factor * rhs[col];
        }
    }
    std::array<double, N> x{};
    for (std::size_t i = N; i-- > 0;) {
        double acc = rhs[i];
        for (std::size_t k = i + 1; k < N; ++k) {
            acc -= m[i][k] * x[k];
        }
        x[i] = acc / m[i][i];
    }
    return x;
}

// Limit of partial sums S(N_j) = S + sum_i A_i N_j^-(p-1+i) from four
// checkpoints at doubling lengths ending at `last`.
double richardson(const std::vector<double>& sums, std::size_t last, double p) {
    std::array<std::array<double, 4>, 4> m{};
    std::array<double, 4> rhs{};
    for (std::size_t r = 0; r < 4; ++r) {
        const std::size_t idx = last - 3 + r;
        const double scaled_n = std::ldexp(1.0, static_cast<int>(r) - 3);  // N / N_last
        m[r][0] = 1.0;
        for (std::size_t i = 1; i < 4; ++i) {
            m[r][i] = std::pow(scaled_n, -(p - 1.0 + static_cast<double>(i - 1)));
        }
        rhs[r] = sums[idx];
    }
    return solve_dense(m, rhs)[0];
}

}  // namespace

SeriesResult sum_series(const SeriesTerm& term, const SeriesOptions& options) {
    if (!(options.abs_tol >= 0.0) || !(options.rel_tol >= 0.0) ||
        !(options.abs_tol + options.rel_tol > 0.0)) {
        throw std::invalid_argument("series tolerances must be >= 0 with a positive sum");
    }
    if (options.max_terms < 1) {
        throw std::invalid_argument("series needs max_terms >= 1");
    }
    if (options.decay_exponent && !(*options.decay_exponent > 1.0)) {
        throw std::invalid_argument("algebraic decay exponent must exceed 1");
    }

    double sum = 0.0;
    double carry = 0.0;  // Kahan compensation
    double envelope = 0.0;
    double max_abs_sum = 0.0;
    int first_sign = 0;
    bool constant_sign = true;

    std::vector<double> sums;       // partial sums at N = 1, 2, 4, ...
    std::vector<double> envelopes;  // max |term| over (N/2, N]
    std::vector<double> exponents;  // local decay exponent per doubling
    std::vector<double> extrapolated;

    SeriesResult best;
    best.error = std::numeric_limits<double>::infinity();

    for (long n = 1; n <= options.max_terms; ++n) {
        const long k = options.first_index + n - 1;
        const double t = term(k);
        if (!std::isfinite(t)) {
            throw std::domain_error("series term " + std::to_string(k) + " is not finite");
        }
        const double y = t - carry;
        const double next = sum + y;
        carry = (next - sum) - y;
        sum = next;
        max_abs_sum = std::max(max_abs_sum, std::abs(sum));
        envelope = std::max(envelope, std::abs(t));
        if (t != 0.0) {
            const int sg = t > 0.0 ? 1 : -1;
            if (first_sign == 0) {
                first_sign = sg;
            } else if (sg != first_sign) {
                constant_sign = false;
            }
        }

        if ((n & (n - 1)) != 0) {
            continue;  // checkpoints at powers of two only
        }
        sums.push_back(sum);
        envelopes.push_back(envelope);
        envelope = 0.0;
        if (n < 4) {
            continue;
        }

        const double tol = std::max(options.abs_tol, options.rel_tol * std::abs(sum));
        const double roundoff = 4.0 * kEps * static_cast<double>(n) * max_abs_sum;
        const std::size_t j = envelopes.size() - 1;
        const double env_prev = envelopes[j - 1];
        const double env_cur = envelopes[j];

        if (env_cur == 0.0 && env_prev == 0.0) {
            return {sum, roundoff, n, true};
        }
        const double p_local =
            env_cur > 0.0 ? std::log2(env_prev / env_cur) : std::numeric_limits<double>::infinity();
        exponents.push_back(p_local);

        if (p_local > 1.0) {
            const double tail = 2.0 * env_cur * std::exp2(-p_local) * static_cast<double>(n) /
                                (p_local - 1.0);
            if (tail + roundoff <= tol) {
                return {sum, tail + roundoff, n, true};
            }
            if (tail + roundoff < best.error && !options.decay_exponent) {
                best = {sum, tail + roundoff, n, false};
            }
        }

        std::optional<double> p = options.decay_exponent;
        if (!p && constant_sign && exponents.size() >= 3) {
            const std::size_t e = exponents.size() - 1;
            const double spread = std::max({std::abs(exponents[e] - exponents[e - 1]),
                                            std::abs(exponents[e] - exponents[e - 2])});
            const double rounded = std::round(2.0 * exponents[e]) / 2.0;
            if (spread < 0.1 && rounded > 1.0 && rounded < 8.0 &&
                std::abs(exponents[e] - rounded) < 0.1) {
                p = rounded;
            }
        }
        if (p && sums.size() >= 4) {
            extrapolated.push_back(richardson(sums, sums.size() - 1, *p));
            if (extrapolated.size() >= 2) {
                const std::size_t e = extrapolated.size() - 1;
                const double err = 2.0 * std::abs(extrapolated[e] - extrapolated[e - 1]) + roundoff;
                if (err <= tol) {
                    return {extrapolated[e], err, n, true};
                }
                if (err < best.error) {
                    best = {extrapolated[e], err, n, false};
                }
            }
        } else {
            extrapolated.clear();
        }
    }

    if (!std::isfinite(best.error)) {
        best = {sum, std::abs(envelopes.empty() ? sum : envelopes.back()), options.max_terms, false};
    }
    best.converged = false;
    best.terms = options.max_terms;
    return best;
}

Extrapolation richardson_limit(std::span<const double> halving_samples, double first_power) {
    const std::size_t n = halving_samples.size();
    if (n == 0) {
        throw std::invalid_argument("richardson_limit needs at least one sample");
    }
    std::vector<double> row(halving_samples.begin(), halving_samples.end());
    Extrapolation out{row.back(), n > 1 ? std::abs(row[n - 1] - row[n - 2]) : 0.0};
    double power = first_power;
    for (std::size_t level = 1; level < n; ++level) {
        const double factor = std::pow(2.0, power);
        for (std::size_t i = 0; i + level < n; ++i) {
            row[i] = (factor * row[i + 1] - row[i]) / (factor - 1.0);
        }
        const std::size_t m = n - level;
        out.error = std::abs(row[m - 1] - out.value);
        out.value = row[m - 1];
        power += 1.0;
    }
    return out;
}

}  // namespace twobody::numerics
