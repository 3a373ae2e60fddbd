#pragma once

// Eigenenergies of the trapped pair: -sqrt(2 pi) / a = F(-(E - E0) / 2, eta).
// Everything is written in the inverse scattering length so that unitarity
// (1/a = 0) is an ordinary point. Lengths are in units of the axial
// oscillator length, energies in units of hbar omega_z.

#include <functional>
#include <optional>
#include <vector>

#include "twobody/numerics.hpp"

namespace twobody::solver {

struct TrapGeometry {
    /// omega_perp / omega_z
    double eta = 1.0;

    void validate() const;
};

/// Built-in energy-dependent scattering length
///   delta0(k) = -atan(k a_bg) - atan(gamma k / (E - E_res)),  a_eff = -tan(delta0) / k,
/// which simplifies to a_eff(E) = (a_bg (E - E_res) + gamma) / (E - E_res - E a_bg gamma),
/// a rational function of E and therefore defined for E < 0 as well.
struct ResonanceParams {
    double a_bg = 0.0;
    double gamma = 0.0;
    double e_res = 0.0;

    void validate() const;
};

class InteractionModel {
public:
    enum class Kind { fixed, energy_dependent };

    /// Fixed scattering length; a = +-inf is unitarity, a = 0 is noninteracting.
    static InteractionModel fixed_length(double a);
    /// Fixed inverse scattering length (0 is unitarity).
    static InteractionModel fixed_inverse(double inv_a);
    /// Arbitrary a_eff(E). Zeros of a_eff are allowed (1/a_eff diverges there).
    static InteractionModel energy_dependent(std::function<double(double)> a_eff);
    /// Arbitrary 1/a_eff(E), which avoids dividing by a vanishing a_eff.
    static InteractionModel energy_dependent_inverse(std::function<double(double)> inv_a_eff);
    /// The built-in resonance model.
    static InteractionModel resonance(const ResonanceParams& params);

    Kind kind() const noexcept { return kind_; }
    bool noninteracting() const noexcept { return noninteracting_; }
    /// 1/a at energy E (constant for the fixed kind).
    double inverse_length(double energy) const;
    /// Energies where 1/a_eff diverges, when known in closed form.
    const std::vector<double>& singular_energies() const noexcept { return singular_; }
    const std::optional<ResonanceParams>& resonance_params() const noexcept { return resonance_; }

private:
    Kind kind_ = Kind::fixed;
    bool noninteracting_ = false;
    double inv_a_ = 0.0;
    std::function<double(double)> inv_a_eff_;
    std::vector<double> singular_;
    std::optional<ResonanceParams> resonance_;
};

struct EnergyWindow {
    double e_min = 0.0;
    double e_max = 0.0;

    void validate() const;
};

/// [E0 - 50, E0 + 4 (1 + eta) max_levels]
EnergyWindow default_window(const TrapGeometry& g, int max_levels);

struct EnergyLevel {
    double E = 0.0;
    /// -(E - E0) / 2
    double x = 0.0;
    /// Root bracket in x. For the fixed kind this is the pole interval of F,
    /// pulled in from the poles by a few 1e-9.
    numerics::RootBracket bracket;
    /// 0 for the interval above the top pole (E < E0), i for the i-th pole
    /// interval below it.
    int branch_index = 0;
    /// Set when the level is a pole energy returned for a = 0.
    bool noninteracting = false;
};

struct SolverOptions {
    /// Root tolerance in x.
    double root_tol = 1e-14;
    /// Largest x searched for a level below E0.
    double bound_x_max = 1e6;
    /// Samples per pole interval used to split brackets for energy-dependent models.
    int samples_per_interval = 64;
    /// Accepted residual |F + sqrt(2 pi) / a|.
    double residual_tol = 1e-8;
};

double ground_energy_offset(const TrapGeometry& g);

/// Levels with E in the window, ascending, at most max_levels of them. For a = 0
/// the pole energies are returned with `noninteracting` set.
std::vector<EnergyLevel> eigenenergies(const InteractionModel& model, const TrapGeometry& g,
                                       const EnergyWindow& window, int max_levels,
                                       const SolverOptions& options = {});

/// -1/(eta a) - zeta(1/2, 1) / sqrt(2 eta), written in 1/a.
double a1d_effective(double inv_a, const TrapGeometry& g);

/// exp[(Phi(0) - sqrt(2 pi) / a) / 2] / sqrt(2), written in 1/a.
double a2d_effective(double inv_a);

/// Roots of sqrt(2) a_1D = Gamma(y) / Gamma(y + 1/2), y = (E0 - E) / 2, solved
/// as Gamma(y + 1/2) / Gamma(y) = 1 / (sqrt(2) a_1D) so that a_1D = +-inf is regular.
std::vector<double> spectrum_1d_reference(double inv_a1d, const TrapGeometry& g,
                                          const EnergyWindow& window,
                                          const SolverOptions& options = {});

/// Roots of psi(y / eta) + log(2 a_2D^2 eta) = 0, y = (E0 - E) / 2.
std::vector<double> spectrum_2d_reference(double a2d, const TrapGeometry& g,
                                          const EnergyWindow& window,
                                          const SolverOptions& options = {});

/// Lowest level with E < E0. Throws NoRootError when there is none.
EnergyLevel bound_state_exact(const InteractionModel& model, const TrapGeometry& g,
                              const SolverOptions& options = {});

struct AsymptoticBoundState {
    double E = 0.0;
    /// False when eta is outside the regime the approximation is meant for
    /// (eta >= 10 for quasi-1D, eta <= 0.1 for quasi-2D).
    bool in_regime = true;
};

/// sqrt(2)/a + sqrt(eta) zeta(1/2, (E0 - E) / (2 eta)) = 0 for E < E0.
AsymptoticBoundState bound_state_quasi1d(double inv_a, const TrapGeometry& g,
                                         const SolverOptions& options = {});

/// sqrt(2 pi)/a = Phi((E0 - E) / 2) + log((E0 - E) / 2) for E < E0.
AsymptoticBoundState bound_state_quasi2d(double inv_a, const TrapGeometry& g,
                                         const SolverOptions& options = {});

/// Built-in model a_eff(E). PoleError where it diverges.
double resonance_a_eff(double energy, const ResonanceParams& params);

/// 1/a_eff(E) for the built-in model (zero where a_eff diverges).
double resonance_inverse_a_eff(double energy, const ResonanceParams& params);

/// Roots of F(-(E - E0)/2, eta) + sqrt(2 pi) / a_eff(E) = 0 in the window. Pole
/// intervals of F are split further at the model's known singular energies and
/// at sign changes found by sampling; candidate roots whose residual exceeds
/// options.residual_tol (divergences of 1/a_eff) are dropped.
std::vector<EnergyLevel> solve_self_consistent(const InteractionModel& model, const TrapGeometry& g,
                                               const EnergyWindow& window, int max_levels,
                                               const SolverOptions& options = {});

/// F(-(E - E0)/2, eta) + sqrt(2 pi) / a(E).
double residual(const InteractionModel& model, const TrapGeometry& g, double energy);

}  // namespace twobody::solver
