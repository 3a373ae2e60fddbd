#pragma once

// Command-line front end: argument and config parsing, the per-command table
// builders and CSV output. `run` is the whole program minus process setup.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twobody/acceptance.hpp"
#include "twobody/solver.hpp"
#include "twobody/wavefn.hpp"

namespace twobody::cli {

enum class Command { spectrum, bound, wavefunction, fig1, fig2, check };

enum ExitCode { kSuccess = 0, kUsage = 1, kNumerical = 2, kCheckFailed = 3 };

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown by parse for --help; carries the help text.
struct HelpRequested {
    std::string text;
};

struct RunConfig {
    Command command = Command::spectrum;
    double eta = 1.0;
    /// Single scattering length; replaces the 1/a grid when set.
    std::optional<double> a;
    double inv_a_min = -4.0;
    double inv_a_max = 4.0;
    int inv_a_steps = 161;
    int levels = 6;
    std::optional<double> window_min;
    std::optional<double> window_max;
    /// Coordinate grid for wave function tables. Unset ends fall back to
    /// [0, 4 l] below E0 (l from characteristic_length) and [0, 3] above.
    std::optional<double> grid_min;
    std::optional<double> grid_max;
    int grid_steps = 101;
    std::optional<wavefn::Axis> axis;
    std::optional<solver::ResonanceParams> resonance;
    /// Wave function energy; default is the lowest level for the given a
    /// (unitarity when a is unset).
    std::optional<double> energy;
    std::string out;
    unsigned threads = 0;
    /// Root tolerance in x and series tail tolerance.
    std::optional<double> tol;
    bool fast = false;
    std::optional<long> phi_terms;
    /// Criterion ids for `check`; empty selects the default suite.
    std::vector<int> criteria;

    /// Throws UsageError.
    void validate() const;
};

/// `args` excludes the program name. Throws UsageError with a message for
/// malformed input, conflicting flags and unknown config keys, HelpRequested
/// for --help.
RunConfig parse(const std::vector<std::string>& args);

/// Header plus rows; NaN cells are written as NA.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    void validate() const;
    std::string to_csv() const;
};

/// Evenly spaced, both ends included.
std::vector<double> grid(double lo, double hi, int steps);

/// 1/a values of the sweep (one value when a is fixed).
std::vector<double> inverse_length_grid(const RunConfig& cfg);

/// inv_a, E_1..E_n where E_k is the level on branch k - 1 (branch 0 lies below
/// E0, branch i in the i-th pole interval above it); NA when that branch is
/// outside the window. With a resonance: level, E in ascending order.
CsvTable run_spectrum(const RunConfig& cfg, std::ostream& log);

/// inv_a, E_exact, E_asymptotic, in_regime (1 or 0). Quasi-1D form for
/// eta >= 1, quasi-2D otherwise.
CsvTable run_bound(const RunConfig& cfg, std::ostream& log);

/// Energy the wave function commands use. Throws when there is none.
double wavefunction_energy(const RunConfig& cfg);

/// coordinate, psi_exact, psi_asymptotic along one axis.
CsvTable run_wavefunction(const RunConfig& cfg, wavefn::Axis axis, std::ostream& log);

/// inv_a, E_1..E_n, E_bound_asymptotic, R_1..R_n where R are the levels of
/// the 1D (eta >= 1) or 2D reference spectrum with the renormalized length,
/// numbered by branch as E. Without --window-min the window is extended down
/// to the bound level at the largest 1/a of the sweep.
CsvTable run_fig1(const RunConfig& cfg, std::ostream& log);

struct ProfileTables {
    CsvTable axial;
    CsvTable radial;
};

/// Both profiles at unitarity unless a or an energy is given.
ProfileTables run_fig2(const RunConfig& cfg, std::ostream& log);

/// Criteria run by `check`: the exact-identity and cross-route checks by
/// default, a quicker subset with `fast`, or the explicit list.
std::vector<int> check_selection(const RunConfig& cfg);

std::vector<acceptance::CriterionResult> run_check(const RunConfig& cfg);

/// Full program: parse, run, write output. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twobody::cli
