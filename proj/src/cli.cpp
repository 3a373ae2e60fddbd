#include "twobody/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "twobody/errors.hpp"

namespace twobody::cli {

namespace {

namespace sv = solver;
namespace wf = wavefn;

constexpr double kNA = std::numeric_limits<double>::quiet_NaN();

const std::vector<int> kDefaultCheck{1, 2, 3, 4, 5, 10, 11, 13};

sv::ResonanceParams parse_resonance(const std::string& text) {
    std::vector<double> v;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception&) {
            throw UsageError("--resonance expects \"a_bg,gamma,E_res\", got \"" + text + "\"");
        }
    }
    if (v.size() != 3) {
        throw UsageError("--resonance expects three comma-separated numbers, got \"" + text + "\"");
    }
    return {v[0], v[1], v[2]};
}

std::vector<int> parse_criteria(const std::string& text) {
    std::vector<int> ids;
    if (text == "all") {
        for (const auto& c : acceptance::criteria()) {
            ids.push_back(c.id);
        }
        return ids;
    }
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        int id = 0;
        try {
            id = std::stoi(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        const auto& list = acceptance::criteria();
        const bool known = std::any_of(list.begin(), list.end(), [id](const auto& c) { return c.id == id; });
        if (used != item.size() || !known) {
            throw UsageError("--criteria expects \"all\" or a list of ids 1..13, got \"" + text + "\"");
        }
        ids.push_back(id);
    }
    return ids;
}

sv::SolverOptions solver_options(const RunConfig& cfg) {
    sv::SolverOptions o;
    if (cfg.tol) {
        o.root_tol = *cfg.tol;
    }
    return o;
}

sv::EnergyWindow window(const RunConfig& cfg, const sv::TrapGeometry& g) {
    sv::EnergyWindow w = sv::default_window(g, cfg.levels);
    w.e_min = cfg.window_min.value_or(w.e_min);
    w.e_max = cfg.window_max.value_or(w.e_max);
    if (!(w.e_min < w.e_max)) {
        throw UsageError("energy window is empty");
    }
    return w;
}

std::string number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

using RowFn = std::function<std::vector<double>(std::size_t, std::vector<std::string>& notes)>;

// Rows are computed on a pool of workers and returned in input order; the
// notes of each row are logged in the same order.
std::vector<std::vector<double>> compute_rows(std::size_t n, unsigned threads, const RowFn& fn, std::ostream& log) {
    std::vector<std::vector<double>> rows(n);
    std::vector<std::vector<std::string>> notes(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            rows[i] = fn(i, notes[i]);
        }
    };
    unsigned count = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    count = static_cast<unsigned>(std::min<std::size_t>(count, std::max<std::size_t>(n, 1)));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < count; ++t) {
            pool.emplace_back(worker);
        }
        worker();
    }
    for (const auto& list : notes) {
        for (const auto& s : list) {
            log << "note: " << s << '\n';
        }
    }
    return rows;
}

std::vector<std::string> numbered(const std::string& prefix, int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) {
        names.push_back(prefix + std::to_string(i));
    }
    return names;
}

double bound_asymptotic(double inv_a, const sv::TrapGeometry& g, const sv::SolverOptions& o, bool* in_regime) {
    const auto b = g.eta >= 1.0 ? sv::bound_state_quasi1d(inv_a, g, o) : sv::bound_state_quasi2d(inv_a, g, o);
    if (in_regime) {
        *in_regime = b.in_regime;
    }
    return b.E;
}

void write_table(const CsvTable& table, const std::string& path, std::ostream& out) {
    table.validate();
    if (path.empty()) {
        out << table.to_csv();
        return;
    }
    std::ofstream file(path);
    if (!file) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    file << table.to_csv();
    if (!file) {
        throw std::runtime_error("failed writing " + path);
    }
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
    const std::string ext = ".csv";
    std::string stem = path;
    if (stem.size() > ext.size() && stem.compare(stem.size() - ext.size(), ext.size(), ext) == 0) {
        stem.resize(stem.size() - ext.size());
    }
    return stem + suffix + ext;
}

}  // namespace

void RunConfig::validate() const {
    auto finite = [](double v, const char* name) {
        if (!std::isfinite(v)) {
            throw UsageError(std::string(name) + " must be finite");
        }
    };
    finite(eta, "--eta");
    if (!(eta > 0.0)) {
        throw UsageError("--eta must be positive");
    }
    finite(inv_a_min, "--inv-a-min");
    finite(inv_a_max, "--inv-a-max");
    if (inv_a_steps < 1) {
        throw UsageError("--inv-a-steps must be at least 1");
    }
    if (inv_a_steps > 1 && !(inv_a_min < inv_a_max)) {
        throw UsageError("--inv-a-min must be below --inv-a-max");
    }
    if (a && std::isnan(*a)) {
        throw UsageError("--a must be a number");
    }
    if (levels < 1) {
        throw UsageError("--levels must be at least 1");
    }
    if (window_min) {
        finite(*window_min, "--window-min");
    }
    if (window_max) {
        finite(*window_max, "--window-max");
    }
    if (window_min && window_max && !(*window_min < *window_max)) {
        throw UsageError("--window-min must be below --window-max");
    }
    if (grid_steps < 2) {
        throw UsageError("--grid-steps must be at least 2");
    }
    if (grid_min && (!std::isfinite(*grid_min) || *grid_min < 0.0)) {
        throw UsageError("--grid-min must be a finite non-negative coordinate");
    }
    if (grid_max) {
        finite(*grid_max, "--grid-max");
    }
    if (grid_min && grid_max && !(*grid_min < *grid_max)) {
        throw UsageError("--grid-min must be below --grid-max");
    }
    if (energy) {
        finite(*energy, "--energy");
    }
    if (tol && !(*tol > 0.0 && *tol < 1.0)) {
        throw UsageError("--tol must lie in (0, 1)");
    }
    if (phi_terms && *phi_terms < 0) {
        throw UsageError("--phi-terms must be non-negative");
    }
    if (resonance) {
        if (command != Command::spectrum) {
            throw UsageError("--resonance applies to the spectrum command only");
        }
        try {
            resonance->validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--resonance: ") + e.what());
        }
    }
    if (energy && command != Command::wavefunction && command != Command::fig2) {
        throw UsageError("--energy applies to the wavefunction and fig2 commands only");
    }
    if (energy && a) {
        throw UsageError("--energy and --a both fix the energy; give one");
    }
}

RunConfig parse(const std::vector<std::string>& args) {
    RunConfig cfg;
    CLI::App app{"Energy levels and wave functions of two atoms with a contact interaction "
                 "in an axially symmetric harmonic trap.",
                 "twobody"};
    app.set_config("--config", "", "Read option defaults from a file of key=value lines");
    app.allow_config_extras(false);
    app.require_subcommand(1, 1);

    app.add_option("--eta", cfg.eta, "Trap anisotropy omega_perp / omega_z")->capture_default_str();
    auto* opt_a = app.add_option("--a", cfg.a, "Fixed scattering length (replaces the 1/a sweep)");
    auto* opt_min = app.add_option("--inv-a-min", cfg.inv_a_min, "Sweep start in 1/a")->capture_default_str();
    auto* opt_max = app.add_option("--inv-a-max", cfg.inv_a_max, "Sweep end in 1/a")->capture_default_str();
    auto* opt_steps = app.add_option("--inv-a-steps", cfg.inv_a_steps, "Sweep points")->capture_default_str();
    app.add_option("--levels", cfg.levels, "Levels per sweep point")->capture_default_str();
    app.add_option("--window-min", cfg.window_min, "Lowest energy searched");
    app.add_option("--window-max", cfg.window_max, "Highest energy searched");
    app.add_option("--grid-min", cfg.grid_min, "First coordinate of wave function tables");
    app.add_option("--grid-max", cfg.grid_max, "Last coordinate of wave function tables");
    app.add_option("--grid-steps", cfg.grid_steps, "Coordinate points")->capture_default_str();
    std::string axis;
    app.add_option("--axis", axis, "Profile direction")->check(CLI::IsMember({"axial", "radial"}));
    std::string resonance;
    auto* opt_res = app.add_option("--resonance", resonance, "Energy-dependent length \"a_bg,gamma,E_res\"");
    auto* opt_energy = app.add_option("--energy", cfg.energy, "Wave function energy");
    app.add_option("--out", cfg.out, "Output file (standard output when absent)");
    app.add_option("--threads", cfg.threads, "Worker threads (0: all cores)")->capture_default_str();
    app.add_option("--tol", cfg.tol, "Root and series tolerance");
    app.add_flag("--fast", cfg.fast, "Quick subset of checks");
    app.add_option("--phi-terms", cfg.phi_terms, "Evaluate Phi(0) from this many series terms in the checks");
    std::string criteria;
    app.add_option("--criteria", criteria, "Checks to run: \"all\" or ids such as 1,4,10");

    opt_a->excludes(opt_min)->excludes(opt_max)->excludes(opt_steps)->excludes(opt_res);
    opt_res->excludes(opt_min)->excludes(opt_max)->excludes(opt_steps);
    opt_energy->excludes(opt_res);

    struct Entry {
        const char* name;
        Command command;
        const char* help;
    };
    const std::vector<Entry> commands{
        {"spectrum", Command::spectrum, "Levels over a 1/a sweep (or for a fixed a or a resonance model)"},
        {"bound", Command::bound, "Exact and asymptotic lowest level over a 1/a sweep"},
        {"wavefunction", Command::wavefunction, "Exact and asymptotic profile along one axis"},
        {"fig1", Command::fig1, "Spectrum sweep with asymptotic and reference-spectrum columns"},
        {"fig2", Command::fig2, "Axial and radial profiles (unitarity by default)"},
        {"check", Command::check, "Run the numerical self-checks"},
    };
    for (const auto& c : commands) {
        app.add_subcommand(c.name, c.help)->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    for (const auto& c : commands) {
        if (app.got_subcommand(c.name)) {
            cfg.command = c.command;
        }
    }
    if (!axis.empty()) {
        cfg.axis = axis == "axial" ? wf::Axis::axial : wf::Axis::radial;
    }
    if (!resonance.empty()) {
        cfg.resonance = parse_resonance(resonance);
    }
    if (!criteria.empty()) {
        cfg.criteria = parse_criteria(criteria);
    }
    cfg.validate();
    return cfg;
}

void CsvTable::validate() const {
    if (header.empty()) {
        throw std::invalid_argument("table has no columns");
    }
    for (const auto& row : rows) {
        if (row.size() != header.size()) {
            throw std::invalid_argument("table row width differs from the header");
        }
        for (double v : row) {
            if (std::isinf(v)) {
                throw std::invalid_argument("table holds an infinite value");
            }
        }
    }
}

std::string CsvTable::to_csv() const {
    std::string s;
    for (std::size_t i = 0; i < header.size(); ++i) {
        s += (i ? "," : "") + header[i];
    }
    s += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                s += ',';
            }
            s += std::isnan(row[i]) ? std::string("NA") : number(row[i]);
        }
        s += '\n';
    }
    return s;
}

std::vector<double> grid(double lo, double hi, int steps) {
    if (steps == 1) {
        return {lo};
    }
    std::vector<double> v(steps);
    for (int i = 0; i < steps; ++i) {
        v[i] = i + 1 == steps ? hi : lo + (hi - lo) * i / (steps - 1);
    }
    return v;
}

std::vector<double> inverse_length_grid(const RunConfig& cfg) {
    if (cfg.a) {
        return {*cfg.a == 0.0 ? kNA : 1.0 / *cfg.a};
    }
    return grid(cfg.inv_a_min, cfg.inv_a_max, cfg.inv_a_steps);
}

namespace {

// Column k + 1 holds branch k (0 is the branch below E0), so a branch that
// leaves the window leaves NA behind instead of shifting the others.
void place_levels(const std::vector<sv::EnergyLevel>& levels, std::vector<double>& row) {
    const bool by_branch = std::none_of(levels.begin(), levels.end(), [](const auto& l) { return l.noninteracting; });
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const std::size_t column = by_branch ? static_cast<std::size_t>(levels[k].branch_index) + 1 : k + 1;
        if (column < row.size()) {
            row[column] = levels[k].E;
        }
    }
}

sv::InteractionModel model_for(const RunConfig& cfg, double inv_a) {
    if (cfg.a) {
        return sv::InteractionModel::fixed_length(*cfg.a);
    }
    return sv::InteractionModel::fixed_inverse(inv_a);
}

}  // namespace

CsvTable run_spectrum(const RunConfig& cfg, std::ostream& log) {
    const sv::TrapGeometry g{cfg.eta};
    const auto w = window(cfg, g);
    const auto opts = solver_options(cfg);
    CsvTable t;
    if (cfg.resonance) {
        t.header = {"level", "E"};
        const auto levels = sv::solve_self_consistent(sv::InteractionModel::resonance(*cfg.resonance), g, w,
                                                      cfg.levels, opts);
        for (std::size_t i = 0; i < levels.size(); ++i) {
            t.rows.push_back({double(i + 1), levels[i].E});
        }
        return t;
    }
    t.header = {"inv_a"};
    for (auto& name : numbered("E_", cfg.levels)) {
        t.header.push_back(name);
    }
    const auto xs = inverse_length_grid(cfg);
    t.rows = compute_rows(xs.size(), cfg.threads, [&](std::size_t i, std::vector<std::string>& notes) {
        std::vector<double> row(cfg.levels + 1, kNA);
        row[0] = xs[i];
        try {
            place_levels(sv::eigenenergies(model_for(cfg, xs[i]), g, w, cfg.levels, opts), row);
        } catch (const std::exception& e) {
            notes.push_back("inv_a = " + number(xs[i]) + ": " + e.what());
        }
        return row;
    }, log);
    return t;
}

CsvTable run_bound(const RunConfig& cfg, std::ostream& log) {
    const sv::TrapGeometry g{cfg.eta};
    const auto opts = solver_options(cfg);
    CsvTable t;
    t.header = {"inv_a", "E_exact", "E_asymptotic", "in_regime"};
    const auto xs = inverse_length_grid(cfg);
    t.rows = compute_rows(xs.size(), cfg.threads, [&](std::size_t i, std::vector<std::string>& notes) {
        std::vector<double> row{xs[i], kNA, kNA, kNA};
        const std::string at = "inv_a = " + number(xs[i]) + ": ";
        try {
            row[1] = sv::bound_state_exact(model_for(cfg, xs[i]), g, opts).E;
        } catch (const std::exception& e) {
            notes.push_back(at + e.what());
        }
        if (!std::isnan(xs[i])) {
            try {
                bool in_regime = false;
                row[2] = bound_asymptotic(xs[i], g, opts, &in_regime);
                row[3] = in_regime ? 1.0 : 0.0;
            } catch (const std::exception& e) {
                notes.push_back(at + "asymptotic: " + e.what());
            }
        }
        return row;
    }, log);
    return t;
}

double wavefunction_energy(const RunConfig& cfg) {
    if (cfg.energy) {
        return *cfg.energy;
    }
    const auto model = cfg.a ? sv::InteractionModel::fixed_length(*cfg.a) : sv::InteractionModel::fixed_inverse(0.0);
    return sv::bound_state_exact(model, {cfg.eta}, solver_options(cfg)).E;
}

CsvTable run_wavefunction(const RunConfig& cfg, wf::Axis axis, std::ostream& log) {
    const sv::TrapGeometry g{cfg.eta};
    const double E = wavefunction_energy(cfg);
    const bool below = E < sv::ground_energy_offset(g);
    const double hi = cfg.grid_max.value_or(below ? 4.0 * wf::characteristic_length(axis, E, g) : 3.0);
    const double lo = cfg.grid_min.value_or(0.0);
    if (!(lo < hi)) {
        throw UsageError("coordinate grid is empty");
    }
    const auto cs = grid(lo, hi, cfg.grid_steps);
    wf::PsiOptions popts;
    if (cfg.tol) {
        popts.truncation.tail_tol = *cfg.tol;
    }
    if (!below) {
        log << "note: E = " << number(E) << " is not below E0; no asymptotic profile\n";
    }
    const char* name = axis == wf::Axis::axial ? "z" : "rho";
    CsvTable t;
    t.header = {name, "psi_exact", "psi_asymptotic"};
    t.rows = compute_rows(cs.size(), cfg.threads, [&](std::size_t i, std::vector<std::string>& notes) {
        const double c = cs[i];
        std::vector<double> row{c, kNA, kNA};
        const std::string at = std::string(name) + " = " + number(c) + ": ";
        if (c == 0.0) {
            notes.push_back(at + "the wave function diverges at the origin");
            return row;
        }
        try {
            row[1] = axis == wf::Axis::axial ? wf::psi(0.0, c, E, g, popts) : wf::psi(c, 0.0, E, g, popts);
        } catch (const std::exception& e) {
            notes.push_back(at + e.what());
        }
        if (below) {
            try {
                row[2] = g.eta >= 1.0 ? wf::profile_quasi1d(axis, c, E, g) : wf::profile_quasi2d(axis, c, E, g);
            } catch (const std::exception& e) {
                notes.push_back(at + "asymptotic: " + e.what());
            }
        }
        return row;
    }, log);
    return t;
}

CsvTable run_fig1(const RunConfig& cfg, std::ostream& log) {
    const sv::TrapGeometry g{cfg.eta};
    const auto opts = solver_options(cfg);
    auto w = window(cfg, g);
    if (!cfg.window_min) {
        // deep enough for the bound branch at the strongest coupling of the sweep
        const auto xs = inverse_length_grid(cfg);
        const double strongest = *std::max_element(xs.begin(), xs.end());
        if (std::isfinite(strongest)) {
            const double eb = sv::bound_state_exact(sv::InteractionModel::fixed_inverse(strongest), g, opts).E;
            w.e_min = std::min(w.e_min, eb - 0.1 * (sv::ground_energy_offset(g) - eb) - 1.0);
        }
    }
    CsvTable t;
    t.header = {"inv_a"};
    for (auto& name : numbered("E_", cfg.levels)) {
        t.header.push_back(name);
    }
    t.header.push_back("E_bound_asymptotic");
    for (auto& name : numbered("R_", cfg.levels)) {
        t.header.push_back(name);
    }
    const auto xs = inverse_length_grid(cfg);
    const std::size_t n = cfg.levels;
    t.rows = compute_rows(xs.size(), cfg.threads, [&](std::size_t i, std::vector<std::string>& notes) {
        std::vector<double> row(2 * n + 2, kNA);
        const double inv_a = xs[i];
        row[0] = inv_a;
        const std::string at = "inv_a = " + number(inv_a) + ": ";
        try {
            place_levels(sv::eigenenergies(model_for(cfg, inv_a), g, w, cfg.levels, opts), row);
        } catch (const std::exception& e) {
            notes.push_back(at + e.what());
        }
        if (std::isnan(inv_a)) {
            return row;
        }
        try {
            row[n + 1] = bound_asymptotic(inv_a, g, opts, nullptr);
        } catch (const std::exception& e) {
            notes.push_back(at + "asymptotic bound state: " + e.what());
        }
        try {
            const auto ref = g.eta >= 1.0 ? sv::spectrum_1d_reference(1.0 / sv::a1d_effective(inv_a, g), g, w, opts)
                                          : sv::spectrum_2d_reference(sv::a2d_effective(inv_a), g, w, opts);
            // same branch numbering: one level below E0, then one per level spacing
            const double e0 = sv::ground_energy_offset(g);
            const double spacing = g.eta >= 1.0 ? 2.0 : 2.0 * g.eta;
            for (double e : ref) {
                const double branch = e < e0 ? 0.0 : std::floor((e - e0) / spacing) + 1.0;
                if (branch < n) {
                    row[n + 2 + static_cast<std::size_t>(branch)] = e;
                }
            }
        } catch (const std::exception& e) {
            notes.push_back(at + "reference spectrum: " + e.what());
        }
        return row;
    }, log);
    return t;
}

ProfileTables run_fig2(const RunConfig& cfg, std::ostream& log) {
    return {run_wavefunction(cfg, wf::Axis::axial, log), run_wavefunction(cfg, wf::Axis::radial, log)};
}

std::vector<int> check_selection(const RunConfig& cfg) {
    if (!cfg.criteria.empty()) {
        return cfg.criteria;
    }
    if (cfg.fast) {
        std::vector<int> ids;
        for (const auto& c : acceptance::criteria()) {
            if (c.fast) {
                ids.push_back(c.id);
            }
        }
        return ids;
    }
    return kDefaultCheck;
}

std::vector<acceptance::CriterionResult> run_check(const RunConfig& cfg) {
    acceptance::RunOptions options;
    options.phi_terms = cfg.phi_terms;
    std::vector<acceptance::CriterionResult> results;
    for (int id : check_selection(cfg)) {
        results.push_back(acceptance::run_criterion(id, options));
    }
    return results;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg = parse(args);
    } catch (const HelpRequested& h) {
        out << h.text;
        return kSuccess;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\nRun with --help for the list of options.\n";
        return kUsage;
    }
    try {
        switch (cfg.command) {
            case Command::spectrum:
                write_table(run_spectrum(cfg, err), cfg.out, out);
                break;
            case Command::bound:
                write_table(run_bound(cfg, err), cfg.out, out);
                break;
            case Command::wavefunction:
                write_table(run_wavefunction(cfg, cfg.axis.value_or(wf::Axis::axial), err), cfg.out, out);
                break;
            case Command::fig1:
                write_table(run_fig1(cfg, err), cfg.out, out);
                break;
            case Command::fig2: {
                const auto tables = run_fig2(cfg, err);
                if (cfg.out.empty()) {
                    write_table(tables.axial, "", out);
                    out << '\n';
                    write_table(tables.radial, "", out);
                } else {
                    write_table(tables.axial, with_suffix(cfg.out, "_axial"), out);
                    write_table(tables.radial, with_suffix(cfg.out, "_radial"), out);
                }
                break;
            }
            case Command::check: {
                std::ostringstream report;
                bool passed = true;
                for (const auto& r : run_check(cfg)) {
                    report << acceptance::format_result(r) << '\n';
                    passed = passed && r.passed;
                }
                report << (passed ? "all checks passed\n" : "some checks failed\n");
                if (cfg.out.empty()) {
                    out << report.str();
                } else {
                    std::ofstream file(cfg.out);
                    file << report.str();
                    if (!file) {
                        throw std::runtime_error("failed writing " + cfg.out);
                    }
                }
                return passed ? kSuccess : kCheckFailed;
            }
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumerical;
    }
    return kSuccess;
}

}  // namespace twobody::cli
