#include "cvent/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cvent/entanglement.hpp"
#include "cvent/errors.hpp"
#include "cvent/fock_oracle.hpp"
#include "cvent/sweep.hpp"

namespace cvent {

namespace {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string output;
    std::string format = "csv";
    std::string config;
    int nx = kDefaultFigureResolution;
    int ny = kDefaultFigureResolution;
    bool degrees = false;

    double tau = 0;
    double u = 1;
    double nbar = 0;
    double theta = std::numbers::pi / 4;
    double phi = 0;
    double phi_b = 0;
    std::vector<std::string> axes;

    std::string fig;
    bool critical = false;

    OracleConfig oracle;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double x = 0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != v.size()) throw DomainError("config: cannot parse '" + key + "' from '" + v + "'");
    return x;
}

int to_int(const std::string& key, const std::string& v) {
    const double x = to_double(key, v);
    if (x != static_cast<int>(x)) throw DomainError("config: '" + key + "' must be an integer");
    return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw DomainError("config: '" + key + "' must be a boolean");
}

/// key=value lines; '#' starts a comment. Only keys whose flag was not given are applied.
void apply_config(const std::string& path, Options& o, const std::map<std::string, CLI::Option*>& flags) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");

    const std::map<std::string, std::function<void(const std::string&, const std::string&)>> setters = {
        {"output", [&](auto&, auto& v) { o.output = v; }},
        {"format", [&](auto&, auto& v) { o.format = v; }},
        {"nx", [&](auto& k, auto& v) { o.nx = to_int(k, v); }},
        {"ny", [&](auto& k, auto& v) { o.ny = to_int(k, v); }},
        {"degrees", [&](auto& k, auto& v) { o.degrees = to_bool(k, v); }},
        {"tau", [&](auto& k, auto& v) { o.tau = to_double(k, v); }},
        {"u", [&](auto& k, auto& v) { o.u = to_double(k, v); }},
        {"nbar", [&](auto& k, auto& v) { o.nbar = to_double(k, v); }},
        {"theta", [&](auto& k, auto& v) { o.theta = to_double(k, v); }},
        {"phi", [&](auto& k, auto& v) { o.phi = to_double(k, v); }},
        {"phi_b", [&](auto& k, auto& v) { o.phi_b = to_double(k, v); }},
        {"axis", [&](auto&, auto& v) { o.axes.push_back(v); }},
        {"fig", [&](auto&, auto& v) { o.fig = v; }},
        {"critical", [&](auto& k, auto& v) { o.critical = to_bool(k, v); }},
        {"dim", [&](auto& k, auto& v) { o.oracle.dim = to_int(k, v); }},
        {"max_dim", [&](auto& k, auto& v) { o.oracle.max_dim = to_int(k, v); }},
        {"tol_trace", [&](auto& k, auto& v) { o.oracle.tol_trace = to_double(k, v); }},
        {"tol_compare", [&](auto& k, auto& v) { o.oracle.tol_compare = to_double(k, v); }},
    };

    std::string line;
    int lineno = 0;
    bool axes_from_cli = flags.count("axis") && flags.at("axis")->count() > 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DomainError("config line " + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::replace(key.begin(), key.end(), '-', '_');
        const std::string value = trim(line.substr(eq + 1));
        const auto setter = setters.find(key);
        if (setter == setters.end()) throw DomainError("config: unknown key '" + key + "'");
        if (key == "axis" ? axes_from_cli : (flags.count(key) && flags.at(key)->count() > 0)) continue;
        setter->second(key, value);
    }
}

double angle_in(double v, bool degrees) { return degrees ? v * std::numbers::pi / 180.0 : v; }

ScenarioParams<double> scenario(const Options& o) {
    return {o.tau, o.u, angle_in(o.phi_b, o.degrees), o.nbar, angle_in(o.theta, o.degrees),
            angle_in(o.phi, o.degrees)};
}

SweepGrid grid_from(const Options& o) {
    SweepGrid g;
    g.fixed = scenario(o);
    for (const auto& text : o.axes) {
        Axis a = parse_axis(text);
        if (is_angle(a.param)) {
            a.start = angle_in(a.start, o.degrees);
            a.stop = angle_in(a.stop, o.degrees);
        }
        g.axes.push_back(a);
    }
    validate(g);
    return g;
}

OutputFormat format_of(const Options& o) {
    const auto f = parse_format(o.format);
    if (!f) throw DomainError("--format must be csv or jsonl (got '" + o.format + "')");
    return *f;
}

/// Writes to the -o path, or to out when none is given.
void emit(const Options& o, std::ostream& out, const std::function<void(std::ostream&)>& body) {
    if (o.output.empty() || o.output == "-") {
        body(out);
        return;
    }
    std::ofstream file(o.output, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open output file '" + o.output + "'");
    body(file);
    file.flush();
    if (!file) throw IoError("failed writing output file '" + o.output + "'");
}

int cmd_negativity(const Options& o, std::ostream& out) {
    const ScenarioParams<double> p = scenario(o);
    validate(p, "negativity");
    const CovMat2M<double> v = output_covariance(p);
    const auto spectrum = pt_symplectic_spectrum_eigen(v);
    const auto terms = closed_form_terms(p.tau, p.u, p.nbar, p.theta);
    const auto best = optimal_angle(p.tau, p.u, p.nbar);
    emit(o, out, [&](std::ostream& os) {
        const auto line = [&](const char* k, double x) { os << k << ": " << format_number(x) << '\n'; };
        line("tau", p.tau);
        line("u", p.u);
        line("nbar", p.nbar);
        line("theta", p.theta);
        line("phi", p.phi);
        line("phi_b", p.phi_b);
        line("N", negativity_closed_form(p));
        line("N_pipeline", log_negativity(spectrum));
        line("xi_minus", spectrum.xi_minus);
        line("xi_plus", spectrum.xi_plus);
        line("det_V_out", v.determinant());
        line("S", terms.s);
        line("S_plus", terms.s_plus);
        line("S_minus", terms.s_minus);
        line("S_0", best.s_zero);
        line("S_pi_4", best.s_quarter);
        line("optimal_theta", best.theta);
        line("optimal_N", best.negativity);
        os << "diagnosis: " << (best.entangling ? "entangling" : "no entanglement achievable") << '\n';
    });
    return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
    SweepGrid grid;
    SweepColumns columns;
    if (!o.fig.empty()) {
        if (!o.axes.empty()) throw DomainError("sweep: --fig and --axis are mutually exclusive");
        if (o.nx < 1 || o.ny < 1) throw DomainError("sweep: --nx and --ny must be >= 1");
        auto preset = figure_preset(o.fig, o.nx, o.ny);
        if (!preset) throw DomainError("sweep: unknown figure preset '" + o.fig + "'");
        grid = preset->grid;
        columns = preset->columns;
        validate(grid);
    } else {
        if (o.axes.empty()) throw DomainError("sweep: give --fig or at least one --axis");
        grid = grid_from(o);
    }
    columns.critical = columns.critical || o.critical;
    const OutputFormat format = format_of(o);
    const auto records = run_sweep(grid, columns);
    emit(o, out, [&](std::ostream& os) { write_records(os, records, columns, format); });
    return kExitOk;
}

int cmd_critical(const Options& o, std::ostream& out) {
    if (!o.axes.empty()) {
        const SweepGrid grid = grid_from(o);
        const OutputFormat format = format_of(o);
        const auto records = run_sweep(grid, SweepColumns{true});
        emit(o, out, [&](std::ostream& os) { write_records(os, records, SweepColumns{true}, format); });
        return kExitOk;
    }
    const ScenarioParams<double> p = scenario(o);
    validate(p, "critical");
    const auto c = critical_noise(p.tau, p.u, p.theta);
    emit(o, out, [&](std::ostream& os) {
        os << "tau: " << format_number(p.tau) << '\n';
        os << "u: " << format_number(p.u) << '\n';
        os << "theta: " << format_number(p.theta) << '\n';
        os << "nbar_c: " << format_number(c.value) << '\n';
        os << "flag: " << to_string(c.kind) << '\n';
    });
    return kExitOk;
}

SweepGrid default_oracle_grid() {
    SweepGrid g;
    g.axes = {Axis{Param::tau, 0.1, 0.3, 3}, Axis{Param::u, 0.5, 1.0, 2}, Axis{Param::nbar, 0.0, 1.0, 3},
              Axis{Param::theta, std::numbers::pi / 8, std::numbers::pi / 4, 2}};
    return g;
}

int cmd_oracle_check(const Options& o, std::ostream& out, std::ostream& err) {
    validate(o.oracle);
    const SweepGrid grid = o.axes.empty() ? default_oracle_grid() : grid_from(o);
    validate(grid);
    std::vector<OracleComparison> rows;
    const std::size_t n = point_count(grid);
    for (std::size_t i = 0; i < n; ++i) rows.push_back(oracle_compare(grid_point(grid, i), o.oracle));

    int failed = 0, skipped = 0;
    emit(o, out, [&](std::ostream& os) {
        os << "tau,u,nbar,theta,phi,phi_b,N_gaussian,N_fock,difference,tolerance,leakage,dim,status,reason\n";
        for (const auto& r : rows) {
            const auto& p = r.params;
            os << format_number(p.tau) << ',' << format_number(p.u) << ',' << format_number(p.nbar) << ','
               << format_number(p.theta) << ',' << format_number(p.phi) << ',' << format_number(p.phi_b) << ','
               << format_number(r.n_gaussian) << ',' << format_number(r.n_fock) << ','
               << format_number(r.difference) << ',' << format_number(r.tolerance) << ','
               << format_number(r.leakage) << ',' << r.dim << ',' << to_string(r.status) << ",\"" << r.reason
               << "\"\n";
        }
    });
    for (const auto& r : rows) {
        if (r.status == OracleStatus::fail) ++failed;
        if (r.status == OracleStatus::skip) ++skipped;
    }
    err << "oracle-check: " << rows.size() - failed - skipped << " pass, " << failed << " fail, " << skipped
        << " skip\n";
    if (skipped > 0) err << "warning: " << skipped << " point(s) skipped for truncation\n";
    return failed > 0 ? kExitVerificationFailure : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Two-mode Gaussian entanglement from a beam splitter: negativity, critical noise, sweeps", "cvent"};
    app.require_subcommand(1);
    app.fallthrough();

    std::map<std::string, CLI::Option*> flags;
    flags["output"] = app.add_option("-o,--output", o.output, "Output file (default stdout)");
    flags["format"] = app.add_option("--format", o.format, "csv or jsonl");
    app.add_option("--config", o.config, "key=value config file; flags override it");
    flags["nx"] = app.add_option("--nx", o.nx, "Figure preset resolution along the first axis");
    flags["ny"] = app.add_option("--ny", o.ny, "Figure preset resolution along theta");
    flags["degrees"] = app.add_flag("--degrees", o.degrees, "Angles given in degrees");
    flags["tau"] = app.add_option("--tau", o.tau, "Nonclassical depth, [0, 1/2)");
    flags["u"] = app.add_option("--u", o.u, "Purity, (0, 1]");
    flags["nbar"] = app.add_option("--nbar", o.nbar, "Thermal photon number, >= 0");
    flags["theta"] = app.add_option("--theta", o.theta, "Beam-splitter angle (radians)");
    flags["phi"] = app.add_option("--phi", o.phi, "Beam-splitter phase (radians)");
    flags["phi_b"] = app.add_option("--phi-b", o.phi_b, "Squeezing phase of the input (radians)");
    flags["axis"] = app.add_option("--axis", o.axes, "Swept axis name:start:stop:count (repeatable)");

    auto* neg = app.add_subcommand("negativity", "Logarithmic negativity at one parameter point");
    auto* sweep = app.add_subcommand("sweep", "Negativity over a parameter grid or figure preset");
    flags["fig"] = sweep->add_option("--fig", o.fig, "Figure preset: 1a 1b 1c 2a 2b 3 3b");
    flags["critical"] = sweep->add_flag("--critical", o.critical, "Add critical-noise columns");
    auto* crit = app.add_subcommand("critical", "Critical thermal noise at a point or over a grid");
    auto* oracle = app.add_subcommand("oracle-check", "Compare Gaussian and truncated Fock negativity");
    flags["dim"] = oracle->add_option("--dim", o.oracle.dim, "Fock cutoff per mode");
    flags["max_dim"] = oracle->add_option("--max-dim", o.oracle.max_dim, "Escalation ceiling");
    flags["tol_trace"] = oracle->add_option("--tol-trace", o.oracle.tol_trace, "Acceptable truncation leakage");
    flags["tol_compare"] = oracle->add_option("--tol-compare", o.oracle.tol_compare, "Agreement tolerance on N");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    }

    try {
        if (!o.config.empty()) apply_config(o.config, o, flags);
        if (neg->parsed()) return cmd_negativity(o, out);
        if (sweep->parsed()) return cmd_sweep(o, out);
        if (crit->parsed()) return cmd_critical(o, out);
        if (oracle->parsed()) return cmd_oracle_check(o, out, err);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIoFailure;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const TruncationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitVerificationFailure;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << '\n';
        return kExitVerificationFailure;
    }
    return kExitInvalidInput;
}

}  // namespace cvent
