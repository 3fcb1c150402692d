#include "cvent/sweep.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <set>

#include "cvent/errors.hpp"

namespace cvent {

namespace {

double parse_double(std::string_view text, std::string_view what) {
    const std::string s(text);
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size())
        throw DomainError("cannot parse " + std::string(what) + " from '" + s + "'");
    return v;
}

double& field(ScenarioParams<double>& p, Param which) {
    switch (which) {
        case Param::tau: return p.tau;
        case Param::u: return p.u;
        case Param::nbar: return p.nbar;
        case Param::theta: return p.theta;
        case Param::phi: return p.phi;
        case Param::phi_b: return p.phi_b;
    }
    return p.tau;
}

}  // namespace

std::optional<Param> parse_param(std::string_view name) {
    if (name == "tau") return Param::tau;
    if (name == "u") return Param::u;
    if (name == "nbar") return Param::nbar;
    if (name == "theta") return Param::theta;
    if (name == "phi") return Param::phi;
    if (name == "phi_b" || name == "phi-b") return Param::phi_b;
    return std::nullopt;
}

const char* to_string(Param p) {
    switch (p) {
        case Param::tau: return "tau";
        case Param::u: return "u";
        case Param::nbar: return "nbar";
        case Param::theta: return "theta";
        case Param::phi: return "phi";
        case Param::phi_b: return "phi_b";
    }
    return "?";
}

bool is_angle(Param p) { return p == Param::theta || p == Param::phi || p == Param::phi_b; }

double Axis::value(int i) const {
    if (count == 1) return start;
    if (i == count - 1) return stop;
    return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
}

Axis parse_axis(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = text.find(':', pos);
        parts.push_back(text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    if (parts.size() != 4)
        throw DomainError("axis must be name:start:stop:count (got '" + std::string(text) + "')");
    const auto param = parse_param(parts[0]);
    if (!param) throw DomainError("unknown axis name '" + std::string(parts[0]) + "'");
    int count = 0;
    const auto [ptr, ec] = std::from_chars(parts[3].data(), parts[3].data() + parts[3].size(), count);
    if (ec != std::errc() || ptr != parts[3].data() + parts[3].size())
        throw DomainError("cannot parse axis count from '" + std::string(parts[3]) + "'");
    return {*param, parse_double(parts[1], "axis start"), parse_double(parts[2], "axis stop"), count};
}

void validate(const SweepGrid& grid) {
    std::set<Param> seen;
    for (const auto& axis : grid.axes) {
        const std::string name = to_string(axis.param);
        if (!seen.insert(axis.param).second) throw DomainError("sweep grid: duplicate axis '" + name + "'");
        if (axis.count < 1) throw DomainError("sweep grid: axis '" + name + "' needs count >= 1");
        if (!std::isfinite(axis.start) || !std::isfinite(axis.stop))
            throw DomainError("sweep grid: axis '" + name + "' bounds must be finite");
        if (axis.start > axis.stop) throw DomainError("sweep grid: axis '" + name + "' needs start <= stop");
    }
    // Each axis is monotone, so checking its end points with the fixed values covers the box.
    validate(grid.fixed, "sweep grid");
    for (const auto& axis : grid.axes) {
        for (double v : {axis.start, axis.stop}) {
            ScenarioParams<double> p = grid.fixed;
            field(p, axis.param) = v;
            validate(p, std::string("sweep grid axis '") + to_string(axis.param) + "'");
        }
    }
}

std::size_t point_count(const SweepGrid& grid) {
    std::size_t n = 1;
    for (const auto& axis : grid.axes) n *= static_cast<std::size_t>(axis.count);
    return n;
}

ScenarioParams<double> grid_point(const SweepGrid& grid, std::size_t index) {
    ScenarioParams<double> p = grid.fixed;
    for (auto it = grid.axes.rbegin(); it != grid.axes.rend(); ++it) {
        const auto count = static_cast<std::size_t>(it->count);
        field(p, it->param) = it->value(static_cast<int>(index % count));
        index /= count;
    }
    return p;
}

SweepRecord evaluate_point(const ScenarioParams<double>& p, const SweepColumns& columns) {
    SweepRecord rec;
    rec.params = p;
    rec.negativity = negativity_closed_form(p);
    rec.xi_minus = pt_symplectic_spectrum_eigen(output_covariance(p)).xi_minus;
    if (columns.critical) rec.critical = critical_noise(p.tau, p.u, p.theta);
    return rec;
}

std::vector<SweepRecord> run_sweep(const SweepGrid& grid, const SweepColumns& columns) {
    validate(grid);
    const std::size_t n = point_count(grid);
    std::vector<SweepRecord> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(evaluate_point(grid_point(grid, i), columns));
    return out;
}

std::optional<OutputFormat> parse_format(std::string_view name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "jsonl") return OutputFormat::jsonl;
    return std::nullopt;
}

std::string format_number(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    if (x == 0) x = 0;  // drop the sign of -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void write_records(std::ostream& os, const std::vector<SweepRecord>& records, const SweepColumns& columns,
                   OutputFormat format) {
    std::vector<std::string> names = {"tau", "u", "nbar", "theta", "phi", "phi_b", "N", "xi_minus"};
    if (columns.critical) {
        names.push_back("nbar_c");
        names.push_back("nbar_c_flag");
    }
    const auto values = [&](const SweepRecord& r) {
        const auto& p = r.params;
        std::vector<std::string> v = {format_number(p.tau),   format_number(p.u),     format_number(p.nbar),
                                      format_number(p.theta), format_number(p.phi),   format_number(p.phi_b),
                                      format_number(r.negativity), format_number(r.xi_minus)};
        if (columns.critical) {
            const CriticalNoise<double> c = r.critical.value_or(CriticalNoise<double>{});
            v.push_back(format_number(c.value));
            v.push_back(to_string(c.kind));
        }
        return v;
    };

    if (format == OutputFormat::csv) {
        for (std::size_t i = 0; i < names.size(); ++i) os << (i ? "," : "") << names[i];
        os << '\n';
        for (const auto& r : records) {
            const auto v = values(r);
            for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
            os << '\n';
        }
        return;
    }
    for (const auto& r : records) {
        const auto v = values(r);
        os << '{';
        for (std::size_t i = 0; i < v.size(); ++i) {
            const bool text = names[i] == "nbar_c_flag" || v[i] == "inf" || v[i] == "-inf" || v[i] == "nan";
            os << (i ? "," : "") << '"' << names[i] << "\":";
            if (text)
                os << '"' << v[i] << '"';
            else
                os << v[i];
        }
        os << "}\n";
    }
}

std::optional<FigurePreset> figure_preset(std::string_view name, int nx, int ny) {
    constexpr double half_pi = std::numbers::pi / 2;
    const Axis theta{Param::theta, 0.0, half_pi, ny};
    FigurePreset f;
    f.grid.fixed = ScenarioParams<double>{};

    const auto fig1 = [&](double tau, double nbar_max) {
        f.grid.fixed.tau = tau;
        f.grid.fixed.u = 1.0;
        f.grid.axes = {Axis{Param::nbar, 0.0, nbar_max, nx}, theta};
    };
    const auto fig2 = [&](double nbar) {
        f.grid.fixed.tau = 0.45;
        f.grid.fixed.nbar = nbar;
        f.grid.axes = {Axis{Param::u, 0.05, 1.0, nx}, theta};
    };
    const auto fig3 = [&](double u_min) {
        f.grid.fixed.tau = 0.4;
        f.grid.axes = {Axis{Param::u, u_min, 1.0, nx}, theta};
        f.columns.critical = true;
    };

    if (name == "1a")
        fig1(0.2, 1.0);
    else if (name == "1b")
        fig1(0.4, 4.0);
    else if (name == "1c")
        fig1(0.45, 8.0);
    else if (name == "2a")
        fig2(1.0);
    else if (name == "2b")
        fig2(4.0);
    else if (name == "3")
        fig3(0.05);
    else if (name == "3b")
        fig3(0.9);
    else
        return std::nullopt;
    return f;
}

}  // namespace cvent
