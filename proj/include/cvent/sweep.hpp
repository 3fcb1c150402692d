#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cvent/entanglement.hpp"

namespace cvent {

enum class Param { tau, u, nbar, theta, phi, phi_b };

std::optional<Param> parse_param(std::string_view name);
const char* to_string(Param p);
bool is_angle(Param p);

/// Evenly spaced values start..stop inclusive; count = 1 yields start.
struct Axis {
    Param param;
    double start;
    double stop;
    int count;

    double value(int i) const;
};

/// Parses "name:start:stop:count".
Axis parse_axis(std::string_view text);

struct SweepGrid {
    std::vector<Axis> axes;
    ScenarioParams<double> fixed;
};

void validate(const SweepGrid& grid);
std::size_t point_count(const SweepGrid& grid);

/// Parameters at a flat index; the first declared axis varies slowest.
ScenarioParams<double> grid_point(const SweepGrid& grid, std::size_t index);

struct SweepColumns {
    bool critical = false;
};

struct SweepRecord {
    ScenarioParams<double> params;
    double negativity = 0;
    double xi_minus = 0;
    std::optional<CriticalNoise<double>> critical;
};

SweepRecord evaluate_point(const ScenarioParams<double>& p, const SweepColumns& columns);
std::vector<SweepRecord> run_sweep(const SweepGrid& grid, const SweepColumns& columns);

enum class OutputFormat { csv, jsonl };

std::optional<OutputFormat> parse_format(std::string_view name);

/// 12 significant digits; infinities become "inf".
std::string format_number(double x);

void write_records(std::ostream& os, const std::vector<SweepRecord>& records, const SweepColumns& columns,
                   OutputFormat format);

/// Grid and columns for the figure presets 1a, 1b, 1c, 2a, 2b, 3, 3b.
struct FigurePreset {
    SweepGrid grid;
    SweepColumns columns;
};

std::optional<FigurePreset> figure_preset(std::string_view name, int nx, int ny);

inline constexpr int kDefaultFigureResolution = 101;

}  // namespace cvent
