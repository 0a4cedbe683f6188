#pragma once

// File formats: scenario documents (JSON), trajectory tables (CSV) and
// gnuplot-ready plot data. Ids in files are one-based.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include "containment/dynamics.hpp"

namespace containment::io {

/// Malformed document: syntax, unknown or missing keys, wrong types, bad ids.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string key, std::size_t line, const std::string& message);

    [[nodiscard]] const std::string& key() const noexcept { return key_; }
    /// 1-based line of a syntax error; 0 when the problem is tied to a key.
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::string key_;
    std::size_t line_;
};

/// Well-formed document describing an invalid scenario (misaligned switching
/// time, duplicate edge, dimension mismatch, ...).
class InvalidScenario : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ScenarioFile {
    std::string name;
    std::string notes;
    Scenario scenario;

    friend bool operator==(const ScenarioFile&, const ScenarioFile&) = default;
};

/// Document keys: name, notes, m, t0, t_final, dt, agents [{id, x}],
/// leaders [{id, x}], topologies [{id, edges [[i, j, w?]], leader_links
/// [[agent, leader, w?]]}], schedule [{t, topology}]. Omitted weights are 1.
ScenarioFile parse_scenario(const std::string& text);
std::string write_scenario(const ScenarioFile& file);

ScenarioFile load_scenario(const std::string& path);

/// Header `t,a<i>_<d>...,d_xi,topology`; 9 significant digits.
std::string write_trajectory_csv(const Trajectory& traj);
/// Throws ParseError on an empty or malformed table.
Trajectory parse_trajectory_csv(const std::string& text);

/// Whitespace-separated blocks, two blank lines apart (gnuplot `index`):
/// one `t x_1 .. x_m` series per agent, for m = 2 an `x y` path per agent,
/// then leader markers and, for m = 2, the closed hull polygon.
std::string write_plot_data(const Trajectory& traj, const std::optional<LeaderSet>& leaders);

/// Counter-clockwise convex hull of planar points (collinear points dropped).
std::vector<Point> planar_hull(std::vector<Point> pts);

std::string read_file(const std::string& path);
/// Throws std::runtime_error if the file cannot be written.
void write_file(const std::string& path, const std::string& contents);

}  // namespace containment::io
