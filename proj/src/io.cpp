#include "containment/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace containment::io {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const json& require(const json& obj, const std::string& key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(path + key, 0, "missing required key");
    return *it;
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.contains(key)) throw ParseError(path + key, 0, "unknown key");
}

const json& as_object(const json& v, const std::string& path) {
    if (!v.is_object()) throw ParseError(path, 0, "expected an object");
    return v;
}

const json& as_array(const json& v, const std::string& path) {
    if (!v.is_array()) throw ParseError(path, 0, "expected an array");
    return v;
}

double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ParseError(path, 0, "expected a number");
    return v.get<double>();
}

std::size_t as_id(const json& v, const std::string& path) {
    if (!v.is_number_integer() || v.get<long long>() < 1) {
        throw ParseError(path, 0, "expected a positive integer id");
    }
    return static_cast<std::size_t>(v.get<long long>());
}

Point as_point(const json& v, const std::string& path) {
    as_array(v, path);
    Point p;
    for (std::size_t d = 0; d < v.size(); ++d) p.push_back(as_number(v[d], fmt::format("{}[{}]", path, d)));
    return p;
}

// Entries of `agents` / `leaders`: objects {id, x} with ids 1..count in order.
std::vector<Point> parse_points(const json& root, const std::string& key) {
    const auto& arr = as_array(require(root, key, ""), key);
    std::vector<Point> pts;
    for (std::size_t e = 0; e < arr.size(); ++e) {
        const auto path = fmt::format("{}[{}]", key, e);
        const auto& obj = as_object(arr[e], path);
        reject_unknown(obj, {"id", "x"}, path + ".");
        if (as_id(require(obj, "id", path + "."), path + ".id") != e + 1) {
            throw ParseError(path + ".id", 0, fmt::format("ids must run 1..{} in order", arr.size()));
        }
        pts.push_back(as_point(require(obj, "x", path + "."), path + ".x"));
    }
    return pts;
}

// [a, b] or [a, b, w] with one-based ids.
std::tuple<std::size_t, std::size_t, double> parse_triple(const json& v, const std::string& path) {
    as_array(v, path);
    if (v.size() != 2 && v.size() != 3) throw ParseError(path, 0, "expected [id, id] or [id, id, weight]");
    const auto a = as_id(v[0], path + "[0]");
    const auto b = as_id(v[1], path + "[1]");
    const double w = v.size() == 3 ? as_number(v[2], path + "[2]") : 1.0;
    return {a - 1, b - 1, w};
}

std::string fmt9(double v) { return fmt::format("{:.9g}", v); }

}  // namespace

ParseError::ParseError(std::string key, std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? fmt::format("line {}: {}", line, message)
                                  : fmt::format("key '{}': {}", key, message)),
      key_(std::move(key)),
      line_(line) {}

ScenarioFile parse_scenario(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto upto = std::min<std::size_t>(e.byte, text.size());
        const auto line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + upto, '\n'));
        throw ParseError("", line, e.what());
    }
    as_object(root, "<document>");
    reject_unknown(root, {"name", "notes", "m", "t0", "t_final", "dt", "agents", "leaders", "topologies",
                          "schedule"},
                   "");

    ScenarioFile file;
    for (const char* key : {"name", "notes"}) {
        if (const auto it = root.find(key); it != root.end()) {
            if (!it->is_string()) throw ParseError(key, 0, "expected a string");
            (std::string_view(key) == "name" ? file.name : file.notes) = it->get<std::string>();
        }
    }
    const auto m = as_id(require(root, "m", ""), "m");
    Scenario::Settings settings;
    settings.t0 = root.contains("t0") ? as_number(root["t0"], "t0") : 0.0;
    settings.t_final = as_number(require(root, "t_final", ""), "t_final");
    settings.dt = as_number(require(root, "dt", ""), "dt");

    auto agents = parse_points(root, "agents");
    auto leader_pts = parse_points(root, "leaders");
    const std::size_t n = agents.size();
    const std::size_t k = leader_pts.size();

    const auto& topo_arr = as_array(require(root, "topologies", ""), "topologies");
    struct RawTopology {
        std::vector<Edge> edges;
        std::vector<LeaderLink> links;
    };
    std::vector<RawTopology> raw;
    for (std::size_t p = 0; p < topo_arr.size(); ++p) {
        const auto path = fmt::format("topologies[{}]", p);
        const auto& obj = as_object(topo_arr[p], path);
        reject_unknown(obj, {"id", "edges", "leader_links"}, path + ".");
        if (as_id(require(obj, "id", path + "."), path + ".id") != p + 1) {
            throw ParseError(path + ".id", 0, fmt::format("ids must run 1..{} in order", topo_arr.size()));
        }
        RawTopology t;
        if (obj.contains("edges")) {
            const auto& edges = as_array(obj["edges"], path + ".edges");
            for (std::size_t e = 0; e < edges.size(); ++e) {
                const auto [i, j, w] = parse_triple(edges[e], fmt::format("{}.edges[{}]", path, e));
                t.edges.push_back({i, j, w});
            }
        }
        if (obj.contains("leader_links")) {
            const auto& links = as_array(obj["leader_links"], path + ".leader_links");
            for (std::size_t e = 0; e < links.size(); ++e) {
                const auto [i, q, w] = parse_triple(links[e], fmt::format("{}.leader_links[{}]", path, e));
                t.links.push_back({i, q, w});
            }
        }
        raw.push_back(std::move(t));
    }

    const auto& sched_arr = as_array(require(root, "schedule", ""), "schedule");
    std::vector<SwitchingSchedule::Entry> entries;
    for (std::size_t l = 0; l < sched_arr.size(); ++l) {
        const auto path = fmt::format("schedule[{}]", l);
        const auto& obj = as_object(sched_arr[l], path);
        reject_unknown(obj, {"t", "topology"}, path + ".");
        entries.push_back({as_number(require(obj, "t", path + "."), path + ".t"),
                           as_id(require(obj, "topology", path + "."), path + ".topology") - 1});
    }

    try {
        for (std::size_t q = 0; q < k; ++q) {
            if (leader_pts[q].size() != m) {
                throw std::invalid_argument(fmt::format("leader {} has dimension {}, m = {}", q + 1,
                                                        leader_pts[q].size(), m));
            }
        }
        std::vector<Topology> topologies;
        for (auto& t : raw) {
            topologies.emplace_back(AgentGraph(n, std::move(t.edges)),
                                    LeaderLinks(n, k, std::move(t.links)));
        }
        file.scenario = Scenario(std::move(agents), LeaderSet(std::move(leader_pts)), std::move(topologies),
                                 SwitchingSchedule(std::move(entries)), settings);
    } catch (const std::invalid_argument& e) {
        throw InvalidScenario(e.what());
    } catch (const std::out_of_range& e) {
        throw InvalidScenario(e.what());
    }
    return file;
}

std::string write_scenario(const ScenarioFile& file) {
    const auto& s = file.scenario;
    ordered_json root;
    root["name"] = file.name;
    root["notes"] = file.notes;
    root["m"] = s.dim();
    root["t0"] = s.settings().t0;
    root["t_final"] = s.settings().t_final;
    root["dt"] = s.settings().dt;
    auto points = [](const std::vector<Point>& pts) {
        ordered_json arr = ordered_json::array();
        for (std::size_t i = 0; i < pts.size(); ++i) arr.push_back({{"id", i + 1}, {"x", pts[i]}});
        return arr;
    };
    root["agents"] = points(s.initial_positions());
    root["leaders"] = points(s.leaders().positions());
    ordered_json topos = ordered_json::array();
    for (std::size_t p = 0; p < s.topologies().size(); ++p) {
        const auto& t = s.topologies()[p];
        ordered_json edges = ordered_json::array();
        for (const auto& e : t.graph().edges()) edges.push_back({e.i + 1, e.j + 1, e.weight});
        ordered_json links = ordered_json::array();
        for (const auto& l : t.leaders().links()) links.push_back({l.agent + 1, l.leader + 1, l.weight});
        topos.push_back({{"id", p + 1}, {"edges", edges}, {"leader_links", links}});
    }
    root["topologies"] = topos;
    ordered_json sched = ordered_json::array();
    for (const auto& e : s.schedule().entries()) sched.push_back({{"t", e.time}, {"topology", e.topology + 1}});
    root["schedule"] = sched;
    return root.dump(2) + "\n";
}

ScenarioFile load_scenario(const std::string& path) { return parse_scenario(read_file(path)); }

std::string write_trajectory_csv(const Trajectory& traj) {
    std::string out = "t";
    for (std::size_t i = 0; i < traj.agents; ++i)
        for (std::size_t d = 0; d < traj.dim; ++d) out += fmt::format(",a{}_{}", i + 1, d + 1);
    out += ",d_xi,topology\n";
    for (const auto& s : traj.samples) {
        out += fmt9(s.t);
        for (double v : s.state) {
            out += ',';
            out += fmt9(v);
        }
        out += fmt::format(",{},{}\n", fmt9(s.d_xi), s.topology + 1);
    }
    return out;
}

Trajectory parse_trajectory_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.empty()) throw ParseError("header", 1, "empty trajectory file");

    auto split = [](const std::string& l) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(l);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        return cells;
    };
    const auto header = split(line);
    if (header.size() < 4 || header.front() != "t" || header[header.size() - 2] != "d_xi" ||
        header.back() != "topology") {
        throw ParseError("header", 1, "expected t,a<i>_<d>...,d_xi,topology");
    }
    Trajectory traj;
    const std::size_t state_cols = header.size() - 3;
    for (std::size_t c = 0; c < state_cols; ++c) {
        std::size_t i = 0, d = 0;
        if (std::sscanf(header[c + 1].c_str(), "a%zu_%zu", &i, &d) != 2 || i == 0 || d == 0) {
            throw ParseError("header", 1, "bad state column '" + header[c + 1] + "'");
        }
        traj.dim = std::max(traj.dim, d);
        traj.agents = std::max(traj.agents, i);
    }
    if (traj.agents * traj.dim != state_cols) throw ParseError("header", 1, "state columns do not form n x m");

    auto number = [](const std::string& cell, std::size_t lineno) {
        double v = 0.0;
        const auto* end = cell.data() + cell.size();
        const auto [ptr, ec] = std::from_chars(cell.data(), end, v);
        if (ec != std::errc() || ptr != end) throw ParseError("", lineno, "bad number '" + cell + "'");
        return v;
    };
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != header.size()) throw ParseError("", lineno, "wrong column count");
        Sample s;
        s.t = number(cells[0], lineno);
        for (std::size_t c = 0; c < state_cols; ++c) s.state.push_back(number(cells[c + 1], lineno));
        s.d_xi = number(cells[state_cols + 1], lineno);
        const double topo = number(cells.back(), lineno);
        if (topo < 1.0) throw ParseError("", lineno, "topology ids are one-based");
        s.topology = static_cast<std::size_t>(topo) - 1;
        traj.samples.push_back(std::move(s));
    }
    if (traj.samples.empty()) throw ParseError("", lineno, "trajectory has no samples");
    return traj;
}

std::vector<Point> planar_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    auto cross = [](const Point& o, const Point& a, const Point& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<Point> hull(2 * pts.size());
    std::size_t h = 0;
    for (const auto& p : pts) {
        while (h >= 2 && cross(hull[h - 2], hull[h - 1], p) <= 0) --h;
        hull[h++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = h + 1; i-- > 0;) {
        while (h >= lower && cross(hull[h - 2], hull[h - 1], pts[i]) <= 0) --h;
        hull[h++] = pts[i];
    }
    hull.resize(h - 1);
    return hull;
}

std::string write_plot_data(const Trajectory& traj, const std::optional<LeaderSet>& leaders) {
    const std::size_t m = traj.dim;
    std::string out;
    auto block_sep = [&] {
        if (!out.empty()) out += "\n\n";
    };
    for (std::size_t i = 0; i < traj.agents; ++i) {
        block_sep();
        out += fmt::format("# agent {} series: t", i + 1);
        for (std::size_t d = 0; d < m; ++d) out += fmt::format(" x{}", d + 1);
        out += '\n';
        for (const auto& s : traj.samples) {
            out += fmt9(s.t);
            for (std::size_t d = 0; d < m; ++d) out += ' ' + fmt9(s.state[i * m + d]);
            out += '\n';
        }
    }
    if (m == 2) {
        for (std::size_t i = 0; i < traj.agents; ++i) {
            block_sep();
            out += fmt::format("# agent {} path: x1 x2\n", i + 1);
            for (const auto& s : traj.samples)
                out += fmt9(s.state[i * 2]) + ' ' + fmt9(s.state[i * 2 + 1]) + '\n';
        }
    }
    if (leaders) {
        block_sep();
        out += "# leaders: id coordinates\n";
        for (std::size_t q = 0; q < leaders->size(); ++q) {
            out += std::to_string(q + 1);
            for (double v : (*leaders)[q]) out += ' ' + fmt9(v);
            out += '\n';
        }
        if (m == 2) {
            const auto hull = planar_hull(leaders->positions());
            block_sep();
            out += fmt::format("# hull: {} vertices, closed polygon\n", hull.size());
            for (std::size_t v = 0; v <= hull.size() && !hull.empty(); ++v) {
                const auto& p = hull[v % hull.size()];
                out += fmt9(p[0]) + ' ' + fmt9(p[1]) + '\n';
            }
        }
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << contents;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace containment::io
