#include "containment/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "containment/analysis.hpp"
#include "containment/builtin.hpp"
#include "containment/campaign.hpp"
#include "containment/io.hpp"

namespace containment::cli {

namespace {

namespace fs = std::filesystem;

const std::vector<std::string> kChecks{"lemma1", "lemma2", "theorem1", "theorem2", "row-stochastic",
                                       "leader-pull"};

// Thrown inside command bodies, converted to an exit code at the top.
struct Exit {
    int code;
    std::string message;
};

std::string fmt9(double v) { return fmt::format("{:.9g}", v); }

io::ScenarioFile load(const std::string& path) {
    try {
        return io::load_scenario(path);
    } catch (const io::ParseError& e) {
        throw Exit{kUsageOrParse, fmt::format("{}: parse error: {}", path, e.what())};
    } catch (const io::InvalidScenario& e) {
        throw Exit{kInvalidScenario, fmt::format("{}: invalid scenario: {}", path, e.what())};
    } catch (const std::runtime_error& e) {
        throw Exit{kUsageOrParse, e.what()};
    }
}

void write(const std::string& path, const std::string& contents) {
    try {
        io::write_file(path, contents);
    } catch (const std::runtime_error& e) {
        throw Exit{kUsageOrParse, e.what()};
    }
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Exit{kUsageOrParse, fmt::format("cannot create directory '{}': {}", dir, ec.message())};
}

void print_final(const Trajectory& traj, std::ostream& out) {
    const auto& last = traj.last();
    out << "t_final " << fmt9(last.t) << "\n";
    out << "final d_xi " << fmt9(last.d_xi) << "\n";
    for (std::size_t i = 0; i < traj.agents; ++i) {
        out << "agent " << i + 1;
        for (std::size_t d = 0; d < traj.dim; ++d) out << ' ' << fmt9(last.state[i * traj.dim + d]);
        out << "\n";
    }
}

// --- simulate -------------------------------------------------------------

struct SimulateArgs {
    std::string scenario;
    std::string out;
    std::optional<double> dt;
    std::optional<double> t_final;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
    auto file = load(a.scenario);
    auto settings = file.scenario.settings();
    if (a.dt) settings.dt = *a.dt;
    if (a.t_final) settings.t_final = *a.t_final;
    Scenario s;
    try {
        s = file.scenario.with_settings(settings);
    } catch (const std::invalid_argument& e) {
        throw Exit{kInvalidScenario, fmt::format("invalid scenario: {}", e.what())};
    }
    const auto traj = simulate(s);
    write(a.out, io::write_trajectory_csv(traj));
    print_final(traj, out);
    return kSuccess;
}

// --- paper ----------------------------------------------------------------

struct PaperArgs {
    int example = 1;
    std::string variant = "base";
    std::string out;
};

Trajectory emit(const io::ScenarioFile& file, const std::string& dir) {
    const auto traj = simulate(file.scenario);
    const auto stem = (fs::path(dir) / file.name).string();
    write(stem + ".scenario.json", io::write_scenario(file));
    write(stem + ".csv", io::write_trajectory_csv(traj));
    write(stem + ".plot.dat", io::write_plot_data(traj, file.scenario.leaders()));
    return traj;
}

int cmd_paper(const PaperArgs& a, std::ostream& out) {
    io::ScenarioFile file;
    try {
        file = builtin::example(a.example, a.variant);
    } catch (const std::invalid_argument& e) {
        throw Exit{kUsageOrParse, e.what()};
    }
    ensure_dir(a.out);
    const auto traj = emit(file, a.out);
    const auto& s = file.scenario;
    const auto& last = traj.last();
    const auto& leaders = s.leaders();
    const std::size_t m = s.dim();
    out << file.name << ": " << file.notes << "\n";
    print_final(traj, out);

    bool holds = true;
    if (a.example == 2) {
        const HullProjector proj(leaders);
        double worst = 0.0;
        for (std::size_t i = 0; i < s.agents(); ++i)
            worst = std::max(worst, std::sqrt(2.0 * proj.sq_dist(std::span(last.state).subspan(i * m, m))));
        const double residual = builtin::collinearity_residual(last.state, m, 1, 4);
        holds = worst <= 1e-3 && residual <= 1e-3;
        out << "claim: the agents enter the triangle formed by the three leaders and agents 2-5 keep a "
               "straight-line formation\n";
        out << "max distance to triangle " << fmt9(worst) << "\n";
        out << "collinearity residual agents 2-5 " << fmt9(residual) << "\n";
    } else if (a.variant == "base") {
        holds = std::all_of(last.state.begin(), last.state.end(),
                            [](double v) { return v >= 1.0 - 1e-3 && v <= 2.0 + 1e-3; });
        out << "claim: the agents approach the segment connecting the two leaders\n";
        out << "mean distance to leader 1 " << fmt9(analysis::mean_distance_to_leader(last.state, leaders, 0))
            << "\n";
    } else if (a.variant == "more-links") {
        const auto base_traj = simulate(builtin::example1("base").scenario);
        const double before = analysis::mean_distance_to_leader(base_traj.last().state, leaders, 0);
        const double after = analysis::mean_distance_to_leader(last.state, leaders, 0);
        holds = after < before;
        out << "claim: linking more agents to leader 1 moves the group closer to leader 1\n";
        out << "mean distance to leader 1: base " << fmt9(before) << ", more-links " << fmt9(after)
            << ", difference " << fmt9(before - after) << "\n";
    } else if (a.variant == "isolated-2") {
        const auto eq = equilibrium(s.topologies().front(), leaders);
        const double gap = std::abs(last.state[1] - eq.state[1]);
        holds = gap <= 1e-3 && std::abs(eq.state[1] - leaders[0][0]) <= 1e-9;
        out << "claim: agent 2, linked only to leader 1, reaches the locality of leader 1\n";
        out << "agent 2 final " << fmt9(last.state[1]) << ", predicted " << fmt9(eq.state[1]) << "\n";
    } else if (a.variant == "relay-5") {
        const auto base_traj = simulate(builtin::example1("base").scenario);
        const double before = std::abs(base_traj.last().state[4] - leaders[0][0]);
        const double after = std::abs(last.state[4] - leaders[0][0]);
        holds = after < before;
        out << "claim: once agent 5 is sensed by agents 2 and 4 it also moves toward leader 1\n";
        out << "agent 5 distance to leader 1: base " << fmt9(before) << ", relay-5 " << fmt9(after) << "\n";
    } else if (a.variant == "disconnected") {
        const auto limit = analysis::leaderless_limit(s.topologies().front(), s.initial_positions(), leaders);
        holds = last.d_xi > 0.4 && std::abs(last.d_xi - limit.predicted_d_xi) <= 1e-2;
        out << "claim: with a leaderless component the group does not converge to the leader hull\n";
        out << "final d_xi " << fmt9(last.d_xi) << ", predicted limit " << fmt9(limit.predicted_d_xi) << "\n";
    }
    out << "claim holds: " << (holds ? "yes" : "no") << "\n";
    return holds ? kSuccess : kVerificationFailed;
}

// --- verify ---------------------------------------------------------------

struct VerifyArgs {
    std::string check;
    std::optional<std::string> scenario;
    std::optional<std::size_t> random;
    std::optional<int> example;
    std::string variant = "base";
    std::uint64_t seed = 0;
    std::string out;
};

analysis::VerificationReport failed_report(const std::string& check, const std::string& why) {
    return {check, false, {}, 0.0, why};
}

std::vector<analysis::VerificationReport> verify_scenario(const std::string& check, const Scenario& s) {
    using namespace analysis;
    std::vector<VerificationReport> reports;
    const auto& topos = s.topologies();
    if (check == "lemma1") {
        for (const auto& t : topos) reports.push_back(check_lemma1(t.graph()));
    } else if (check == "lemma2") {
        for (const auto& t : topos) reports.push_back(check_lemma2(t));
    } else if (check == "theorem1") {
        if (s.schedule().entries().size() == 1) {
            reports.push_back(check_theorem1(s));
        } else {
            for (std::size_t p = 0; p < topos.size(); ++p) {
                const auto t0 = s.settings().t0;
                reports.push_back(check_theorem1(Scenario(s.initial_positions(), s.leaders(), {topos[p]},
                                                          SwitchingSchedule::fixed(0, t0), s.settings())));
            }
        }
    } else if (check == "theorem2") {
        try {
            reports.push_back(check_theorem2(s));
        } catch (const NotAllConnected& e) {
            throw Exit{kInvalidScenario, e.what()};
        }
    } else if (check == "row-stochastic") {
        for (const auto& t : topos) {
            try {
                reports.push_back(check_row_stochastic(t));
            } catch (const linalg::NotPositiveDefinite& e) {
                reports.push_back(failed_report(check, e.what()));
            }
        }
    }
    return reports;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    if (std::find(kChecks.begin(), kChecks.end(), a.check) == kChecks.end()) {
        throw Exit{kUsageOrParse, fmt::format("unknown check '{}'", a.check)};
    }
    const int sources = int(a.scenario.has_value()) + int(a.random.has_value()) + int(a.example.has_value());
    if (sources != 1) throw Exit{kUsageOrParse, "give exactly one of --scenario, --random, --example"};

    std::vector<analysis::VerificationReport> reports;
    if (a.random) {
        reports = campaign::run(a.check, *a.random, a.seed);
    } else if (a.check == "leader-pull") {
        if (a.example != 1) {
            throw Exit{kUsageOrParse, "leader-pull needs --example 1 (base vs more-links) or --random"};
        }
        const auto base = builtin::example1("base").scenario;
        reports.push_back(analysis::leader_pull_monotonicity(base.topologies().front(), base.leaders(),
                                                             builtin::example1_extra_links(), 0));
    } else {
        io::ScenarioFile file;
        if (a.scenario) {
            file = load(*a.scenario);
        } else {
            try {
                file = builtin::example(*a.example, a.variant);
            } catch (const std::invalid_argument& e) {
                throw Exit{kUsageOrParse, e.what()};
            }
        }
        reports = verify_scenario(a.check, file.scenario);
    }

    ensure_dir(a.out);
    std::string text;
    for (const auto& r : reports) text += analysis::to_text_line(r) + "\n";
    const auto stem = (fs::path(a.out) / a.check).string();
    write(stem + ".txt", text);
    write(stem + ".json", analysis::to_json(reports));

    const auto passed = std::count_if(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
    out << text;
    out << fmt::format("{}: {}/{} passed\n", a.check, passed, reports.size());
    return static_cast<std::size_t>(passed) == reports.size() ? kSuccess : kVerificationFailed;
}

// --- plotdata -------------------------------------------------------------

struct PlotArgs {
    std::string trajectory;
    std::string out;
    std::optional<std::string> scenario;
};

int cmd_plotdata(const PlotArgs& a, std::ostream& out) {
    Trajectory traj;
    try {
        traj = io::parse_trajectory_csv(io::read_file(a.trajectory));
    } catch (const io::ParseError& e) {
        throw Exit{kUsageOrParse, fmt::format("{}: parse error: {}", a.trajectory, e.what())};
    } catch (const std::runtime_error& e) {
        throw Exit{kUsageOrParse, e.what()};
    }
    std::optional<LeaderSet> leaders;
    if (a.scenario) {
        leaders = load(*a.scenario).scenario.leaders();
        if (leaders->dim() != traj.dim) {
            throw Exit{kUsageOrParse, "scenario dimension does not match the trajectory"};
        }
    }
    write(a.out, io::write_plot_data(traj, leaders));
    out << fmt::format("wrote {} agent series ({} samples){} to {}\n", traj.agents, traj.samples.size(),
                       leaders ? fmt::format(" and {} leader markers", leaders->size()) : "", a.out);
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Containment control with multiple static leaders: simulate, reproduce, verify"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate_cmd = app.add_subcommand("simulate", "Integrate a scenario file and write a trajectory CSV");
    simulate_cmd->add_option("--scenario", sim.scenario, "Scenario JSON file")->required();
    simulate_cmd->add_option("--out", sim.out, "Trajectory CSV output path")->required();
    simulate_cmd->add_option("--dt", sim.dt, "Override the step size");
    simulate_cmd->add_option("--t-final", sim.t_final, "Override the horizon");

    PaperArgs paper;
    auto* paper_cmd = app.add_subcommand("paper", "Reproduce a built-in published example");
    paper_cmd->add_option("--example", paper.example, "Example id (1 or 2)")->required();
    paper_cmd->add_option("--variant", paper.variant, "Topology variant")->capture_default_str();
    paper_cmd->add_option("--out", paper.out, "Output directory")->required();

    VerifyArgs ver;
    auto* verify_cmd = app.add_subcommand("verify", "Run a numerical certificate and write reports");
    verify_cmd->add_option("--check", ver.check, "lemma1|lemma2|theorem1|theorem2|row-stochastic|leader-pull")
        ->required();
    verify_cmd->add_option("--scenario", ver.scenario, "Scenario JSON file");
    verify_cmd->add_option("--random", ver.random, "Number of random trials");
    verify_cmd->add_option("--example", ver.example, "Built-in example id");
    verify_cmd->add_option("--variant", ver.variant, "Built-in example variant")->capture_default_str();
    verify_cmd->add_option("--seed", ver.seed, "Campaign seed")->capture_default_str();
    verify_cmd->add_option("--out", ver.out, "Report directory")->required();

    PlotArgs plot;
    auto* plot_cmd = app.add_subcommand("plotdata", "Convert a trajectory CSV into gnuplot data blocks");
    plot_cmd->add_option("trajectory", plot.trajectory, "Trajectory CSV")->required();
    plot_cmd->add_option("--out", plot.out, "Plot data output path")->required();
    plot_cmd->add_option("--scenario", plot.scenario, "Scenario JSON for leader/hull annotations");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kSuccess;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsageOrParse;
    }

    try {
        if (simulate_cmd->parsed()) return cmd_simulate(sim, out);
        if (paper_cmd->parsed()) return cmd_paper(paper, out);
        if (verify_cmd->parsed()) return cmd_verify(ver, out);
        if (plot_cmd->parsed()) return cmd_plotdata(plot, out);
    } catch (const Exit& e) {
        err << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidScenario;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsageOrParse;
    }
    return kUsageOrParse;
}

}  // namespace containment::cli
