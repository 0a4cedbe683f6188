#include "containment/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace containment::analysis {

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace

std::optional<double> VerificationReport::value(const std::string& label) const {
    for (const auto& m : measured)
        if (m.label == label) return m.value;
    return std::nullopt;
}

VerificationReport check_lemma1(const AgentGraph& g) {
    VerificationReport r{"lemma1", false, {}, kSpectralTol, {}};
    const auto l = laplacian(g);
    const auto comps = components(g);
    const auto ones = std::vector<double>(g.size(), 1.0);
    const auto l1 = linalg::multiply(l, ones);
    double kernel_residual = 0.0;
    for (double v : l1) kernel_residual = std::max(kernel_residual, std::abs(v));

    const auto eig = g.size() == 0 ? std::vector<double>{} : linalg::sym_eigenvalues(l);
    const auto zeros = static_cast<std::size_t>(
        std::count_if(eig.begin(), eig.end(), [](double v) { return std::abs(v) <= kSpectralTol; }));
    const double lambda1 = eig.empty() ? 0.0 : eig[0];

    r.measured.push_back({"lambda1", lambda1});
    if (eig.size() > 1) r.measured.push_back({"lambda2", eig[1]});
    r.measured.push_back({"components", static_cast<double>(comps.size())});
    r.measured.push_back({"zero_eigenvalues", static_cast<double>(zeros)});
    r.measured.push_back({"kernel_residual", kernel_residual});

    const bool connected = comps.size() == 1;
    const bool lambda2_ok = !connected || eig.size() < 2 || eig[1] > kSpectralTol;
    r.passed = std::abs(lambda1) <= kSpectralTol && kernel_residual <= 1e-12 * (1.0 + l.norm_inf()) &&
               zeros == comps.size() && lambda2_ok;
    r.narrative = fmt::format("{} component(s); {} zero eigenvalue(s); connected={}", comps.size(),
                              zeros, yes_no(connected));
    return r;
}

VerificationReport check_lemma2(const Topology& t) {
    VerificationReport r{"lemma2", false, {}, kSpectralTol, {}};
    const bool connected = is_bar_connected(t);
    const double lmin = min_eigenvalue_h(t);
    r.measured.push_back({"lambda_min_h", lmin});
    r.measured.push_back({"bar_connected", connected ? 1.0 : 0.0});
    r.passed = connected ? lmin > kSpectralTol : lmin <= kSpectralTol;
    r.narrative = connected ? "augmented graph connected; H must be positive definite"
                            : "augmented graph disconnected; H must be singular (leaderless kernel)";
    return r;
}

LeaderlessLimit leaderless_limit(const Topology& t, const std::vector<Point>& x_init,
                                 const LeaderSet& leaders) {
    std::vector<bool> linked(t.agents(), false);
    for (const auto& l : t.leaders().links()) linked[l.agent] = true;

    const HullProjector projector(leaders);
    const std::size_t m = leaders.dim();
    LeaderlessLimit out;
    for (const auto& comp : components(t.graph())) {
        if (std::any_of(comp.begin(), comp.end(), [&](std::size_t i) { return linked[i]; })) continue;
        // Symmetric weights conserve the unweighted component mean.
        Point mean(m, 0.0);
        for (auto i : comp)
            for (std::size_t d = 0; d < m; ++d) mean[d] += x_init[i][d];
        for (auto& v : mean) v /= static_cast<double>(comp.size());
        const double sq = projector.sq_dist(mean);
        for (auto i : comp) {
            out.agents.push_back(i);
            out.limits.push_back(mean);
            out.predicted_d_xi += sq;
        }
    }
    return out;
}

double slowest_rate(const Topology& t) {
    const auto eig = linalg::sym_eigenvalues(build_h(t));
    std::vector<bool> linked(t.agents(), false);
    for (const auto& l : t.leaders().links()) linked[l.agent] = true;
    std::size_t zero_modes = 0;
    for (const auto& comp : components(t.graph()))
        if (std::none_of(comp.begin(), comp.end(), [&](std::size_t i) { return linked[i]; })) ++zero_modes;
    if (zero_modes >= eig.size()) return std::numeric_limits<double>::infinity();
    return eig[zero_modes];
}

VerificationReport check_theorem1(const Scenario& s) {
    if (s.schedule().entries().size() != 1) {
        throw std::invalid_argument("check_theorem1: scenario must use a fixed topology");
    }
    VerificationReport r{"theorem1", false, {}, kConvergenceTol, {}};
    const auto& topo = s.topologies()[s.schedule().entries().front().topology];
    const bool connected = is_bar_connected(topo);
    const auto traj = simulate(s);
    const auto& last = traj.last();
    r.measured.push_back({"bar_connected", connected ? 1.0 : 0.0});
    r.measured.push_back({"t_final", last.t});
    r.measured.push_back({"final_d_xi", last.d_xi});

    if (connected) {
        const auto eq = equilibrium(topo, s.leaders());
        const double err = max_abs_diff(last.state, eq.state);
        const double d_bound = 0.5 * kConvergenceTol * kConvergenceTol * static_cast<double>(s.agents());
        r.measured.push_back({"d_xi_bound", d_bound});
        r.measured.push_back({"equilibrium_error", err});
        r.passed = last.d_xi <= d_bound && err <= kConvergenceTol;
        r.narrative = fmt::format("connected: agents converge into the leader hull (|x - x*|_inf = {:.3g})", err);
        return r;
    }

    const auto limit = leaderless_limit(topo, s.initial_positions(), s.leaders());
    const std::size_t m = s.dim();
    double deviation = 0.0;
    for (std::size_t a = 0; a < limit.agents.size(); ++a) {
        const auto i = limit.agents[a];
        for (std::size_t d = 0; d < m; ++d)
            deviation = std::max(deviation, std::abs(last.state[i * m + d] - limit.limits[a][d]));
    }
    r.tolerance = kMeanLimitTol;
    r.measured.push_back({"leaderless_agents", static_cast<double>(limit.agents.size())});
    r.measured.push_back({"predicted_floor", limit.predicted_d_xi});
    r.measured.push_back({"mean_limit_deviation", deviation});

    if (limit.predicted_d_xi <= kSpectralTol) {
        r.passed = true;
        r.narrative =
            "disconnected, but every leaderless component starts with its mean inside the hull: "
            "non-generic initial condition, not a counterexample";
        return r;
    }
    const double floor = limit.predicted_d_xi - kMeanLimitTol * (1.0 + limit.predicted_d_xi);
    r.passed = deviation <= kMeanLimitTol && last.d_xi > kSpectralTol && last.d_xi >= floor;
    r.narrative = fmt::format(
        "disconnected: leaderless agents settle at their component means (not static, not divergent); "
        "d_xi stays at {:.6g} vs predicted {:.6g}",
        last.d_xi, limit.predicted_d_xi);
    return r;
}

VerificationReport check_theorem2(const Scenario& s) {
    for (std::size_t p = 0; p < s.topologies().size(); ++p) {
        if (!is_bar_connected(s.topologies()[p])) {
            throw NotAllConnected("check_theorem2: topology " + std::to_string(p + 1) +
                                  " has a component without a leader link");
        }
    }
    VerificationReport r{"theorem2", false, {}, kEnvelopeSlack, {}};

    std::vector<bool> used(s.topologies().size(), false);
    for (const auto& e : s.schedule().entries()) used[e.topology] = true;
    double lambda1 = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < used.size(); ++p)
        if (used[p]) lambda1 = std::min(lambda1, min_eigenvalue_h(s.topologies()[p]));

    const auto traj = simulate(s);
    const double t0 = s.settings().t0;
    const double d0 = traj.samples.front().d_xi;
    double worst_margin = -std::numeric_limits<double>::infinity();
    double worst_ratio = 0.0;
    double max_increase = -std::numeric_limits<double>::infinity();
    bool envelope_ok = true;
    bool monotone_ok = true;
    for (std::size_t k = 0; k < traj.samples.size(); ++k) {
        const auto& smp = traj.samples[k];
        const double envelope = d0 * std::exp(-lambda1 * (smp.t - t0)) * (1.0 + kEnvelopeSlack);
        worst_margin = std::max(worst_margin, smp.d_xi - envelope);
        if (envelope > 0.0) worst_ratio = std::max(worst_ratio, smp.d_xi / envelope);
        if (smp.d_xi > envelope + 1e-12) envelope_ok = false;
        if (k > 0) {
            const double prev = traj.samples[k - 1].d_xi;
            max_increase = std::max(max_increase, smp.d_xi - prev);
            if (smp.d_xi > prev + kMonotoneTol * (1.0 + prev)) monotone_ok = false;
        }
    }
    r.measured.push_back({"lambda1", lambda1});
    r.measured.push_back({"d_xi_initial", d0});
    r.measured.push_back({"d_xi_final", traj.last().d_xi});
    r.measured.push_back({"worst_envelope_margin", worst_margin});
    r.measured.push_back({"worst_envelope_ratio", worst_ratio});
    r.measured.push_back({"max_step_increase", traj.samples.size() > 1 ? max_increase : 0.0});
    r.measured.push_back({"samples", static_cast<double>(traj.samples.size())});
    r.passed = lambda1 > 0.0 && envelope_ok && monotone_ok;
    r.narrative = fmt::format("{} sample(s); envelope {}; monotone {}", traj.samples.size(),
                              envelope_ok ? "holds" : "violated", monotone_ok ? "holds" : "violated");
    return r;
}

VerificationReport check_row_stochastic(const Topology& t) {
    VerificationReport r{"row-stochastic", false, {}, kStochasticTol, {}};
    const auto w = equilibrium_weights(t);
    const auto h_inv = linalg::inverse_spd(build_h(t));

    double min_w = std::numeric_limits<double>::infinity();
    double worst_row = 0.0;
    for (std::size_t i = 0; i < w.rows(); ++i) {
        double sum = 0.0;
        for (double v : w.row(i)) {
            min_w = std::min(min_w, v);
            sum += v;
        }
        worst_row = std::max(worst_row, std::abs(sum - 1.0));
    }
    double min_inv = std::numeric_limits<double>::infinity();
    for (double v : h_inv.data()) min_inv = std::min(min_inv, v);

    r.measured.push_back({"min_weight", min_w});
    r.measured.push_back({"max_row_sum_error", worst_row});
    r.measured.push_back({"min_h_inverse", min_inv});
    r.passed = linalg::is_row_stochastic(w, kStochasticTol) && min_inv >= -kStochasticTol;
    r.narrative = fmt::format("W is {}x{}; H^-1 nonnegative={}", w.rows(), w.cols(),
                              yes_no(min_inv >= -kStochasticTol));
    return r;
}

Topology with_extra_links(const Topology& base, const std::vector<LeaderLink>& extra, std::size_t q) {
    std::map<std::pair<std::size_t, std::size_t>, double> merged;
    for (const auto& l : base.leaders().links()) merged[{l.agent, l.leader}] += l.weight;
    for (const auto& l : extra) {
        if (l.leader != q) {
            throw std::invalid_argument("with_extra_links: extra links must target leader " +
                                        std::to_string(q + 1));
        }
        merged[{l.agent, l.leader}] += l.weight;
    }
    // Keep the base ordering first, then new links in the order given.
    std::vector<LeaderLink> links;
    for (const auto& l : base.leaders().links()) links.push_back({l.agent, l.leader, merged[{l.agent, l.leader}]});
    for (const auto& l : extra) {
        const bool present = std::any_of(links.begin(), links.end(), [&](const LeaderLink& x) {
            return x.agent == l.agent && x.leader == l.leader;
        });
        if (!present) links.push_back({l.agent, l.leader, merged[{l.agent, l.leader}]});
    }
    return Topology(base.graph(),
                    LeaderLinks(base.agents(), base.leader_count(), std::move(links)));
}

double mean_distance_to_leader(std::span<const double> stacked, const LeaderSet& leaders,
                               std::size_t q) {
    const std::size_t m = leaders.dim();
    const std::size_t n = stacked.size() / m;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t d = 0; d < m; ++d) {
            const double diff = stacked[i * m + d] - leaders[q][d];
            s += diff * diff;
        }
        total += std::sqrt(s);
    }
    return n == 0 ? 0.0 : total / static_cast<double>(n);
}

VerificationReport leader_pull_monotonicity(const Topology& base, const LeaderSet& leaders,
                                            const std::vector<LeaderLink>& extra, std::size_t q,
                                            ClaimMode mode) {
    VerificationReport r{"leader-pull", false, {}, 1e-12, {}};
    const auto augmented = with_extra_links(base, extra, q);
    const double before = mean_distance_to_leader(equilibrium(base, leaders).state, leaders, q);
    const double after = mean_distance_to_leader(equilibrium(augmented, leaders).state, leaders, q);
    const bool closer = after <= before + r.tolerance;
    r.measured.push_back({"base_mean_distance", before});
    r.measured.push_back({"augmented_mean_distance", after});
    r.measured.push_back({"difference", before - after});
    r.measured.push_back({"added_links", static_cast<double>(extra.size())});
    r.passed = mode == ClaimMode::kReport || closer;
    r.narrative = fmt::format("{} link(s) to leader {}: mean distance {:.6g} -> {:.6g} ({}){}",
                              extra.size(), q + 1, before, after,
                              closer ? "group moved closer or stayed" : "group moved away",
                              mode == ClaimMode::kReport ? " [observed, not asserted]" : "");
    return r;
}

std::string to_text_line(const VerificationReport& r) {
    std::string line = fmt::format("{} {} tol={:.9g}", r.passed ? "PASS" : "FAIL", r.check, r.tolerance);
    for (const auto& m : r.measured) line += fmt::format(" {}={:.9g}", m.label, m.value);
    line += " | " + r.narrative;
    return line;
}

std::string to_json(const std::vector<VerificationReport>& reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json measured = nlohmann::ordered_json::object();
        for (const auto& m : r.measured) measured[m.label] = m.value;
        arr.push_back({{"check", r.check},
                       {"passed", r.passed},
                       {"tolerance", r.tolerance},
                       {"measured", measured},
                       {"narrative", r.narrative}});
    }
    return arr.dump(2) + "\n";
}

}  // namespace containment::analysis
