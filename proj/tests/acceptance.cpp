// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "containment/analysis.hpp"
#include "containment/builtin.hpp"
#include "containment/campaign.hpp"
#include "containment/io.hpp"
#include "oracles.hpp"

using namespace containment;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
    bool passed;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double inf_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

// Component labels by depth-first search over the edge list.
std::vector<std::size_t> label_components(const AgentGraph& g) {
    const std::size_t n = g.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& e : g.edges()) {
        adj[e.i].push_back(e.j);
        adj[e.j].push_back(e.i);
    }
    std::vector<std::size_t> label(n, n);
    std::size_t next = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (label[s] != n) continue;
        std::vector<std::size_t> stack{s};
        label[s] = next;
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            for (auto w : adj[v])
                if (label[w] == n) {
                    label[w] = next;
                    stack.push_back(w);
                }
        }
        ++next;
    }
    return label;
}

Outcome criterion1() {
    const auto start = std::chrono::steady_clock::now();
    const auto traj = simulate(builtin::example1().scenario);
    const double elapsed = seconds_since(start);
    double lo = INFINITY, hi = -INFINITY;
    for (double v : traj.last().state) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const bool ok = traj.last().t == 50.0 && lo >= 0.999 && hi <= 2.001 && elapsed < 1.0;
    return {ok, fmt::format("t_final={} range=[{:.9g}, {:.9g}] runtime={:.3f}s", traj.last().t, lo, hi, elapsed)};
}

Outcome criterion2() {
    const auto start = std::chrono::steady_clock::now();
    const auto s = builtin::example2().scenario;
    const auto traj = simulate(s);
    const double elapsed = seconds_since(start);
    const auto& x = traj.last().state;
    double worst = 0.0;
    for (std::size_t i = 0; i < s.agents(); ++i) {
        const std::vector<double> p(x.begin() + 2 * i, x.begin() + 2 * i + 2);
        worst = std::max(worst, std::sqrt(2.0 * oracles::brute_force_sq_dist(p, s.leaders().positions())));
    }
    // Residual of agents 2-5 from the line through agents 2 and 5.
    const double ax = x[2], ay = x[3], bx = x[8], by = x[9];
    const double len = std::hypot(bx - ax, by - ay);
    double residual = 0.0;
    for (std::size_t i = 1; i <= 4; ++i) {
        const double px = x[2 * i], py = x[2 * i + 1];
        const double d = len > 0.0 ? std::abs((bx - ax) * (py - ay) - (by - ay) * (px - ax)) / len
                                   : std::hypot(px - ax, py - ay);
        residual = std::max(residual, d);
    }
    const bool ok = worst <= 1e-3 && residual <= 1e-3 && elapsed < 2.0;
    return {ok, fmt::format("max_triangle_distance={:.3g} collinearity_residual={:.3g} runtime={:.3f}s", worst,
                            residual, elapsed)};
}

struct ConnectedTrial {
    double error;
    double min_weight;
    double row_error;
};

std::vector<ConnectedTrial> connected_trials() {
    std::vector<ConnectedTrial> out;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        auto rng = campaign::trial_engine(kSeed, trial);
        const auto s = campaign::random_connected_scenario(rng);
        const auto& t = s.topologies().front();
        const std::size_t n = s.agents(), k = s.leaders().size(), m = s.dim();

        // x* = H^{-1} B x0 per coordinate, via Gaussian elimination.
        const auto h = build_h(t);
        oracles::Mat a(n, oracles::Vec(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a[i][j] = h(i, j);
        std::vector<oracles::Vec> w(k);
        for (std::size_t q = 0; q < k; ++q) {
            oracles::Vec rhs(n);
            for (const auto& l : t.leaders().links())
                if (l.leader == q) rhs[l.agent] += l.weight;
            w[q] = oracles::gauss_solve(a, rhs).value_or(oracles::Vec(n, NAN));
        }
        std::vector<double> x_star(n * m, 0.0);
        double min_w = INFINITY, row_err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double sum = 0.0;
            for (std::size_t q = 0; q < k; ++q) {
                sum += w[q][i];
                min_w = std::min(min_w, w[q][i]);
                for (std::size_t d = 0; d < m; ++d) x_star[i * m + d] += w[q][i] * s.leaders()[q][d];
            }
            row_err = std::max(row_err, std::abs(sum - 1.0));
        }
        // Also check the library's W against the same bounds.
        const auto lib_w = equilibrium_weights(t);
        for (std::size_t i = 0; i < n; ++i) {
            double sum = 0.0;
            for (std::size_t q = 0; q < k; ++q) {
                sum += lib_w(i, q);
                min_w = std::min(min_w, lib_w(i, q));
            }
            row_err = std::max(row_err, std::abs(sum - 1.0));
        }
        out.push_back({inf_diff(simulate(s).last().state, x_star), min_w, row_err});
    }
    return out;
}

Outcome criterion3(const std::vector<ConnectedTrial>& trials) {
    double worst = 0.0;
    for (const auto& t : trials) worst = std::max(worst, std::isfinite(t.error) ? t.error : INFINITY);
    return {trials.size() == 100 && worst <= 1e-4, fmt::format("trials={} worst_error={:.3g}", trials.size(), worst)};
}

Outcome criterion4(const std::vector<ConnectedTrial>& trials) {
    double min_w = INFINITY, row = 0.0;
    for (const auto& t : trials) {
        min_w = std::min(min_w, t.min_weight);
        row = std::max(row, t.row_error);
    }
    return {trials.size() == 100 && min_w >= -1e-9 && row <= 1e-9,
            fmt::format("trials={} min_entry={:.3g} worst_row_sum_error={:.3g}", trials.size(), min_w, row)};
}

Outcome criterion5() {
    double min_d = INFINITY, worst_dev = 0.0, min_offset = INFINITY;
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
        auto rng = campaign::trial_engine(kSeed + 1, trial);
        const auto s = campaign::random_disconnected_scenario(rng);
        const auto& t = s.topologies().front();
        const std::size_t n = s.agents(), m = s.dim();
        const auto label = label_components(t.graph());
        std::vector<bool> led(n, false);
        for (const auto& l : t.leaders().links()) led[label[l.agent]] = true;

        const auto x = simulate(s).last().state;
        min_d = std::min(min_d, d_xi(x, s.leaders()));
        for (std::size_t i = 0; i < n; ++i) {
            if (led[label[i]]) continue;
            min_offset = std::min(min_offset, std::sqrt(2.0 * oracles::brute_force_sq_dist(
                                                                  s.initial_positions()[i], s.leaders().positions())));
            for (std::size_t d = 0; d < m; ++d) {
                double sum = 0.0, count = 0.0;
                for (std::size_t j = 0; j < n; ++j)
                    if (label[j] == label[i]) {
                        sum += s.initial_positions()[j][d];
                        count += 1.0;
                    }
                worst_dev = std::max(worst_dev, std::abs(x[i * m + d] - sum / count));
            }
        }
    }
    return {min_offset >= 1.0 && min_d >= 0.4 && worst_dev <= 1e-2,
            fmt::format("trials=50 min_initial_offset={:.3g} min_final_d_xi={:.4g} worst_mean_deviation={:.3g}",
                        min_offset, min_d, worst_dev)};
}

Outcome criterion6() {
    const auto s = builtin::switched_demo().scenario;
    double lambda1 = INFINITY;
    std::size_t connected = 0;
    for (const auto& t : s.topologies()) {
        lambda1 = std::min(lambda1, linalg::sym_eigenvalues(build_h(t)).front());
        connected += is_bar_connected(t) ? 1 : 0;
    }
    const auto traj = simulate(s);
    const double d0 = traj.samples.front().d_xi;
    bool envelope = true, monotone = true;
    double worst_ratio = 0.0;
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const auto& smp = traj.samples[i];
        const double bound = d0 * std::exp(-lambda1 * (smp.t - s.settings().t0));
        envelope = envelope && smp.d_xi <= bound * 1.001;
        if (bound > 0.0) worst_ratio = std::max(worst_ratio, smp.d_xi / bound);
        if (i > 0) monotone = monotone && smp.d_xi <= traj.samples[i - 1].d_xi + 1e-9 * (1.0 + smp.d_xi);
    }
    const bool ok = s.topologies().size() == 3 && connected == 3 && traj.samples.size() >= 3000 && envelope &&
                    monotone && d0 > 0.0;
    return {ok, fmt::format("topologies={} samples={} lambda1={:.4g} d0={:.4g} worst_ratio={:.3g} monotone={}",
                            s.topologies().size(), traj.samples.size(), lambda1, d0, worst_ratio, monotone)};
}

Outcome criterion7() {
    std::size_t graph_ok = 0, topo_ok = 0, connected_graphs = 0, connected_topos = 0;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        auto rng = campaign::trial_engine(kSeed + 2, trial);
        const std::size_t n = 1 + trial % 12;
        const auto g = campaign::random_graph(rng, n, 0.1 + 0.004 * static_cast<double>(trial));
        const auto ev = linalg::sym_eigenvalues(laplacian(g));
        std::size_t zeros = 0;
        for (double v : ev) zeros += std::abs(v) <= 1e-9 ? 1 : 0;
        const auto label = label_components(g);
        const std::size_t comps = *std::max_element(label.begin(), label.end()) + 1;
        const bool connected = comps == 1;
        connected_graphs += connected ? 1 : 0;
        const bool lambda2_positive = n > 1 && ev[1] > 1e-9;
        if (zeros == comps && (n == 1 || lambda2_positive == connected)) ++graph_ok;
    }
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        auto rng = campaign::trial_engine(kSeed + 3, trial);
        const std::size_t n = 1 + trial % 12, k = 1 + trial % 4;
        const auto t = campaign::random_topology(rng, n, k, 0.15);
        const bool connected = is_bar_connected(t);
        connected_topos += connected ? 1 : 0;
        if ((linalg::sym_eigenvalues(build_h(t)).front() > 1e-9) == connected) ++topo_ok;
    }
    return {graph_ok == 100 && topo_ok == 100,
            fmt::format("graphs={}/100 (connected {}) topologies={}/100 (bar-connected {})", graph_ok,
                        connected_graphs, topo_ok, connected_topos)};
}

Outcome criterion8() {
    auto mean_to_leader1 = [](const Scenario& s) {
        const auto x = simulate(s).last().state;
        double total = 0.0;
        for (double v : x) total += std::abs(v - s.leaders()[0][0]);
        return total / static_cast<double>(x.size());
    };
    const double base = mean_to_leader1(builtin::example1("base").scenario);
    const double more = mean_to_leader1(builtin::example1("more-links").scenario);
    return {base - more >= 1e-3,
            fmt::format("base={:.6g} more_links={:.6g} difference={:.6g}", base, more, base - more)};
}

Outcome criterion9() {
    double worst = 0.0;
    for (std::uint64_t trial = 0; trial < 1000; ++trial) {
        auto rng = campaign::trial_engine(kSeed + 4, trial);
        std::uniform_int_distribution<std::size_t> kd(1, 5), md(1, 3);
        const std::size_t k = kd(rng), m = md(rng);
        const auto leaders = campaign::random_leaders(rng, k, m);
        const auto x = campaign::random_points(rng, 1, m, -3.0, 5.0).front();
        worst = std::max(worst, std::abs(project(x, leaders).sq_dist -
                                         oracles::brute_force_sq_dist(x, leaders.positions())));
    }
    return {worst <= 1e-8, fmt::format("pairs=1000 worst_difference={:.3g}", worst)};
}

Outcome criterion10() {
    bool same = true;
    for (const auto& s : {builtin::example1().scenario, builtin::example2().scenario}) {
        const auto a = io::write_trajectory_csv(simulate(s));
        const auto b = io::write_trajectory_csv(simulate(s));
        same = same && a == b && !a.empty();
    }
    return {same, fmt::format("example CSVs byte-identical across repeats: {}", same)};
}

}  // namespace

int main() {
    const auto trials = connected_trials();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 example 1 reproduction", criterion1},
        {"2 example 2 reproduction", criterion2},
        {"3 oracle equivalence", [&] { return criterion3(trials); }},
        {"4 row stochasticity", [&] { return criterion4(trials); }},
        {"5 leaderless non-convergence", criterion5},
        {"6 switched decay envelope", criterion6},
        {"7 spectral checks", criterion7},
        {"8 leader pull", criterion8},
        {"9 projection oracle", criterion9},
        {"10 determinism", criterion10},
    };
    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        const auto r = fn();
        failures += r.passed ? 0 : 1;
        std::printf("%s criterion %s: %s\n", r.passed ? "PASS" : "FAIL", name.c_str(), r.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
