#include "containment/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace containment::campaign {

namespace {

std::size_t uniform_size(Engine& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double uniform(Engine& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool coin(Engine& rng, double p) { return std::bernoulli_distribution(p)(rng); }

// Random edges restricted to pairs within the same group label.
std::vector<Edge> grouped_edges(Engine& rng, const std::vector<int>& group, double edge_prob,
                                const Limits& lim) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < group.size(); ++i)
        for (std::size_t j = i + 1; j < group.size(); ++j)
            if (group[i] == group[j] && coin(rng, edge_prob))
                edges.push_back({i, j, uniform(rng, lim.min_weight, lim.max_weight)});
    return edges;
}

// One link on a random member of each listed component, plus sparse extras.
std::vector<LeaderLink> cover_components(Engine& rng, const std::vector<std::vector<std::size_t>>& comps,
                                         std::size_t k, const Limits& lim) {
    std::vector<LeaderLink> links;
    std::vector<std::vector<bool>> taken;
    for (const auto& comp : comps) {
        const auto agent = comp[uniform_size(rng, 0, comp.size() - 1)];
        links.push_back({agent, uniform_size(rng, 0, k - 1), uniform(rng, lim.min_weight, lim.max_weight)});
        for (auto i : comp)
            for (std::size_t q = 0; q < k; ++q) {
                const bool exists = std::any_of(links.begin(), links.end(), [&](const LeaderLink& l) {
                    return l.agent == i && l.leader == q;
                });
                if (!exists && coin(rng, 0.15))
                    links.push_back({i, q, uniform(rng, lim.min_weight, lim.max_weight)});
            }
    }
    return links;
}

}  // namespace

Engine trial_engine(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    return Engine(seq);
}

AgentGraph random_graph(Engine& rng, std::size_t n, double edge_prob, const Limits& lim) {
    return AgentGraph(n, grouped_edges(rng, std::vector<int>(n, 0), edge_prob, lim));
}

LeaderSet random_leaders(Engine& rng, std::size_t k, std::size_t m) {
    return LeaderSet(random_points(rng, k, m, 0.0, 2.0));
}

std::vector<Point> random_points(Engine& rng, std::size_t n, std::size_t m, double lo, double hi) {
    std::vector<Point> pts(n, Point(m));
    for (auto& p : pts)
        for (auto& v : p) v = uniform(rng, lo, hi);
    return pts;
}

Topology random_connected_topology(Engine& rng, std::size_t n, std::size_t k, const Limits& lim) {
    auto graph = random_graph(rng, n, uniform(rng, 0.1, 0.6), lim);
    auto links = cover_components(rng, components(graph), k, lim);
    return Topology(std::move(graph), LeaderLinks(n, k, std::move(links)));
}

Topology random_disconnected_topology(Engine& rng, std::size_t n, std::size_t k, const Limits& lim) {
    if (n < 2) throw std::invalid_argument("random_disconnected_topology: need at least two agents");
    // Group 1 (leaderless) is a nonempty proper subset.
    std::vector<int> group(n, 0);
    const auto stray = uniform_size(rng, 1, n - 1);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t s = 0; s < stray; ++s) group[order[s]] = 1;

    AgentGraph graph(n, grouped_edges(rng, group, uniform(rng, 0.2, 0.8), lim));
    std::vector<std::vector<std::size_t>> linked_comps;
    for (auto& comp : components(graph))
        if (group[comp.front()] == 0) linked_comps.push_back(std::move(comp));
    auto links = cover_components(rng, linked_comps, k, lim);
    return Topology(std::move(graph), LeaderLinks(n, k, std::move(links)));
}

Topology random_topology(Engine& rng, std::size_t n, std::size_t k, double link_prob, const Limits& lim) {
    auto graph = random_graph(rng, n, uniform(rng, 0.05, 0.6), lim);
    std::vector<LeaderLink> links;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t q = 0; q < k; ++q)
            if (coin(rng, link_prob)) links.push_back({i, q, uniform(rng, lim.min_weight, lim.max_weight)});
    return Topology(std::move(graph), LeaderLinks(n, k, std::move(links)));
}

double horizon_for_rate(double rate, double multiple, double dt, double t0) {
    const double steps = std::ceil(multiple / rate / dt);
    return t0 + std::max(1.0, steps) * dt;
}

Scenario random_connected_scenario(Engine& rng, const Limits& lim, double dt) {
    const auto n = uniform_size(rng, 1, lim.max_agents);
    const auto k = uniform_size(rng, 1, lim.max_leaders);
    const auto m = uniform_size(rng, 1, lim.max_dim);
    auto leaders = random_leaders(rng, k, m);
    auto topo = random_connected_topology(rng, n, k, lim);
    auto x0 = random_points(rng, n, m, -5.0, 7.0);
    const double t_final = horizon_for_rate(min_eigenvalue_h(topo), 20.0, dt);
    return Scenario(std::move(x0), std::move(leaders), {std::move(topo)}, SwitchingSchedule::fixed(0),
                    {0.0, t_final, dt});
}

Scenario random_disconnected_scenario(Engine& rng, const Limits& lim, double dt) {
    const auto n = uniform_size(rng, 2, lim.max_agents);
    const auto k = uniform_size(rng, 1, lim.max_leaders);
    const auto m = uniform_size(rng, 1, lim.max_dim);
    auto leaders = random_leaders(rng, k, m);
    auto topo = random_disconnected_topology(rng, n, k, lim);
    auto x0 = random_points(rng, n, m, 3.0, 10.0);
    const double rate = analysis::slowest_rate(topo);
    const double t_final = std::isfinite(rate) ? horizon_for_rate(rate, 20.0, dt) : 1.0;
    return Scenario(std::move(x0), std::move(leaders), {std::move(topo)}, SwitchingSchedule::fixed(0),
                    {0.0, t_final, dt});
}

Scenario random_switched_scenario(Engine& rng, std::size_t count, double dwell, double horizon,
                                  const Limits& lim, double dt) {
    const auto n = uniform_size(rng, 2, lim.max_agents);
    const auto k = uniform_size(rng, 1, lim.max_leaders);
    const auto m = uniform_size(rng, 1, lim.max_dim);
    auto leaders = random_leaders(rng, k, m);
    std::vector<Topology> topos;
    for (std::size_t p = 0; p < count; ++p) topos.push_back(random_connected_topology(rng, n, k, lim));
    std::vector<SwitchingSchedule::Entry> entries;
    const auto switches = static_cast<std::size_t>(std::ceil(horizon / dwell - 1e-9));
    for (std::size_t l = 0; l < switches; ++l)
        entries.push_back({static_cast<double>(l) * dwell, l % count});
    auto x0 = random_points(rng, n, m, -6.0, 8.0);
    return Scenario(std::move(x0), std::move(leaders), std::move(topos),
                    SwitchingSchedule(std::move(entries)), {0.0, horizon, dt});
}

std::vector<analysis::VerificationReport> run(const std::string& check, std::size_t trials,
                                              std::uint64_t seed) {
    using namespace analysis;
    const Limits lim;
    std::vector<VerificationReport> out;
    out.reserve(trials);
    for (std::size_t trial = 0; trial < trials; ++trial) {
        auto rng = trial_engine(seed, trial);
        if (check == "lemma1") {
            const auto n = uniform_size(rng, 1, lim.max_agents);
            out.push_back(check_lemma1(random_graph(rng, n, uniform(rng, 0.05, 0.6), lim)));
        } else if (check == "lemma2") {
            const auto n = uniform_size(rng, 1, lim.max_agents);
            const auto k = uniform_size(rng, 1, lim.max_leaders);
            out.push_back(check_lemma2(random_topology(rng, n, k, 0.1, lim)));
        } else if (check == "theorem1") {
            out.push_back(check_theorem1(trial % 2 == 0 ? random_connected_scenario(rng, lim)
                                                        : random_disconnected_scenario(rng, lim)));
        } else if (check == "theorem2") {
            out.push_back(check_theorem2(random_switched_scenario(rng, 3, 1.0, 30.0, lim)));
        } else if (check == "row-stochastic") {
            const auto n = uniform_size(rng, 1, lim.max_agents);
            const auto k = uniform_size(rng, 1, lim.max_leaders);
            out.push_back(check_row_stochastic(random_connected_topology(rng, n, k, lim)));
        } else if (check == "leader-pull") {
            const auto n = uniform_size(rng, 1, lim.max_agents);
            const auto k = uniform_size(rng, 1, lim.max_leaders);
            const auto m = uniform_size(rng, 1, lim.max_dim);
            auto leaders = random_leaders(rng, k, m);
            auto base = random_connected_topology(rng, n, k, lim);
            std::vector<LeaderLink> extra;
            for (std::size_t i = 0; i < n; ++i)
                if (coin(rng, 0.3)) extra.push_back({i, 0, uniform(rng, lim.min_weight, lim.max_weight)});
            out.push_back(leader_pull_monotonicity(base, leaders, extra, 0, ClaimMode::kReport));
        } else {
            throw std::invalid_argument("unknown check '" + check + "'");
        }
    }
    return out;
}

}  // namespace containment::campaign
