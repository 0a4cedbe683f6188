#include "containment/builtin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace containment::builtin {

namespace {

// One-based helpers for the example definitions.
Edge edge(std::size_t i, std::size_t j) { return {i - 1, j - 1, 1.0}; }
LeaderLink link(std::size_t agent, std::size_t leader) { return {agent - 1, leader - 1, 1.0}; }

constexpr const char* kReconstructed =
    "reconstructed topology: the original interconnection graph is only available as a drawing";

io::ScenarioFile make(std::string name, std::string notes, std::vector<Point> agents,
                      std::vector<Point> leaders, std::vector<Edge> edges, std::vector<LeaderLink> links,
                      double t_final) {
    const std::size_t n = agents.size();
    const std::size_t k = leaders.size();
    Topology topo(AgentGraph(n, std::move(edges)), LeaderLinks(n, k, std::move(links)));
    return {std::move(name), std::move(notes),
            Scenario(std::move(agents), LeaderSet(std::move(leaders)), {std::move(topo)},
                     SwitchingSchedule::fixed(0), {0.0, t_final, 0.01})};
}

}  // namespace

io::ScenarioFile example1(const std::string& variant) {
    std::vector<Point> agents{{5.0}, {5.5}, {6.0}, {7.0}, {6.5}};
    std::vector<Point> leaders{{1.0}, {2.0}};
    std::vector<Edge> chain{edge(1, 2), edge(2, 3), edge(3, 4), edge(4, 5)};
    std::vector<LeaderLink> base_links{link(1, 1), link(3, 2)};
    const std::string name = "example1-" + variant;

    if (variant == "base") {
        return make(name, std::string(kReconstructed) + "; chain 1-2-3-4-5, agent 1 -> leader 1, agent 3 -> leader 2",
                    agents, leaders, chain, base_links, 50.0);
    }
    if (variant == "more-links") {
        auto links = base_links;
        for (const auto& l : example1_extra_links()) links.push_back(l);
        return make(name, std::string(kReconstructed) + "; base plus agents 2, 3, 4 linked to leader 1", agents,
                    leaders, chain, links, 50.0);
    }
    if (variant == "isolated-2") {
        auto links = base_links;
        links.push_back(link(2, 1));
        return make(name,
                    std::string(kReconstructed) +
                        "; agent 2 not connected with other agents but linked to leader 1",
                    agents, leaders, {edge(3, 4), edge(4, 5)}, links, 50.0);
    }
    if (variant == "relay-5") {
        auto edges = chain;
        edges.push_back(edge(2, 5));  // 4-5 is already a chain edge
        return make(name, std::string(kReconstructed) + "; base plus agents 2 and 4 connected with agent 5",
                    agents, leaders, edges, base_links, 50.0);
    }
    if (variant == "disconnected") {
        return make(name,
                    "necessity demonstration: agents 4 and 5 form a component with no leader link; "
                    "they settle at their mean 6.75",
                    agents, leaders, {edge(1, 2), edge(2, 3), edge(4, 5)}, base_links, 50.0);
    }
    throw std::invalid_argument("unknown variant '" + variant + "' for example 1");
}

io::ScenarioFile example2(const std::string& variant) {
    if (variant != "base") throw std::invalid_argument("unknown variant '" + variant + "' for example 2");
    return make("example2-base",
                std::string(kReconstructed) + "; chain 1-2-3-4-5, agent 1 linked to all three leaders",
                {{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}, {4.0, 0.0}},
                {{1.0, 1.0}, {2.0, 2.0}, {1.0, 2.0}},
                {edge(1, 2), edge(2, 3), edge(3, 4), edge(4, 5)}, {link(1, 1), link(1, 2), link(1, 3)},
                100.0);
}

io::ScenarioFile example(int id, const std::string& variant) {
    if (id == 1) return example1(variant);
    if (id == 2) return example2(variant);
    throw std::invalid_argument("unknown example id " + std::to_string(id));
}

std::vector<std::string> variants(int id) {
    if (id == 1) return {"base", "more-links", "isolated-2", "relay-5", "disconnected"};
    if (id == 2) return {"base"};
    return {};
}

std::vector<LeaderLink> example1_extra_links() { return {link(2, 1), link(3, 1), link(4, 1)}; }

io::ScenarioFile switched_demo() {
    const std::size_t n = 6;
    const std::size_t k = 3;
    std::vector<Topology> topos;
    topos.emplace_back(AgentGraph(n, {edge(1, 2), edge(2, 3), edge(3, 4), edge(4, 5), edge(5, 6)}),
                       LeaderLinks(n, k, {link(1, 1)}));
    topos.emplace_back(AgentGraph(n, {edge(3, 1), edge(3, 2), edge(3, 4), edge(3, 5), edge(3, 6)}),
                       LeaderLinks(n, k, {link(6, 2), link(2, 3)}));
    topos.emplace_back(AgentGraph(n, {edge(1, 2), edge(2, 3), edge(1, 3), edge(4, 5), edge(5, 6)}),
                       LeaderLinks(n, k, {link(1, 3), link(5, 1), link(6, 2)}));
    std::vector<SwitchingSchedule::Entry> entries;
    for (std::size_t l = 0; l < 30; ++l) entries.push_back({static_cast<double>(l), l % 3});
    Scenario s({{-4.0, -3.0}, {5.0, 6.0}, {8.0, -2.0}, {-2.0, 7.0}, {0.0, -5.0}, {6.0, 3.0}},
               LeaderSet({{1.0, 1.0}, {2.0, 2.0}, {1.0, 2.0}}), std::move(topos),
               SwitchingSchedule(std::move(entries)), {0.0, 30.0, 0.01});
    return {"switched-demo", "three connected topologies cycled with dwell 1.0", std::move(s)};
}

double collinearity_residual(std::span<const double> stacked, std::size_t m, std::size_t first,
                             std::size_t last) {
    const std::size_t count = last - first + 1;
    Point centroid(m, 0.0);
    for (std::size_t i = first; i <= last; ++i)
        for (std::size_t d = 0; d < m; ++d) centroid[d] += stacked[i * m + d] / static_cast<double>(count);

    linalg::DenseMatrix cov(m, m);
    for (std::size_t i = first; i <= last; ++i)
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                cov(a, b) += (stacked[i * m + a] - centroid[a]) * (stacked[i * m + b] - centroid[b]);
    const auto eig = linalg::sym_eigen(cov);

    double worst = 0.0;
    for (std::size_t i = first; i <= last; ++i) {
        double along = 0.0;
        double total = 0.0;
        for (std::size_t d = 0; d < m; ++d) {
            const double r = stacked[i * m + d] - centroid[d];
            along += r * eig.vectors(d, m - 1);
            total += r * r;
        }
        worst = std::max(worst, std::sqrt(std::max(0.0, total - along * along)));
    }
    return worst;
}

}  // namespace containment::builtin
