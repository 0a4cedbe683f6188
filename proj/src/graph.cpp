#include "containment/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace containment {

AgentGraph::AgentGraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto& e : edges_) {
        if (e.i >= n_ || e.j >= n_) {
            throw std::invalid_argument("AgentGraph: edge endpoint out of range");
        }
        if (e.i == e.j) {
            throw std::invalid_argument("AgentGraph: self-loop on agent " + std::to_string(e.i + 1));
        }
        if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
            throw std::invalid_argument("AgentGraph: edge weight must be positive and finite");
        }
        if (e.i > e.j) std::swap(e.i, e.j);
        if (!seen.emplace(e.i, e.j).second) {
            throw std::invalid_argument("AgentGraph: duplicate edge (" + std::to_string(e.i + 1) +
                                        ", " + std::to_string(e.j + 1) + ")");
        }
    }
}

LeaderLinks::LeaderLinks(std::size_t n, std::size_t k, std::vector<LeaderLink> links)
    : n_(n), k_(k), links_(std::move(links)) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& l : links_) {
        if (l.agent >= n_) throw std::invalid_argument("LeaderLinks: agent index out of range");
        if (l.leader >= k_) throw std::invalid_argument("LeaderLinks: leader index out of range");
        if (!(l.weight > 0.0) || !std::isfinite(l.weight)) {
            throw std::invalid_argument("LeaderLinks: link weight must be positive and finite");
        }
        if (!seen.emplace(l.agent, l.leader).second) {
            throw std::invalid_argument("LeaderLinks: duplicate link (agent " +
                                        std::to_string(l.agent + 1) + ", leader " +
                                        std::to_string(l.leader + 1) + ")");
        }
    }
}

std::vector<double> LeaderLinks::total_weight_per_agent() const {
    std::vector<double> total(n_, 0.0);
    for (const auto& l : links_) total[l.agent] += l.weight;
    return total;
}

Topology::Topology(AgentGraph graph, LeaderLinks leaders)
    : graph_(std::move(graph)), leaders_(std::move(leaders)) {
    if (graph_.size() != leaders_.agents()) {
        throw std::invalid_argument("Topology: graph and leader links disagree on agent count");
    }
}

DenseMatrix adjacency(const AgentGraph& g) {
    DenseMatrix a(g.size(), g.size());
    for (const auto& e : g.edges()) {
        a(e.i, e.j) = e.weight;
        a(e.j, e.i) = e.weight;
    }
    return a;
}

DenseMatrix laplacian(const AgentGraph& g) {
    DenseMatrix l(g.size(), g.size());
    for (const auto& e : g.edges()) {
        l(e.i, e.j) -= e.weight;
        l(e.j, e.i) -= e.weight;
        l(e.i, e.i) += e.weight;
        l(e.j, e.j) += e.weight;
    }
    return l;
}

std::vector<std::vector<std::size_t>> components(const AgentGraph& g) {
    // Union-find; the root of each set is kept at its smallest member.
    std::vector<std::size_t> parent(g.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& e : g.edges()) {
        const auto a = find(e.i);
        const auto b = find(e.j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> slot(g.size(), g.size());
    for (std::size_t v = 0; v < g.size(); ++v) {
        const auto root = find(v);
        if (slot[root] == g.size()) {
            slot[root] = out.size();
            out.emplace_back();
        }
        out[slot[root]].push_back(v);
    }
    return out;
}

bool is_bar_connected(const Topology& t) {
    std::vector<bool> linked(t.agents(), false);
    for (const auto& l : t.leaders().links()) linked[l.agent] = true;
    for (const auto& comp : components(t.graph())) {
        if (std::none_of(comp.begin(), comp.end(), [&](std::size_t i) { return linked[i]; })) {
            return false;
        }
    }
    return true;
}

DenseMatrix leader_matrix(const Topology& t, std::size_t q) {
    if (q >= t.leader_count()) {
        throw std::out_of_range("leader_matrix: leader index " + std::to_string(q + 1) +
                                " out of range");
    }
    DenseMatrix b(t.agents(), t.agents());
    for (const auto& l : t.leaders().links())
        if (l.leader == q) b(l.agent, l.agent) = l.weight;
    return b;
}

}  // namespace containment
