#pragma once

// Interconnection topologies: a weighted undirected agent graph plus the
// per-leader link weights. Agent and leader indices are zero-based here;
// files and console output use one-based ids.

#include <cstddef>
#include <vector>

#include "containment/linalg.hpp"

namespace containment {

using linalg::DenseMatrix;

struct Edge {
    std::size_t i = 0;  // always i < j after AgentGraph construction
    std::size_t j = 0;
    double weight = 1.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Weighted undirected graph on n agents. No self-loops, strictly positive
/// weights, at most one edge per unordered pair. Immutable once built.
class AgentGraph {
public:
    AgentGraph() = default;
    /// Throws std::invalid_argument if any invariant is violated.
    AgentGraph(std::size_t n, std::vector<Edge> edges);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }

    friend bool operator==(const AgentGraph&, const AgentGraph&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
};

struct LeaderLink {
    std::size_t agent = 0;
    std::size_t leader = 0;
    double weight = 1.0;

    friend bool operator==(const LeaderLink&, const LeaderLink&) = default;
};

/// Agent-to-leader link weights b_i^q. At most one link per (agent, leader).
class LeaderLinks {
public:
    LeaderLinks() = default;
    LeaderLinks(std::size_t n, std::size_t k, std::vector<LeaderLink> links);

    [[nodiscard]] std::size_t agents() const noexcept { return n_; }
    [[nodiscard]] std::size_t leaders() const noexcept { return k_; }
    [[nodiscard]] const std::vector<LeaderLink>& links() const noexcept { return links_; }

    /// Sum over leaders of b_i^q for each agent.
    [[nodiscard]] std::vector<double> total_weight_per_agent() const;

    friend bool operator==(const LeaderLinks&, const LeaderLinks&) = default;

private:
    std::size_t n_ = 0;
    std::size_t k_ = 0;
    std::vector<LeaderLink> links_;
};

/// One admissible interconnection pattern (an element of the switching index set).
class Topology {
public:
    Topology() = default;
    Topology(AgentGraph graph, LeaderLinks leaders);

    [[nodiscard]] const AgentGraph& graph() const noexcept { return graph_; }
    [[nodiscard]] const LeaderLinks& leaders() const noexcept { return leaders_; }
    [[nodiscard]] std::size_t agents() const noexcept { return graph_.size(); }
    [[nodiscard]] std::size_t leader_count() const noexcept { return leaders_.leaders(); }

    friend bool operator==(const Topology&, const Topology&) = default;

private:
    AgentGraph graph_;
    LeaderLinks leaders_;
};

DenseMatrix adjacency(const AgentGraph& g);

/// L = D - A.
DenseMatrix laplacian(const AgentGraph& g);

/// Connected components, each sorted ascending, ordered by smallest member.
std::vector<std::vector<std::size_t>> components(const AgentGraph& g);

/// True iff every component of the agent graph has an agent linked to some leader.
bool is_bar_connected(const Topology& t);

/// diag(b_1^q, ..., b_n^q). Throws std::out_of_range for q >= k.
DenseMatrix leader_matrix(const Topology& t, std::size_t q);

}  // namespace containment
