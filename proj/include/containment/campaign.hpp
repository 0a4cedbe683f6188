#pragma once

// Seeded random instances for verification campaigns. Every trial draws from
// its own engine seeded by (seed, trial), so trials are reproducible in
// isolation and in any order.

#include <cstdint>
#include <random>

#include "containment/analysis.hpp"

namespace containment::campaign {

using Engine = std::mt19937_64;

Engine trial_engine(std::uint64_t seed, std::uint64_t trial);

struct Limits {
    std::size_t max_agents = 12;
    std::size_t max_leaders = 4;
    std::size_t max_dim = 3;
    double min_weight = 0.5;
    double max_weight = 2.0;
};

/// Each pair joined independently with probability edge_prob.
AgentGraph random_graph(Engine& rng, std::size_t n, double edge_prob, const Limits& lim = {});

/// Leaders uniformly in [0, 2]^m.
LeaderSet random_leaders(Engine& rng, std::size_t k, std::size_t m);

/// Random graph plus at least one leader link per component.
Topology random_connected_topology(Engine& rng, std::size_t n, std::size_t k, const Limits& lim = {});

/// Random graph where the agents in a nonempty proper subset form leaderless
/// components. Requires n >= 2.
Topology random_disconnected_topology(Engine& rng, std::size_t n, std::size_t k,
                                      const Limits& lim = {});

/// Random graph with each (agent, leader) link present with probability link_prob;
/// may or may not be connected.
Topology random_topology(Engine& rng, std::size_t n, std::size_t k, double link_prob,
                         const Limits& lim = {});

/// Points uniform in [lo, hi]^m.
std::vector<Point> random_points(Engine& rng, std::size_t n, std::size_t m, double lo, double hi);

/// Horizon t0 + ceil(multiple / rate / dt) * dt.
double horizon_for_rate(double rate, double multiple, double dt, double t0 = 0.0);

/// Fixed connected topology, horizon 20 / lambda_min(H).
Scenario random_connected_scenario(Engine& rng, const Limits& lim = {}, double dt = 0.01);

/// Fixed disconnected topology with every initial state in [3, 10]^m, at
/// least 1 away from the leader hull in [0, 2]^m. Horizon 20 / slowest rate.
Scenario random_disconnected_scenario(Engine& rng, const Limits& lim = {}, double dt = 0.01);

/// `count` connected topologies cycled with the given dwell over the horizon.
Scenario random_switched_scenario(Engine& rng, std::size_t count, double dwell, double horizon,
                                  const Limits& lim = {}, double dt = 0.01);

/// Runs `trials` instances of a named check (lemma1, lemma2, theorem1,
/// theorem2, row-stochastic, leader-pull). Throws std::invalid_argument on an
/// unknown name.
std::vector<analysis::VerificationReport> run(const std::string& check, std::size_t trials,
                                              std::uint64_t seed);

}  // namespace containment::campaign
