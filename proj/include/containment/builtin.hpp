#pragma once

// Built-in reproductions of the two published numerical examples. Initial
// states and leader positions are the published values; the interconnection
// graphs were only ever published as drawings, so every topology here is a
// reconstruction from the figure captions and is labeled as such in `notes`.

#include <string>
#include <vector>

#include "containment/io.hpp"

namespace containment::builtin {

/// Example 1 (m = 1, n = 5, k = 2). Variants:
///   base          chain 1-2-3-4-5, agent 1 -> leader 1, agent 3 -> leader 2
///   more-links    base plus agents 2, 3, 4 -> leader 1
///   isolated-2    agent 2 cut off from the other agents, linked to leader 1
///   relay-5       base plus edges 2-5 and 4-5
///   disconnected  edges 1-2, 2-3, 4-5 only; {4, 5} has no leader link
/// Default horizon 50, dt 0.01.
io::ScenarioFile example1(const std::string& variant = "base");

/// Example 2 (m = 2, n = 5, k = 3): chain 1-2-3-4-5, agent 1 linked to every
/// leader. Only the `base` variant exists. Default horizon 100, dt 0.01.
io::ScenarioFile example2(const std::string& variant = "base");

/// Dispatch on example id 1 or 2. Throws std::invalid_argument for unknown
/// ids or variants.
io::ScenarioFile example(int id, const std::string& variant);

std::vector<std::string> variants(int id);

/// Links that turn example 1 `base` into `more-links` (agents 2, 3, 4 -> leader 1).
std::vector<LeaderLink> example1_extra_links();

/// A switched scenario with three connected topologies cycled every 1.0 time
/// unit over [0, 30] (m = 2, n = 6, k = 3).
io::ScenarioFile switched_demo();

/// Largest distance from agents first..last (zero-based, inclusive) of a
/// stacked R^m state to their principal (least-squares) line; 0 when the
/// points coincide.
double collinearity_residual(std::span<const double> stacked, std::size_t m, std::size_t first,
                             std::size_t last);

}  // namespace containment::builtin
