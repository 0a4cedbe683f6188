#pragma once

// Closed-loop containment dynamics under the neighbor rule
//
//   u_i = sum_j a_ij (x_j - x_i) + sum_q b_i^q (x0^q - x_i),
//
// integrated with fixed-step RK4 under a piecewise-constant switching signal.
// States are stacked agent-major: x = (x_1, ..., x_n), each x_i in R^m.

#include <cstddef>
#include <span>
#include <vector>

#include "containment/geometry.hpp"
#include "containment/graph.hpp"

namespace containment {

/// Switching signal sigma: entry l holds on [t_l, t_{l+1}).
class SwitchingSchedule {
public:
    struct Entry {
        double time = 0.0;
        std::size_t topology = 0;

        friend bool operator==(const Entry&, const Entry&) = default;
    };

    SwitchingSchedule() = default;
    /// Throws std::invalid_argument if empty or times are not strictly increasing.
    explicit SwitchingSchedule(std::vector<Entry> entries);
    /// Constant signal: fixed topology from t0 on.
    static SwitchingSchedule fixed(std::size_t topology, double t0 = 0.0);

    [[nodiscard]] const std::vector<Entry>& entries() const noexcept { return entries_; }
    [[nodiscard]] double start() const noexcept { return entries_.front().time; }

    friend bool operator==(const SwitchingSchedule&, const SwitchingSchedule&) = default;

private:
    std::vector<Entry> entries_;
};

/// Index of the last entry with t_l <= t. Throws std::out_of_range for t < t0.
std::size_t active_topology(const SwitchingSchedule& schedule, double t);

class Scenario {
public:
    struct Settings {
        double t0 = 0.0;
        double t_final = 10.0;
        double dt = 0.01;

        friend bool operator==(const Settings&, const Settings&) = default;
    };

    Scenario() = default;
    /// x_init holds n agents, each a point in R^m with m = leaders.dim().
    /// Throws std::invalid_argument on any inconsistency: n = 0, mismatched
    /// agent/leader counts across topologies, dt <= 0, t_final <= t0, a
    /// schedule that does not start at t0, references an unknown topology,
    /// switches off the dt grid or dwells less than dt, or a horizon that is
    /// not a whole number of steps.
    Scenario(std::vector<Point> x_init, LeaderSet leaders, std::vector<Topology> topologies,
             SwitchingSchedule schedule, Settings settings);

    [[nodiscard]] std::size_t agents() const noexcept { return n_; }
    [[nodiscard]] std::size_t dim() const noexcept { return leaders_.dim(); }
    [[nodiscard]] const std::vector<Point>& initial_positions() const noexcept { return x_init_; }
    [[nodiscard]] std::vector<double> initial_state() const;
    [[nodiscard]] const LeaderSet& leaders() const noexcept { return leaders_; }
    [[nodiscard]] const std::vector<Topology>& topologies() const noexcept { return topologies_; }
    [[nodiscard]] const SwitchingSchedule& schedule() const noexcept { return schedule_; }
    [[nodiscard]] const Settings& settings() const noexcept { return settings_; }
    /// Number of integration steps from t0 to t_final.
    [[nodiscard]] std::size_t steps() const noexcept { return steps_; }

    /// Same scenario with a different step size and/or horizon (revalidated).
    [[nodiscard]] Scenario with_settings(Settings settings) const;

    friend bool operator==(const Scenario&, const Scenario&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Point> x_init_;
    LeaderSet leaders_;
    std::vector<Topology> topologies_;
    SwitchingSchedule schedule_;
    Settings settings_;
    std::size_t steps_ = 0;
};

struct Sample {
    double t = 0.0;
    std::vector<double> state;
    std::size_t topology = 0;  // active on [t, t + dt)
    double d_xi = 0.0;
};

struct Trajectory {
    std::size_t agents = 0;
    std::size_t dim = 0;
    std::vector<Sample> samples;

    [[nodiscard]] const Sample& last() const { return samples.back(); }
};

/// H = L + sum_q B^q.
DenseMatrix build_h(const Topology& t);

/// Smallest eigenvalue of build_h(t).
double min_eigenvalue_h(const Topology& t);

/// Stacked control input u(x) for topology t.
std::vector<double> control(std::span<const double> x, const Topology& t, const LeaderSet& leaders);

/// One classical RK4 step of x' = control(x).
std::vector<double> step(std::span<const double> x, const Topology& t, const LeaderSet& leaders,
                         double dt);

Trajectory simulate(const Scenario& s);

/// W solving H W = [B^1 1_n, ..., B^k 1_n]. Throws linalg::NotPositiveDefinite
/// if the augmented graph is disconnected.
DenseMatrix equilibrium_weights(const Topology& t);

struct Equilibrium {
    DenseMatrix weights;        // n x k, row i holds the convex weights of agent i
    std::vector<double> state;  // stacked x*
};

/// x* = [H^{-1} B (I_k (x) 1_n)] (x) I_m x0, computed per coordinate through
/// equilibrium_weights instead of the nm x nm Kronecker system.
Equilibrium equilibrium(const Topology& t, const LeaderSet& leaders);

}  // namespace containment
