#include "containment/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace containment {

namespace {

// Returns the grid index of t relative to t0, or throws if t is off the grid.
std::size_t grid_index(double t, double t0, double dt, const char* what) {
    const double steps = (t - t0) / dt;
    const double rounded = std::round(steps);
    if (steps < -1e-9 || std::abs(steps - rounded) > 1e-9 * std::max(1.0, std::abs(steps))) {
        throw std::invalid_argument(std::string(what) + " t = " + std::to_string(t) +
                                    " is not on the dt grid");
    }
    return static_cast<std::size_t>(rounded);
}

void axpy(std::vector<double>& y, double a, const std::vector<double>& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

}  // namespace

SwitchingSchedule::SwitchingSchedule(std::vector<Entry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("SwitchingSchedule: no entries");
    for (std::size_t l = 0; l < entries_.size(); ++l) {
        if (!std::isfinite(entries_[l].time)) {
            throw std::invalid_argument("SwitchingSchedule: non-finite switching time");
        }
        if (l > 0 && !(entries_[l].time > entries_[l - 1].time)) {
            throw std::invalid_argument("SwitchingSchedule: switching times must strictly increase");
        }
    }
}

SwitchingSchedule SwitchingSchedule::fixed(std::size_t topology, double t0) {
    return SwitchingSchedule({Entry{t0, topology}});
}

std::size_t active_topology(const SwitchingSchedule& schedule, double t) {
    const auto& e = schedule.entries();
    if (t < e.front().time) {
        throw std::out_of_range("active_topology: t precedes the first switching time");
    }
    const auto it = std::upper_bound(e.begin(), e.end(), t,
                                     [](double value, const auto& entry) { return value < entry.time; });
    return std::prev(it)->topology;
}

Scenario::Scenario(std::vector<Point> x_init, LeaderSet leaders, std::vector<Topology> topologies,
                   SwitchingSchedule schedule, Settings settings)
    : n_(x_init.size()),
      x_init_(std::move(x_init)),
      leaders_(std::move(leaders)),
      topologies_(std::move(topologies)),
      schedule_(std::move(schedule)),
      settings_(settings) {
    if (n_ == 0) throw std::invalid_argument("Scenario: at least one agent is required");
    if (leaders_.size() == 0) throw std::invalid_argument("Scenario: leader set is empty");
    const std::size_t m = leaders_.dim();
    for (std::size_t i = 0; i < n_; ++i) {
        if (x_init_[i].size() != m) {
            throw std::invalid_argument("Scenario: agent " + std::to_string(i + 1) +
                                        " has dimension " + std::to_string(x_init_[i].size()) +
                                        ", expected " + std::to_string(m));
        }
        for (double v : x_init_[i])
            if (!std::isfinite(v)) throw std::invalid_argument("Scenario: non-finite initial state");
    }
    if (topologies_.empty()) throw std::invalid_argument("Scenario: no topologies");
    for (std::size_t p = 0; p < topologies_.size(); ++p) {
        if (topologies_[p].agents() != n_ || topologies_[p].leader_count() != leaders_.size()) {
            throw std::invalid_argument("Scenario: topology " + std::to_string(p + 1) +
                                        " does not match agent/leader counts");
        }
    }
    const auto& [t0, t_final, dt] = settings_;
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("Scenario: dt must be positive");
    if (!std::isfinite(t0) || !std::isfinite(t_final) || !(t_final > t0)) {
        throw std::invalid_argument("Scenario: t_final must exceed t0");
    }
    if (schedule_.entries().empty()) throw std::invalid_argument("Scenario: empty schedule");
    if (schedule_.start() != t0) {
        throw std::invalid_argument("Scenario: schedule must start at t0");
    }
    std::size_t previous = 0;
    for (std::size_t l = 0; l < schedule_.entries().size(); ++l) {
        const auto& e = schedule_.entries()[l];
        if (e.topology >= topologies_.size()) {
            throw std::invalid_argument("Scenario: schedule references unknown topology " +
                                        std::to_string(e.topology + 1));
        }
        const auto idx = grid_index(e.time, t0, dt, "Scenario: switching time");
        if (l > 0 && idx <= previous) {
            throw std::invalid_argument("Scenario: dwell time shorter than dt");
        }
        previous = idx;
    }
    steps_ = grid_index(t_final, t0, dt, "Scenario: horizon");
    if (steps_ == 0) throw std::invalid_argument("Scenario: horizon shorter than one step");
}

std::vector<double> Scenario::initial_state() const {
    std::vector<double> x;
    x.reserve(n_ * dim());
    for (const auto& p : x_init_) x.insert(x.end(), p.begin(), p.end());
    return x;
}

Scenario Scenario::with_settings(Settings settings) const {
    auto schedule = schedule_;
    if (settings.t0 != settings_.t0) {
        std::vector<SwitchingSchedule::Entry> shifted = schedule_.entries();
        for (auto& e : shifted) e.time += settings.t0 - settings_.t0;
        schedule = SwitchingSchedule(std::move(shifted));
    }
    return Scenario(x_init_, leaders_, topologies_, std::move(schedule), settings);
}

DenseMatrix build_h(const Topology& t) {
    DenseMatrix h = laplacian(t.graph());
    for (const auto& l : t.leaders().links()) h(l.agent, l.agent) += l.weight;
    return h;
}

double min_eigenvalue_h(const Topology& t) {
    if (t.agents() == 0) return 0.0;
    return linalg::sym_eigenvalues(build_h(t)).front();
}

std::vector<double> control(std::span<const double> x, const Topology& t, const LeaderSet& leaders) {
    const std::size_t m = leaders.dim();
    if (x.size() != t.agents() * m) {
        throw std::invalid_argument("control: state length does not match n * m");
    }
    if (t.leader_count() != leaders.size()) {
        throw std::invalid_argument("control: topology and leader set disagree on k");
    }
    std::vector<double> u(x.size(), 0.0);
    for (const auto& e : t.graph().edges()) {
        for (std::size_t d = 0; d < m; ++d) {
            const double diff = e.weight * (x[e.j * m + d] - x[e.i * m + d]);
            u[e.i * m + d] += diff;
            u[e.j * m + d] -= diff;
        }
    }
    for (const auto& l : t.leaders().links()) {
        const Point& target = leaders[l.leader];
        for (std::size_t d = 0; d < m; ++d)
            u[l.agent * m + d] += l.weight * (target[d] - x[l.agent * m + d]);
    }
    return u;
}

std::vector<double> step(std::span<const double> x, const Topology& t, const LeaderSet& leaders,
                         double dt) {
    const std::vector<double> x0(x.begin(), x.end());
    const auto k1 = control(x0, t, leaders);
    auto probe = x0;
    axpy(probe, 0.5 * dt, k1);
    const auto k2 = control(probe, t, leaders);
    probe = x0;
    axpy(probe, 0.5 * dt, k2);
    const auto k3 = control(probe, t, leaders);
    probe = x0;
    axpy(probe, dt, k3);
    const auto k4 = control(probe, t, leaders);

    auto next = x0;
    for (std::size_t i = 0; i < next.size(); ++i)
        next[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return next;
}

Trajectory simulate(const Scenario& s) {
    const auto& settings = s.settings();
    const HullProjector projector(s.leaders());

    // Schedule entries converted to step indices on the dt grid.
    std::vector<std::pair<std::size_t, std::size_t>> switches;
    for (const auto& e : s.schedule().entries()) {
        switches.emplace_back(grid_index(e.time, settings.t0, settings.dt, "simulate: switching time"),
                              e.topology);
    }

    Trajectory traj;
    traj.agents = s.agents();
    traj.dim = s.dim();
    traj.samples.reserve(s.steps() + 1);

    std::size_t next_switch = 0;
    std::size_t active = switches.front().second;
    auto x = s.initial_state();
    for (std::size_t k = 0;; ++k) {
        while (next_switch < switches.size() && switches[next_switch].first <= k) {
            active = switches[next_switch].second;
            ++next_switch;
        }
        const double t = settings.t0 + static_cast<double>(k) * settings.dt;
        const double dist = projector.d_xi(x);
        if (k == s.steps()) {
            traj.samples.push_back(Sample{t, std::move(x), active, dist});
            break;
        }
        auto next = step(x, s.topologies()[active], s.leaders(), settings.dt);
        traj.samples.push_back(Sample{t, std::move(x), active, dist});
        x = std::move(next);
    }
    return traj;
}

DenseMatrix equilibrium_weights(const Topology& t) {
    if (!is_bar_connected(t)) {
        throw linalg::NotPositiveDefinite(
            "equilibrium: a component of the agent graph has no leader link, H is singular");
    }
    DenseMatrix rhs(t.agents(), t.leader_count());
    for (const auto& l : t.leaders().links()) rhs(l.agent, l.leader) = l.weight;
    return linalg::solve_spd(build_h(t), rhs);
}

Equilibrium equilibrium(const Topology& t, const LeaderSet& leaders) {
    if (t.leader_count() != leaders.size()) {
        throw std::invalid_argument("equilibrium: topology and leader set disagree on k");
    }
    const std::size_t n = t.agents();
    const std::size_t k = leaders.size();
    const std::size_t m = leaders.dim();

    Equilibrium eq{equilibrium_weights(t), {}};

    eq.state.assign(n * m, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t q = 0; q < k; ++q)
            for (std::size_t d = 0; d < m; ++d) eq.state[i * m + d] += eq.weights(i, q) * leaders[q][d];
    return eq;
}

}  // namespace containment
