#include <doctest.h>

#include <cmath>

#include "containment/builtin.hpp"
#include "containment/campaign.hpp"
#include "containment/dynamics.hpp"
#include "oracles.hpp"

using namespace containment;
using linalg::DenseMatrix;

namespace {

Topology single(std::size_t k, std::vector<LeaderLink> links) {
    return Topology(AgentGraph(1, {}), LeaderLinks(1, k, std::move(links)));
}

Topology chain2() { return Topology(AgentGraph(2, {{0, 1, 1.0}}), LeaderLinks(2, 1, {{0, 0, 1.0}})); }

double inf_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace

TEST_CASE("build_h examples") {
    CHECK(build_h(single(1, {{0, 0, 1.0}})) == DenseMatrix{{1.0}});
    CHECK(build_h(single(2, {{0, 0, 1.0}, {0, 1, 1.0}})) == DenseMatrix{{2.0}});
    CHECK(build_h(chain2()) == DenseMatrix{{2, -1}, {-1, 1}});
}

TEST_CASE("control and step examples") {
    const auto t = single(1, {{0, 0, 1.0}});
    const LeaderSet leader(std::vector<Point>{{1.0}});
    const std::vector<double> x{5.0};
    CHECK(control(x, t, leader) == std::vector<double>{-4.0});

    const auto next = step(x, t, leader, 0.1);
    CHECK(std::abs(next[0] - oracles::scalar_flow(5.0, 1.0, 1.0, 0.1)) <= 1e-6);
    CHECK(std::abs(next[0] - (1.0 + 4.0 * std::exp(-0.1))) <= 1e-6);

    const auto eq = equilibrium(t, leader);
    for (double v : control(eq.state, t, leader)) CHECK(std::abs(v) <= 1e-9);
    CHECK(inf_diff(step(eq.state, t, leader, 0.1), eq.state) <= 1e-12);
}

TEST_CASE("RK4 is fourth order on the scalar flow") {
    const auto t = single(1, {{0, 0, 2.0}});
    const LeaderSet leader(std::vector<Point>{{1.0}});
    auto global_error = [&](double dt) {
        std::vector<double> x{5.0};
        const auto n = static_cast<int>(std::lround(1.0 / dt));
        for (int i = 0; i < n; ++i) x = step(x, t, leader, dt);
        return std::abs(x[0] - oracles::scalar_flow(5.0, 1.0, 2.0, 1.0));
    };
    const double ratio = global_error(0.1) / global_error(0.05);
    CHECK(ratio > 14.0);
    CHECK(ratio < 18.0);
}

TEST_CASE("control matches the Kronecker closed loop") {
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
        auto rng = campaign::trial_engine(21, trial);
        const std::size_t n = 1 + trial % 8, k = 1 + trial % 3, m = 1 + trial % 3;
        const auto t = campaign::random_topology(rng, n, k, 0.4);
        const auto leaders = campaign::random_leaders(rng, k, m);
        std::vector<double> x;
        for (const auto& p : campaign::random_points(rng, n, m, -3.0, 3.0)) x.insert(x.end(), p.begin(), p.end());

        // u = -(H (x) I_m) x + sum_q (B^q (x) I_m)(1_n (x) x0^q)
        const auto im = DenseMatrix::identity(m);
        auto u = linalg::multiply(-1.0 * linalg::kron(build_h(t), im), x);
        for (std::size_t q = 0; q < k; ++q) {
            std::vector<double> target;
            for (std::size_t i = 0; i < n; ++i) target.insert(target.end(), leaders[q].begin(), leaders[q].end());
            const auto f = linalg::multiply(linalg::kron(leader_matrix(t, q), im), target);
            for (std::size_t i = 0; i < u.size(); ++i) u[i] += f[i];
        }
        CHECK(inf_diff(control(x, t, leaders), u) <= 1e-12);
    }
}

TEST_CASE("active_topology examples") {
    const SwitchingSchedule s({{0.0, 0}, {5.0, 1}});
    CHECK(active_topology(s, 4.999) == 0);
    CHECK(active_topology(s, 5.0) == 1);
    CHECK(active_topology(s, 0.0) == 0);
    CHECK(active_topology(SwitchingSchedule::fixed(0), 1e6) == 0);
    CHECK_THROWS_AS(active_topology(s, -0.1), std::out_of_range);
    CHECK_THROWS_AS(SwitchingSchedule(std::vector<SwitchingSchedule::Entry>{}), std::invalid_argument);
    CHECK_THROWS_AS(SwitchingSchedule({{1.0, 0}, {1.0, 1}}), std::invalid_argument);
}

TEST_CASE("scenario validation") {
    const LeaderSet leader(std::vector<Point>{{1.0}});
    const std::vector<Topology> one{single(1, {{0, 0, 1.0}})};
    const Scenario::Settings ok{0.0, 1.0, 0.1};
    CHECK_NOTHROW(Scenario({{5.0}}, leader, one, SwitchingSchedule::fixed(0), ok));

    // No agents.
    CHECK_THROWS_AS(Scenario({}, leader, {Topology(AgentGraph(0, {}), LeaderLinks(0, 1, {}))},
                             SwitchingSchedule::fixed(0), ok),
                    std::invalid_argument);
    // Dimension mismatch.
    CHECK_THROWS_AS(Scenario({{5.0, 1.0}}, leader, one, SwitchingSchedule::fixed(0), ok), std::invalid_argument);
    // Unknown topology.
    CHECK_THROWS_AS(Scenario({{5.0}}, leader, one, SwitchingSchedule::fixed(1), ok), std::invalid_argument);
    // Bad step / horizon.
    CHECK_THROWS_AS(Scenario({{5.0}}, leader, one, SwitchingSchedule::fixed(0), {0.0, 1.0, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Scenario({{5.0}}, leader, one, SwitchingSchedule::fixed(0), {0.0, 0.0, 0.1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Scenario({{5.0}}, leader, one, SwitchingSchedule::fixed(0), {0.0, 1.05, 0.1}),
                    std::invalid_argument);
    // Schedule must start at t0 and switch on the grid.
    CHECK_THROWS_AS(Scenario({{5.0}}, leader, one, SwitchingSchedule::fixed(0, 0.5), ok), std::invalid_argument);
    const std::vector<Topology> two{one[0], single(1, {{0, 0, 2.0}})};
    CHECK_NOTHROW(Scenario({{5.0}}, leader, two, SwitchingSchedule({{0.0, 0}, {0.5, 1}}), ok));
    CHECK_THROWS_AS(Scenario({{5.0}}, leader, two, SwitchingSchedule({{0.0, 0}, {0.55, 1}}), ok),
                    std::invalid_argument);
    // Inconsistent leader counts across topologies.
    const std::vector<Topology> mixed{one[0], single(2, {{0, 1, 1.0}})};
    CHECK_THROWS_AS(Scenario({{5.0}}, leader, mixed, SwitchingSchedule::fixed(0), ok), std::invalid_argument);
}

TEST_CASE("equilibrium examples") {
    const auto a = equilibrium(single(1, {{0, 0, 1.0}}), LeaderSet(std::vector<Point>{{3.0, -1.0}}));
    CHECK(a.weights == DenseMatrix{{1.0}});
    CHECK(inf_diff(a.state, {3.0, -1.0}) <= 1e-12);

    const auto b = equilibrium(chain2(), LeaderSet(std::vector<Point>{{4.0}}));
    CHECK((b.weights - DenseMatrix{{1.0}, {1.0}}).max_abs() <= 1e-12);
    CHECK(inf_diff(b.state, {4.0, 4.0}) <= 1e-12);

    const auto c = equilibrium(single(2, {{0, 0, 1.0}, {0, 1, 1.0}}), LeaderSet(std::vector<Point>{{0.0, 0.0}, {2.0, 4.0}}));
    CHECK((c.weights - DenseMatrix{{0.5, 0.5}}).max_abs() <= 1e-12);
    CHECK(inf_diff(c.state, {1.0, 2.0}) <= 1e-12);

    const Topology cut(AgentGraph(2, {}), LeaderLinks(2, 1, {{0, 0, 1.0}}));
    CHECK_THROWS_AS(equilibrium_weights(cut), linalg::NotPositiveDefinite);
}

TEST_CASE("equilibrium weights are row stochastic and x* lies in the hull") {
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        auto rng = campaign::trial_engine(31, trial);
        const std::size_t n = 1 + trial % 12, k = 1 + trial % 4, m = 1 + trial % 3;
        const auto t = campaign::random_connected_topology(rng, n, k);
        const auto leaders = campaign::random_leaders(rng, k, m);
        const auto eq = equilibrium(t, leaders);
        CHECK(linalg::is_row_stochastic(eq.weights, 1e-9));
        CHECK(d_xi(eq.state, leaders) <= 1e-18);

        // Independent solve of H W = B through Gaussian elimination.
        const auto h = build_h(t);
        for (std::size_t q = 0; q < k; ++q) {
            oracles::Mat a(n, oracles::Vec(n));
            oracles::Vec rhs(n);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) a[i][j] = h(i, j);
                rhs[i] = leader_matrix(t, q)(i, i);
            }
            const auto sol = oracles::gauss_solve(a, rhs);
            REQUIRE(sol);
            for (std::size_t i = 0; i < n; ++i) CHECK(std::abs((*sol)[i] - eq.weights(i, q)) <= 1e-9);
        }
    }
}

TEST_CASE("equilibrium is equivariant under translating the leaders") {
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
        auto rng = campaign::trial_engine(32, trial);
        const std::size_t n = 2 + trial % 8, k = 1 + trial % 4, m = 1 + trial % 3;
        const auto t = campaign::random_connected_topology(rng, n, k);
        const auto leaders = campaign::random_leaders(rng, k, m);
        const auto shift = campaign::random_points(rng, 1, m, -5.0, 5.0).front();
        auto moved = leaders.positions();
        for (auto& p : moved)
            for (std::size_t d = 0; d < m; ++d) p[d] += shift[d];
        const auto a = equilibrium(t, leaders);
        const auto b = equilibrium(t, LeaderSet(moved));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t d = 0; d < m; ++d) CHECK(std::abs(b.state[i * m + d] - a.state[i * m + d] - shift[d]) <= 1e-9);
    }
}

TEST_CASE("simulate samples the grid and starts at the initial state") {
    const auto s = builtin::example1().scenario.with_settings({0.0, 2.0, 0.01});
    const auto traj = simulate(s);
    REQUIRE(traj.samples.size() == 201);
    CHECK(traj.agents == 5);
    CHECK(traj.dim == 1);
    CHECK(traj.samples.front().state == s.initial_state());
    for (std::size_t i = 0; i < traj.samples.size(); ++i) CHECK(std::abs(traj.samples[i].t - 0.01 * i) <= 1e-12);
    CHECK(traj.samples.front().d_xi == d_xi(s.initial_state(), s.leaders()));
}

TEST_CASE("simulate follows the switching signal") {
    const LeaderSet leaders(std::vector<Point>{{0.0}, {10.0}});
    const std::vector<Topology> tops{single(2, {{0, 0, 1.0}}), single(2, {{0, 1, 1.0}})};
    const Scenario s({{5.0}}, leaders, tops, SwitchingSchedule({{0.0, 0}, {1.0, 1}}), {0.0, 2.0, 0.01});
    const auto traj = simulate(s);
    CHECK(traj.samples[99].topology == 0);
    CHECK(traj.samples[100].topology == 1);
    const double at1 = oracles::scalar_flow(5.0, 0.0, 1.0, 1.0);
    CHECK(std::abs(traj.samples[100].state[0] - at1) <= 1e-9);
    CHECK(std::abs(traj.last().state[0] - oracles::scalar_flow(at1, 10.0, 1.0, 1.0)) <= 1e-9);
}

TEST_CASE("simulate converges to the equilibrium on random connected topologies") {
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        auto rng = campaign::trial_engine(33, trial);
        const auto s = campaign::random_connected_scenario(rng);
        CHECK(s.settings().t_final >= 20.0 / min_eigenvalue_h(s.topologies()[0]));
        const auto eq = equilibrium(s.topologies()[0], s.leaders());
        CHECK(inf_diff(simulate(s).last().state, eq.state) <= 1e-4);
    }
}

TEST_CASE("example 1 ends on the leader segment") {
    const auto traj = simulate(builtin::example1().scenario);
    CHECK(traj.last().t == doctest::Approx(50.0));
    for (double v : traj.last().state) {
        CHECK(v >= 1.0 - 1e-3);
        CHECK(v <= 2.0 + 1e-3);
    }
}
