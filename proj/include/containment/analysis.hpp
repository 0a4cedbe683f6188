#pragma once

// Numerical certificates for the containment results: Laplacian spectrum,
// positive definiteness of H, convergence (and non-convergence) under fixed
// topologies, the decay envelope under switching, row-stochasticity of the
// equilibrium weights, and the leader-pull observation.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "containment/dynamics.hpp"

namespace containment::analysis {

struct Measurement {
    std::string label;
    double value = 0.0;

    friend bool operator==(const Measurement&, const Measurement&) = default;
};

struct VerificationReport {
    std::string check;
    bool passed = false;
    std::vector<Measurement> measured;
    double tolerance = 0.0;
    std::string narrative;

    /// Value for label, if measured.
    [[nodiscard]] std::optional<double> value(const std::string& label) const;

    friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

/// Raised by check_theorem2 when some topology of the scenario has a
/// component without a leader link.
class NotAllConnected : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Tolerances shared by the checks.
inline constexpr double kSpectralTol = 1e-9;
inline constexpr double kStochasticTol = 1e-9;
inline constexpr double kConvergenceTol = 1e-3;
inline constexpr double kEnvelopeSlack = 1e-3;
inline constexpr double kMonotoneTol = 1e-9;
inline constexpr double kMeanLimitTol = 1e-2;

/// lambda_1(L) ~ 0, L 1 ~ 0, zero-eigenvalue multiplicity equals the number of
/// components, and lambda_2 > 0 when the graph is connected.
VerificationReport check_lemma1(const AgentGraph& g);

/// lambda_min(H) > 0 when the augmented graph is connected, and (converse at
/// desk scale) lambda_min(H) ~ 0 when it is not.
VerificationReport check_lemma2(const Topology& t);

/// Limit of the agents that belong to leaderless components: each such
/// component settles at the mean of its members' initial positions.
struct LeaderlessLimit {
    std::vector<std::size_t> agents;      // zero-based agent indices
    std::vector<Point> limits;            // per entry of `agents`
    double predicted_d_xi = 0.0;          // sum of half squared distances of the limits
};
LeaderlessLimit leaderless_limit(const Topology& t, const std::vector<Point>& x_init,
                                 const LeaderSet& leaders);

/// Smallest nonzero decay rate of x' = -H x: the first eigenvalue of H after
/// the zero modes contributed by leaderless components.
double slowest_rate(const Topology& t);

/// Fixed-topology convergence iff the augmented graph is connected. Connected:
/// simulates and asserts final d_Xi <= n * 0.5 * (1e-3)^2 and |x(T) - x*|_inf <= 1e-3.
/// Disconnected: asserts leaderless agents settle within 1e-2 of their
/// component means and final d_Xi stays above the predicted positive floor.
/// Throws std::invalid_argument if the schedule switches.
VerificationReport check_theorem1(const Scenario& s);

/// d_Xi(t) <= d_Xi(t0) exp(-lambda_1 (t - t0)) (1 + 1e-3) at every sample, and
/// d_Xi non-increasing within 1e-9 (1 + d_Xi). lambda_1 is the smallest
/// eigenvalue over the scheduled H_p. Throws NotAllConnected.
VerificationReport check_theorem2(const Scenario& s);

/// W = H^{-1} [B^1 1, ..., B^k 1] row stochastic within 1e-9 and H^{-1} >= -1e-9.
/// Throws linalg::NotPositiveDefinite for disconnected topologies.
VerificationReport check_row_stochastic(const Topology& t);

enum class ClaimMode {
    kAssert,  // passed iff the mean distance to the leader does not grow
    kReport,  // always passes, narrative records what was observed
};

/// Adds `extra` link weight (leader q only; weights accumulate onto existing
/// links) and compares the mean equilibrium distance to leader q.
VerificationReport leader_pull_monotonicity(const Topology& base, const LeaderSet& leaders,
                                            const std::vector<LeaderLink>& extra, std::size_t q,
                                            ClaimMode mode = ClaimMode::kAssert);

/// base with the extra links for leader q merged in (weights add).
Topology with_extra_links(const Topology& base, const std::vector<LeaderLink>& extra, std::size_t q);

/// Mean over agents of the Euclidean distance from x*_i to leader q.
double mean_distance_to_leader(std::span<const double> stacked, const LeaderSet& leaders,
                               std::size_t q);

/// One line per report: "PASS|FAIL <check> tol=<tol> <label>=<value> ... | <narrative>".
std::string to_text_line(const VerificationReport& r);

/// JSON object with keys check, passed, tolerance, measured (label -> value), narrative.
std::string to_json(const std::vector<VerificationReport>& reports);

}  // namespace containment::analysis
