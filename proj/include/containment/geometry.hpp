#pragma once

// Leader polytopes co{x0^1, ..., x0^k}: exact Euclidean projection, membership,
// and the set-distance d_Xi (half squared distance, summed over agents).

#include <cstddef>
#include <span>
#include <vector>

namespace containment {

using Point = std::vector<double>;

/// k static leader positions in R^m. 1 <= k <= kMaxLeaders, m >= 1.
class LeaderSet {
public:
    static constexpr std::size_t kMaxLeaders = 12;

    LeaderSet() = default;
    /// Throws std::invalid_argument on empty sets, ragged or non-finite coordinates,
    /// or more than kMaxLeaders leaders.
    explicit LeaderSet(std::vector<Point> positions);

    [[nodiscard]] std::size_t size() const noexcept { return positions_.size(); }
    [[nodiscard]] std::size_t dim() const noexcept { return m_; }
    [[nodiscard]] const Point& operator[](std::size_t q) const { return positions_[q]; }
    [[nodiscard]] const std::vector<Point>& positions() const noexcept { return positions_; }

    friend bool operator==(const LeaderSet&, const LeaderSet&) = default;

private:
    std::size_t m_ = 0;
    std::vector<Point> positions_;
};

struct PolytopeProjection {
    Point closest;
    std::vector<double> weights;  // convex coefficients, one per leader
    double sq_dist = 0.0;         // 0.5 * |x - closest|^2
};

/// Projection onto the leader polytope by enumerating vertex subsets.
///
/// Every subset of at most m+1 vertices is a candidate face; for each, the
/// affine least-squares fit of x is computed with a precomputed least-norm
/// pseudo-inverse, and candidates whose barycentric weights are all >= -1e-12
/// compete on distance. Larger subsets are never needed: the projection lies
/// in the relative interior of a face spanned by an affinely independent
/// subset of vertices. Precomputation happens once per leader set, so keep a
/// projector around when projecting many points.
class HullProjector {
public:
    explicit HullProjector(const LeaderSet& leaders);

    /// Throws std::invalid_argument when x.size() != leaders.dim().
    [[nodiscard]] PolytopeProjection project(std::span<const double> x) const;
    /// Half squared distance only.
    [[nodiscard]] double sq_dist(std::span<const double> x) const;
    /// Sum of per-agent half squared distances for a stacked state.
    [[nodiscard]] double d_xi(std::span<const double> stacked) const;

    [[nodiscard]] const LeaderSet& leaders() const noexcept { return leaders_; }

private:
    struct Face {
        std::vector<std::size_t> vertices;  // vertices[0] is the affine base point
        std::vector<double> directions;     // m x (s-1), row-major: v_j - v_0
        std::vector<double> pinv;           // (s-1) x m, (D^T D)^+ D^T
    };

    bool fit(const Face& face, std::span<const double> x, std::vector<double>& mu,
             std::vector<double>& point) const;

    LeaderSet leaders_;
    std::vector<Face> faces_;
};

PolytopeProjection project(std::span<const double> x, const LeaderSet& leaders);

/// d_Xi(x) = 0.5 * inf over Xi of |x - xi|^2, where Xi is the n-fold product of
/// the leader polytope. Throws std::invalid_argument if x.size() % m != 0.
double d_xi(std::span<const double> x, const LeaderSet& leaders);

/// project(x).sq_dist <= 0.5 * tol^2.
bool in_hull(std::span<const double> x, const LeaderSet& leaders, double tol);

}  // namespace containment
