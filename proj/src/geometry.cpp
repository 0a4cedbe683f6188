#include "containment/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "containment/linalg.hpp"

namespace containment {

namespace {

constexpr double kWeightFloor = -1e-12;

}  // namespace

LeaderSet::LeaderSet(std::vector<Point> positions) : positions_(std::move(positions)) {
    if (positions_.empty()) {
        throw std::invalid_argument("LeaderSet: at least one leader is required");
    }
    if (positions_.size() > kMaxLeaders) {
        throw std::invalid_argument("LeaderSet: at most " + std::to_string(kMaxLeaders) +
                                    " leaders are supported");
    }
    m_ = positions_.front().size();
    if (m_ == 0) throw std::invalid_argument("LeaderSet: dimension must be positive");
    for (const auto& p : positions_) {
        if (p.size() != m_) throw std::invalid_argument("LeaderSet: ragged leader coordinates");
        for (double v : p)
            if (!std::isfinite(v)) throw std::invalid_argument("LeaderSet: non-finite coordinate");
    }
}

HullProjector::HullProjector(const LeaderSet& leaders) : leaders_(leaders) {
    const std::size_t k = leaders_.size();
    const std::size_t m = leaders_.dim();
    const std::size_t max_size = std::min(k, m + 1);

    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        Face face;
        for (std::size_t q = 0; q < k; ++q)
            if (mask & (1u << q)) face.vertices.push_back(q);
        if (face.vertices.size() > max_size) continue;

        const std::size_t cols = face.vertices.size() - 1;
        const Point& base = leaders_[face.vertices[0]];
        linalg::DenseMatrix d(m, cols);
        for (std::size_t c = 0; c < cols; ++c) {
            const Point& v = leaders_[face.vertices[c + 1]];
            for (std::size_t r = 0; r < m; ++r) d(r, c) = v[r] - base[r];
        }
        if (cols > 0) {
            const auto gram = d.transpose() * d;
            const auto eig = linalg::sym_eigen(gram);
            const double top = std::max(eig.values.back(), 0.0);
            const double cutoff = 1e-12 * std::max(top, std::numeric_limits<double>::min());
            linalg::DenseMatrix gram_pinv(cols, cols);
            for (std::size_t e = 0; e < cols; ++e) {
                if (eig.values[e] <= cutoff) continue;
                const double inv = 1.0 / eig.values[e];
                for (std::size_t i = 0; i < cols; ++i)
                    for (std::size_t j = 0; j < cols; ++j)
                        gram_pinv(i, j) += inv * eig.vectors(i, e) * eig.vectors(j, e);
            }
            const auto pinv = gram_pinv * d.transpose();
            face.pinv.assign(pinv.data().begin(), pinv.data().end());
        }
        face.directions.assign(d.data().begin(), d.data().end());
        faces_.push_back(std::move(face));
    }
}

bool HullProjector::fit(const Face& face, std::span<const double> x, std::vector<double>& mu,
                        std::vector<double>& point) const {
    const std::size_t m = leaders_.dim();
    const std::size_t cols = face.vertices.size() - 1;
    const Point& base = leaders_[face.vertices[0]];

    mu.assign(cols, 0.0);
    for (std::size_t c = 0; c < cols; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < m; ++r) s += face.pinv[c * m + r] * (x[r] - base[r]);
        mu[c] = s;
    }
    double base_weight = 1.0;
    for (double v : mu) {
        if (v < kWeightFloor) return false;
        base_weight -= v;
    }
    if (base_weight < kWeightFloor) return false;

    point.assign(base.begin(), base.end());
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < cols; ++c) point[r] += face.directions[r * cols + c] * mu[c];
    return true;
}

PolytopeProjection HullProjector::project(std::span<const double> x) const {
    const std::size_t m = leaders_.dim();
    if (x.size() != m) {
        throw std::invalid_argument("project: point has dimension " + std::to_string(x.size()) +
                                    ", leaders live in R^" + std::to_string(m));
    }
    const Face* best_face = nullptr;
    std::vector<double> best_mu;
    Point best_point;
    double best = std::numeric_limits<double>::infinity();

    std::vector<double> mu;
    Point point;
    for (const auto& face : faces_) {
        if (!fit(face, x, mu, point)) continue;
        double s = 0.0;
        for (std::size_t r = 0; r < m; ++r) s += (x[r] - point[r]) * (x[r] - point[r]);
        if (s < best) {
            best = s;
            best_face = &face;
            best_mu = mu;
            best_point = point;
        }
    }
    // Singleton faces always fit, so a candidate exists.
    PolytopeProjection out;
    out.closest = std::move(best_point);
    out.sq_dist = 0.5 * best;
    out.weights.assign(leaders_.size(), 0.0);
    double base_weight = 1.0;
    for (std::size_t c = 0; c < best_mu.size(); ++c) {
        const double w = std::max(best_mu[c], 0.0);
        out.weights[best_face->vertices[c + 1]] = w;
        base_weight -= best_mu[c];
    }
    out.weights[best_face->vertices[0]] = std::max(base_weight, 0.0);
    double total = 0.0;
    for (double w : out.weights) total += w;
    for (double& w : out.weights) w /= total;
    return out;
}

double HullProjector::sq_dist(std::span<const double> x) const { return project(x).sq_dist; }

double HullProjector::d_xi(std::span<const double> stacked) const {
    const std::size_t m = leaders_.dim();
    if (stacked.size() % m != 0) {
        throw std::invalid_argument("d_xi: state length " + std::to_string(stacked.size()) +
                                    " is not a multiple of m = " + std::to_string(m));
    }
    double total = 0.0;
    for (std::size_t off = 0; off < stacked.size(); off += m)
        total += sq_dist(stacked.subspan(off, m));
    return total;
}

PolytopeProjection project(std::span<const double> x, const LeaderSet& leaders) {
    return HullProjector(leaders).project(x);
}

double d_xi(std::span<const double> x, const LeaderSet& leaders) {
    return HullProjector(leaders).d_xi(x);
}

bool in_hull(std::span<const double> x, const LeaderSet& leaders, double tol) {
    return project(x, leaders).sq_dist <= 0.5 * tol * tol;
}

}  // namespace containment
