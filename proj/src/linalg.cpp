#include "containment/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace containment::linalg {

namespace {

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument(std::string(op) + ": shape mismatch");
    }
}

constexpr int kMaxJacobiSweeps = 100;

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw std::invalid_argument("DenseMatrix: ragged initializer");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> diag) {
    DenseMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

DenseMatrix DenseMatrix::column(std::span<const double> values) {
    DenseMatrix m(values.size(), 1);
    std::copy(values.begin(), values.end(), m.data_.begin());
    return m;
}

DenseMatrix DenseMatrix::ones(std::size_t rows, std::size_t cols) {
    return DenseMatrix(rows, cols, 1.0);
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

double DenseMatrix::max_abs() const noexcept {
    double best = 0.0;
    for (double v : data_) best = std::max(best, std::abs(v));
    return best;
}

double DenseMatrix::frobenius_norm() const noexcept {
    double sum = 0.0;
    for (double v : data_) sum += v * v;
    return std::sqrt(sum);
}

double DenseMatrix::norm_inf() const noexcept {
    double best = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) s += std::abs((*this)(r, c));
        best = std::max(best, s);
    }
    return best;
}

bool DenseMatrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
    require_same_shape(*this, other, "operator+");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& other) {
    require_same_shape(*this, other, "operator-");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) noexcept {
    for (double& v : data_) v *= s;
    return *this;
}

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
DenseMatrix operator*(DenseMatrix a, double s) { return a *= s; }
DenseMatrix operator*(double s, DenseMatrix a) { return a *= s; }

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("operator*: inner dimension mismatch");
    }
    DenseMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const double ail = a(i, l);
            if (ail == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += ail * b(l, j);
        }
    }
    return out;
}

std::vector<double> multiply(const DenseMatrix& a, std::span<const double> x) {
    if (a.cols() != x.size()) {
        throw std::invalid_argument("multiply: dimension mismatch");
    }
    std::vector<double> y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto r = a.row(i);
        y[i] = std::inner_product(r.begin(), r.end(), x.begin(), 0.0);
    }
    return y;
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double aij = a(i, j);
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    out(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
        }
    return out;
}

double asymmetry(const DenseMatrix& m) {
    if (!m.is_square()) {
        throw std::invalid_argument("asymmetry: matrix is not square");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            worst = std::max(worst, std::abs(m(i, j) - m(j, i)));
    return worst;
}

SymmetricEigen sym_eigen(const DenseMatrix& m) {
    if (!m.is_square()) {
        throw std::invalid_argument("sym_eigen: matrix is not square");
    }
    if (asymmetry(m) > 1e-9) {
        throw std::invalid_argument("sym_eigen: matrix is not symmetric");
    }
    const std::size_t n = m.rows();

    // Work on the exactly symmetrized copy.
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + m(j, i));
    DenseMatrix v = DenseMatrix::identity(n);

    const double threshold = 1e-12 * a.frobenius_norm();
    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < kMaxJacobiSweeps && off_norm() > threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t r = 0; r < n; ++r) {
                    const double arp = a(r, p);
                    const double arq = a(r, q);
                    a(r, p) = c * arp - s * arq;
                    a(r, q) = s * arp + c * arq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const double apr = a(p, r);
                    const double aqr = a(q, r);
                    a(p, r) = c * apr - s * aqr;
                    a(q, r) = s * apr + c * aqr;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    const double vrp = v(r, p);
                    const double vrq = v(r, q);
                    v(r, p) = c * vrp - s * vrq;
                    v(r, q) = s * vrp + c * vrq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

    SymmetricEigen out{std::vector<double>(n), DenseMatrix(n, n)};
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]);
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, j) = v(r, order[j]);
    }
    return out;
}

std::vector<double> sym_eigenvalues(const DenseMatrix& m) { return sym_eigen(m).values; }

DenseMatrix solve_spd(const DenseMatrix& h, const DenseMatrix& rhs) {
    if (!h.is_square()) {
        throw std::invalid_argument("solve_spd: matrix is not square");
    }
    if (rhs.rows() != h.rows()) {
        throw std::invalid_argument("solve_spd: right-hand side has wrong row count");
    }
    const std::size_t n = h.rows();
    double scale = 1.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(h(i, i)));
    const double pivot_floor = 1e-12 * scale;

    // Lower-triangular factor, h = l * l^T.
    DenseMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = h(j, j);
        for (std::size_t p = 0; p < j; ++p) d -= l(j, p) * l(j, p);
        if (!(d > pivot_floor)) {
            throw NotPositiveDefinite("solve_spd: non-positive pivot at row " +
                                      std::to_string(j + 1));
        }
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = h(i, j);
            for (std::size_t p = 0; p < j; ++p) s -= l(i, p) * l(j, p);
            l(i, j) = s / ljj;
        }
    }

    DenseMatrix x = rhs;
    for (std::size_t c = 0; c < x.cols(); ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = x(i, c);
            for (std::size_t p = 0; p < i; ++p) s -= l(i, p) * x(p, c);
            x(i, c) = s / l(i, i);
        }
        for (std::size_t i = n; i-- > 0;) {
            double s = x(i, c);
            for (std::size_t p = i + 1; p < n; ++p) s -= l(p, i) * x(p, c);
            x(i, c) = s / l(i, i);
        }
    }
    return x;
}

DenseMatrix inverse_spd(const DenseMatrix& h) {
    return solve_spd(h, DenseMatrix::identity(h.rows()));
}

bool is_row_stochastic(const DenseMatrix& m, double tol) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        double sum = 0.0;
        for (double v : m.row(r)) {
            if (v < -tol) return false;
            sum += v;
        }
        if (std::abs(sum - 1.0) > tol) return false;
    }
    return true;
}

}  // namespace containment::linalg
