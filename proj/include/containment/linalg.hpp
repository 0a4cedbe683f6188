#pragma once

// Small dense linear algebra for desk-scale problems (n up to a few hundred).
// Row-major storage, value semantics, no expression templates.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace containment::linalg {

/// Raised by solve_spd when the Cholesky factorization meets a pivot that is
/// not clearly positive.
class NotPositiveDefinite : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    /// Row-major nested initializer, e.g. {{1, 2}, {3, 4}}.
    DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix diagonal(std::span<const double> diag);
    /// Column vector (n x 1) from values.
    static DenseMatrix column(std::span<const double> values);
    static DenseMatrix ones(std::size_t rows, std::size_t cols);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }
    [[nodiscard]] std::span<const double> row(std::size_t r) const {
        return std::span<const double>(data_).subspan(r * cols_, cols_);
    }

    [[nodiscard]] DenseMatrix transpose() const;
    [[nodiscard]] double max_abs() const noexcept;
    [[nodiscard]] double frobenius_norm() const noexcept;
    /// Infinity norm (max absolute row sum).
    [[nodiscard]] double norm_inf() const noexcept;
    [[nodiscard]] bool all_finite() const noexcept;

    DenseMatrix& operator+=(const DenseMatrix& other);
    DenseMatrix& operator-=(const DenseMatrix& other);
    DenseMatrix& operator*=(double s) noexcept;

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator*(DenseMatrix a, double s);
DenseMatrix operator*(double s, DenseMatrix a);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);

/// Matrix-vector product.
std::vector<double> multiply(const DenseMatrix& a, std::span<const double> x);

/// Kronecker product, shape (a.rows*b.rows) x (a.cols*b.cols).
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

/// Largest |m(i,j) - m(j,i)|; throws std::invalid_argument if not square.
double asymmetry(const DenseMatrix& m);

struct SymmetricEigen {
    std::vector<double> values;  // ascending
    DenseMatrix vectors;         // column j pairs with values[j]
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Sweeps until the
/// off-diagonal Frobenius norm is at most 1e-12 times the matrix norm.
/// Throws std::invalid_argument on non-square input or asymmetry above 1e-9.
SymmetricEigen sym_eigen(const DenseMatrix& m);

/// Ascending eigenvalues of a symmetric matrix (see sym_eigen).
std::vector<double> sym_eigenvalues(const DenseMatrix& m);

/// Solves h * X = rhs for symmetric positive definite h by Cholesky.
/// Throws NotPositiveDefinite when a pivot drops to 1e-12 (relative to the
/// largest diagonal entry) or below.
DenseMatrix solve_spd(const DenseMatrix& h, const DenseMatrix& rhs);

/// Inverse of an SPD matrix via solve_spd against the identity.
DenseMatrix inverse_spd(const DenseMatrix& h);

/// Every entry >= -tol and every row sum within tol of 1.
bool is_row_stochastic(const DenseMatrix& m, double tol);

}  // namespace containment::linalg
