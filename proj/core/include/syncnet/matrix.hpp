#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace syncnet {

/// Dense real matrix, row-major. Immutable once constructed; every entry is
/// checked to be finite on construction, so a Matrix can be shared freely
/// between worker threads.
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix zeros(std::size_t rows, std::size_t cols);
    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
    std::span<const double> row(std::size_t i) const noexcept {
        return {data_.data() + i * cols_, cols_};
    }
    std::span<const double> data() const noexcept { return data_; }

    Matrix transpose() const;
    Matrix scaled(double s) const;

    /// y = A x, written into `out` (size rows()).
    void apply(std::span<const double> x, std::span<double> out) const;
    std::vector<double> apply(std::span<const double> x) const;

    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    struct Unchecked {};
    Matrix(Unchecked, std::size_t rows, std::size_t cols, std::vector<double> entries) noexcept;

    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

/// Eigendecomposition A = Q diag(eigenvalues) Q^T of a symmetric matrix.
/// Eigenvalues ascending; column k of `eigenvectors` pairs with eigenvalues[k].
struct SpectralDecomp {
    std::vector<double> eigenvalues;
    Matrix eigenvectors;

    Matrix reconstruct() const;
};

/// max_i sum_j |a_ij|
double inf_norm(const Matrix& a) noexcept;
double frobenius_norm(const Matrix& a) noexcept;

struct KronLimits {
    std::size_t max_rows = 10'000;
    std::size_t max_cols = 10'000;
};

/// Block matrix [a_ij * b]. Throws SizeOverflow past `limits`.
Matrix kron(const Matrix& a, const Matrix& b, KronLimits limits = {});

Matrix symmetric_part(const Matrix& a);

struct JacobiOptions {
    double symmetry_tol = 1e-12;  // relative to inf-norm
    double off_tol = 1e-14;       // off-diagonal Frobenius mass relative to ||a||_F
    int max_sweeps = 100;
};

/// Cyclic Jacobi eigensolver for symmetric matrices.
///
/// Sweeps every (p, q) pair in row order, annihilating a_pq by a plane
/// rotation, until the off-diagonal Frobenius mass falls below
/// `off_tol * ||a||_F`. Eigenvalues come back ascending; each eigenvector's
/// first component of non-negligible magnitude is made positive so that the
/// output is deterministic.
///
/// Throws NotSquare, NotSymmetric, or NoConvergence.
SpectralDecomp jacobi_eig(const Matrix& a, JacobiOptions opts = {});

/// Leading principal minor determinants D_1..D_n, via LU with partial pivoting
/// on each leading block. Limited to n <= 12.
std::vector<double> principal_minor_dets(const Matrix& a);

/// Sylvester-style sign tests on the leading minors.
bool minors_positive_definite(std::span<const double> minors) noexcept;
bool minors_negative_definite(std::span<const double> minors) noexcept;

double determinant(const Matrix& a);

}  // namespace syncnet
