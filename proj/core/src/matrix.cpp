#include "syncnet/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "syncnet/error.hpp"

namespace syncnet {

namespace {

void require_square(const Matrix& a, const char* op) {
    if (!a.is_square()) {
        throw Error(ErrorCode::NotSquare, std::string(op) + ": matrix is " + std::to_string(a.rows()) +
                                              "x" + std::to_string(a.cols()));
    }
}

}  // namespace

Matrix::Matrix(Unchecked, std::size_t rows, std::size_t cols, std::vector<double> entries) noexcept
    : rows_(rows), cols_(cols), data_(std::move(entries)) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows_ == 0 || cols_ == 0) {
        throw Error(ErrorCode::DimensionMismatch, "matrix dimensions must be positive");
    }
    if (data_.size() != rows_ * cols_) {
        throw Error(ErrorCode::DimensionMismatch,
                    "expected " + std::to_string(rows_ * cols_) + " entries, got " +
                        std::to_string(data_.size()));
    }
    if (!std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); })) {
        throw Error(ErrorCode::NotFinite, "matrix entries must be finite");
    }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : Matrix(rows.size(), rows.size() ? rows.begin()->size() : 0, [&] {
          std::vector<double> flat;
          const std::size_t width = rows.size() ? rows.begin()->size() : 0;
          for (const auto& r : rows) {
              if (r.size() != width) {
                  throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
              }
              flat.insert(flat.end(), r.begin(), r.end());
          }
          return flat;
      }()) {}

Matrix Matrix::zeros(std::size_t rows, std::size_t cols) {
    return Matrix(rows, cols, std::vector<double>(rows * cols, 0.0));
}

Matrix Matrix::identity(std::size_t n) {
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 1.0;
    return Matrix(n, n, std::move(d));
}

Matrix Matrix::diagonal(std::span<const double> diag) {
    const std::size_t n = diag.size();
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) d[i * n + i] = diag[i];
    return Matrix(n, n, std::move(d));
}

Matrix Matrix::transpose() const {
    std::vector<double> t(data_.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t[j * rows_ + i] = data_[i * cols_ + j];
    return Matrix(Unchecked{}, cols_, rows_, std::move(t));
}

Matrix Matrix::scaled(double s) const {
    std::vector<double> d(data_);
    for (double& v : d) v *= s;
    return Matrix(rows_, cols_, std::move(d));
}

void Matrix::apply(std::span<const double> x, std::span<double> out) const {
    if (x.size() != cols_ || out.size() != rows_) {
        throw Error(ErrorCode::DimensionMismatch, "matrix-vector product size mismatch");
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* r = data_.data() + i * cols_;
        double acc = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) acc += r[j] * x[j];
        out[i] = acc;
    }
}

std::vector<double> Matrix::apply(std::span<const double> x) const {
    std::vector<double> out(rows_);
    apply(x, out);
    return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
        throw Error(ErrorCode::DimensionMismatch, "matrix sum size mismatch");
    }
    std::vector<double> d(a.data_);
    for (std::size_t k = 0; k < d.size(); ++k) d[k] += b.data_[k];
    return Matrix(a.rows_, a.cols_, std::move(d));
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
        throw Error(ErrorCode::DimensionMismatch, "matrix difference size mismatch");
    }
    std::vector<double> d(a.data_);
    for (std::size_t k = 0; k < d.size(); ++k) d[k] -= b.data_[k];
    return Matrix(a.rows_, a.cols_, std::move(d));
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
        throw Error(ErrorCode::DimensionMismatch, "matrix product size mismatch");
    }
    std::vector<double> d(a.rows_ * b.cols_, 0.0);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const double aik = a.data_[i * a.cols_ + k];
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) d[i * b.cols_ + j] += aik * b.data_[k * b.cols_ + j];
        }
    return Matrix(a.rows_, b.cols_, std::move(d));
}

Matrix SpectralDecomp::reconstruct() const {
    const Matrix& q = eigenvectors;
    const std::size_t n = q.rows();
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < eigenvalues.size(); ++k) acc += q(i, k) * eigenvalues[k] * q(j, k);
            d[i * n + j] = acc;
        }
    return Matrix(n, n, std::move(d));
}

double inf_norm(const Matrix& a) noexcept {
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (double v : a.row(i)) s += std::abs(v);
        best = std::max(best, s);
    }
    return best;
}

double frobenius_norm(const Matrix& a) noexcept {
    double s = 0.0;
    for (double v : a.data()) s += v * v;
    return std::sqrt(s);
}

Matrix kron(const Matrix& a, const Matrix& b, KronLimits limits) {
    const std::size_t rows = a.rows() * b.rows();
    const std::size_t cols = a.cols() * b.cols();
    if (rows > limits.max_rows || cols > limits.max_cols) {
        throw Error(ErrorCode::SizeOverflow, "kron result " + std::to_string(rows) + "x" +
                                                 std::to_string(cols) + " exceeds configured cap");
    }
    std::vector<double> d(rows * cols);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    d[(i * b.rows() + k) * cols + j * b.cols() + l] = aij * b(k, l);
        }
    return Matrix(rows, cols, std::move(d));
}

Matrix symmetric_part(const Matrix& a) {
    require_square(a, "symmetric_part");
    const std::size_t n = a.rows();
    std::vector<double> d(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i * n + j] = 0.5 * (a(i, j) + a(j, i));
    return Matrix(n, n, std::move(d));
}

SpectralDecomp jacobi_eig(const Matrix& a, JacobiOptions opts) {
    require_square(a, "jacobi_eig");
    const std::size_t n = a.rows();

    const double norm_inf = inf_norm(a);
    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += std::abs(a(i, j) - a(j, i));
        asym = std::max(asym, s);
    }
    if (asym > opts.symmetry_tol * norm_inf) {
        throw Error(ErrorCode::NotSymmetric,
                    "||A - A^T||_inf = " + std::to_string(asym) + " exceeds tolerance");
    }

    std::vector<double> w(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) w[i * n + j] = 0.5 * (a(i, j) + a(j, i));
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    auto at = [&](std::size_t i, std::size_t j) -> double& { return w[i * n + j]; };
    auto off_mass = [&] {
        double s = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) s += at(p, q) * at(p, q);
        return std::sqrt(2.0 * s);
    };

    const double target = opts.off_tol * frobenius_norm(a);
    bool converged = off_mass() <= target;
    for (int sweep = 1; !converged && sweep <= opts.max_sweeps; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) continue;
                const double app = at(p, p);
                const double aqq = at(q, q);
                // Entries below rounding level of both diagonals are dropped outright.
                const double g = 100.0 * std::abs(apq);
                if (sweep > 4 && std::abs(app) + g == std::abs(app) && std::abs(aqq) + g == std::abs(aqq)) {
                    at(p, q) = at(q, p) = 0.0;
                    continue;
                }
                const double theta = (aqq - app) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = at(k, p);
                    const double akq = at(k, q);
                    at(k, p) = at(p, k) = c * akp - s * akq;
                    at(k, q) = at(q, k) = s * akp + c * akq;
                }
                at(p, p) = app - t * apq;
                at(q, q) = aqq + t * apq;
                at(p, q) = at(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k * n + p];
                    const double vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
        converged = off_mass() <= target;
    }
    if (!converged) {
        throw Error(ErrorCode::NoConvergence,
                    "Jacobi did not converge in " + std::to_string(opts.max_sweeps) + " sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return at(x, x) < at(y, y); });

    std::vector<double> values(n);
    std::vector<double> vecs(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = order[k];
        values[k] = at(src, src);
        double sign = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double c = v[i * n + src];
            if (std::abs(c) > 1e-10) {
                sign = c < 0.0 ? -1.0 : 1.0;
                break;
            }
        }
        for (std::size_t i = 0; i < n; ++i) vecs[i * n + k] = sign * v[i * n + src];
    }
    return SpectralDecomp{std::move(values), Matrix(n, n, std::move(vecs))};
}

namespace {

double lu_determinant(std::vector<double> m, std::size_t n) {
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(m[r * n + col]) > std::abs(m[pivot * n + col])) pivot = r;
        if (m[pivot * n + col] == 0.0) return 0.0;
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m[pivot * n + j], m[col * n + j]);
            det = -det;
        }
        const double d = m[col * n + col];
        det *= d;
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = m[r * n + col] / d;
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) m[r * n + j] -= f * m[col * n + j];
        }
    }
    return det;
}

}  // namespace

double determinant(const Matrix& a) {
    require_square(a, "determinant");
    return lu_determinant(std::vector<double>(a.data().begin(), a.data().end()), a.rows());
}

std::vector<double> principal_minor_dets(const Matrix& a) {
    require_square(a, "principal_minor_dets");
    const std::size_t n = a.rows();
    if (n > 12) {
        throw Error(ErrorCode::SizeOverflow, "principal minors limited to n <= 12");
    }
    std::vector<double> dets;
    dets.reserve(n);
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<double> block(k * k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) block[i * k + j] = a(i, j);
        dets.push_back(lu_determinant(std::move(block), k));
    }
    return dets;
}

bool minors_positive_definite(std::span<const double> minors) noexcept {
    return std::all_of(minors.begin(), minors.end(), [](double d) { return d > 0.0; });
}

bool minors_negative_definite(std::span<const double> minors) noexcept {
    for (std::size_t k = 0; k < minors.size(); ++k) {
        // D_1 < 0, D_2 > 0, D_3 < 0, ...
        const bool odd_order = (k % 2) == 0;
        if (odd_order ? !(minors[k] < 0.0) : !(minors[k] > 0.0)) return false;
    }
    return true;
}

}  // namespace syncnet
