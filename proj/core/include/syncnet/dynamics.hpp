#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "syncnet/matrix.hpp"

namespace syncnet {

using State = std::vector<double>;

/// An isolated oscillator x' = f(x) on R^m together with its Jacobian Df.
class VectorField {
public:
    using EvalFn = std::function<void(std::span<const double>, std::span<double>)>;
    using JacobianFn = std::function<Matrix(std::span<const double>)>;

    VectorField(std::string name, std::size_t dim, EvalFn eval, JacobianFn jacobian);

    const std::string& name() const noexcept { return name_; }
    std::size_t dim() const noexcept { return dim_; }

    void eval(std::span<const double> x, std::span<double> out) const { eval_(x, out); }
    State eval(std::span<const double> x) const;
    Matrix jacobian(std::span<const double> x) const { return jacobian_(x); }

private:
    std::string name_;
    std::size_t dim_;
    EvalFn eval_;
    JacobianFn jacobian_;
};

/// f(x) = A x.
VectorField linear_field(Matrix a);
/// f = 0 on R^m.
VectorField zero_field(std::size_t m);

struct LorenzParams {
    double sigma = 10.0;
    double r = 28.0;
    double b = 8.0 / 3.0;

    /// Throws InvalidParams unless sigma > 0, r > 0, b > 1.
    void validate() const;
    static LorenzParams classic() { return {}; }
};

/// (sigma (y - x), x (r - z) - y, x y - b z)
VectorField lorenz_field(const LorenzParams& params);

/// Ellipsoid {x : <x - a, Q (x - a)> <= 2 level} from V(x) = 1/2 <x - a, Q (x - a)>.
struct AbsorbingSet {
    State center;
    Matrix q;
    double level;

    double lyapunov(std::span<const double> x) const;
    bool contains(std::span<const double> x) const { return lyapunov(x) <= level; }
    /// Half-widths of the axis-aligned bounding box (q diagonal).
    State half_widths() const;
};

/// Center (0, 0, 2r), Q = diag(r, sigma, sigma), with the smallest level whose
/// ellipsoid contains {V' >= 0}. For sigma >= 1, b >= 2 that level is
/// sigma b^2 r^2 / (2 (b - 1)).
AbsorbingSet lorenz_absorbing_set(const LorenzParams& params);

/// Derivative of V along the Lorenz flow: -sigma [r x^2 + y^2 + b (z - r)^2 - b r^2].
double lorenz_lyapunov_derivative(const LorenzParams& params, std::span<const double> x);

/// Half-widths of the box around r x^2 + sigma y^2 + sigma (z - 2r)^2 <= b^2 r^2 / (b - 1),
/// the region over which beta is taken. For sigma >= 1, b >= 2 its level is sigma
/// times smaller than the absorbing set's, so the box does not cover it.
struct StateBounds {
    double xmax;  // |x| <= b sqrt(r) / sqrt(b - 1)
    double ymax;  // |y| <= r b / sqrt(sigma (b - 1))
    double zdev;  // |z - 2r| <= r b / sqrt(sigma (b - 1))
};

StateBounds state_bounds(const LorenzParams& params);

/// Symmetric positive-definite coupling H = P D P^T.
class CouplingMatrix {
public:
    /// Throws NotSquare / NotSymmetric / NotPositiveDefinite.
    explicit CouplingMatrix(Matrix h);
    static CouplingMatrix identity(std::size_t m) { return CouplingMatrix(Matrix::identity(m)); }

    std::size_t dim() const noexcept { return h_.rows(); }
    const Matrix& h() const noexcept { return h_; }
    const SpectralDecomp& decomp() const noexcept { return decomp_; }
    const Matrix& p() const noexcept { return decomp_.eigenvectors; }
    double mu1() const noexcept { return decomp_.eigenvalues.front(); }
    bool is_identity() const noexcept { return identity_; }

private:
    Matrix h_;
    SpectralDecomp decomp_;
    bool identity_;
};

struct BetaOptions {
    std::size_t grid = 41;       // points per axis for the sampled supremum
    bool force_sampled = false;  // sample even when H is the identity
};

/// Closed form when H = I:
///   max{2 sigma, ymax + r + 1 + xmax, xmax + ymax + b}.
double beta_closed_form(const LorenzParams& params);

/// sup of ||P^T Df(x) P||_inf over the grid spanning the absorbing box.
double beta_sampled(const LorenzParams& params, const CouplingMatrix& h, std::size_t grid);

/// beta_closed_form for H = I, beta_sampled otherwise.
double beta_inf(const LorenzParams& params, const CouplingMatrix& h, BetaOptions opts = {});

/// Fraction of uniformly drawn states (box twice the absorbing set's bounding
/// box, members of the absorbing set skipped) where V' >= 0. Expected to be zero.
double lyapunov_decrease_check(const LorenzParams& params, std::size_t samples, std::uint64_t seed);

}  // namespace syncnet
