#include "syncnet/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "syncnet/error.hpp"
#include "syncnet/parallel.hpp"
#include "syncnet/random.hpp"

namespace syncnet {

VectorField::VectorField(std::string name, std::size_t dim, EvalFn eval, JacobianFn jacobian)
    : name_(std::move(name)), dim_(dim), eval_(std::move(eval)), jacobian_(std::move(jacobian)) {
    if (dim_ == 0 || !eval_ || !jacobian_) {
        throw Error(ErrorCode::InvalidParams, "vector field needs a positive dimension and both callables");
    }
}

State VectorField::eval(std::span<const double> x) const {
    State out(dim_);
    eval_(x, out);
    return out;
}

VectorField linear_field(Matrix a) {
    if (!a.is_square()) {
        throw Error(ErrorCode::NotSquare, "linear field needs a square matrix");
    }
    const std::size_t m = a.rows();
    return VectorField(
        "linear", m, [a](std::span<const double> x, std::span<double> out) { a.apply(x, out); },
        [a](std::span<const double>) { return a; });
}

VectorField zero_field(std::size_t m) {
    return VectorField(
        "zero", m, [](std::span<const double>, std::span<double> out) { std::fill(out.begin(), out.end(), 0.0); },
        [m](std::span<const double>) { return Matrix::zeros(m, m); });
}

void LorenzParams::validate() const {
    if (!(sigma > 0.0) || !(r > 0.0) || !(b > 1.0) || !std::isfinite(sigma) || !std::isfinite(r) ||
        !std::isfinite(b)) {
        throw Error(ErrorCode::InvalidParams, "Lorenz parameters need sigma > 0, r > 0, b > 1");
    }
}

VectorField lorenz_field(const LorenzParams& params) {
    params.validate();
    const auto [sigma, r, b] = params;
    return VectorField(
        "lorenz", 3,
        [sigma, r, b](std::span<const double> s, std::span<double> out) {
            const double x = s[0], y = s[1], z = s[2];
            out[0] = sigma * (y - x);
            out[1] = x * (r - z) - y;
            out[2] = x * y - b * z;
        },
        [sigma, r, b](std::span<const double> s) {
            const double x = s[0], y = s[1], z = s[2];
            return Matrix{{-sigma, sigma, 0.0}, {r - z, -1.0, -x}, {y, x, -b}};
        });
}

double AbsorbingSet::lyapunov(std::span<const double> x) const {
    const std::size_t m = center.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) acc += (x[i] - center[i]) * q(i, j) * (x[j] - center[j]);
    return 0.5 * acc;
}

State AbsorbingSet::half_widths() const {
    State w(center.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::sqrt(2.0 * level / q(i, i));
    return w;
}

AbsorbingSet lorenz_absorbing_set(const LorenzParams& params) {
    params.validate();
    const auto [sigma, r, b] = params;
    // max of r x^2 + sigma y^2 + sigma (z - 2r)^2 over r x^2 + y^2 + b (z - r)^2 <= b r^2;
    // the maximizer sits at x = 0 when sigma >= 1 and at y = 0 otherwise, and is
    // clipped to z = 0 when the interior stationary point leaves the ellipsoid.
    double top = 4.0 * sigma * r * r;
    if (sigma >= 1.0 && b >= 2.0) {
        top = sigma * b * b * r * r / (b - 1.0);
    } else if (sigma < 1.0 && 2.0 * sigma <= b) {
        top = b * b * r * r / (b - sigma);
    }
    const double diag[] = {r, sigma, sigma};
    return AbsorbingSet{{0.0, 0.0, 2.0 * r}, Matrix::diagonal(diag), top / 2.0};
}

double lorenz_lyapunov_derivative(const LorenzParams& params, std::span<const double> s) {
    const auto [sigma, r, b] = params;
    const double x = s[0], y = s[1], z = s[2];
    return -sigma * (r * x * x + y * y + b * (z - r) * (z - r) - b * r * r);
}

StateBounds state_bounds(const LorenzParams& params) {
    params.validate();
    const auto [sigma, r, b] = params;
    const double yz = r * b / std::sqrt(sigma * (b - 1.0));
    return {b * std::sqrt(r) / std::sqrt(b - 1.0), yz, yz};
}

CouplingMatrix::CouplingMatrix(Matrix h)
    : h_(std::move(h)), decomp_(jacobi_eig(h_)), identity_(h_ == Matrix::identity(h_.rows())) {
    if (!(mu1() > 0.0)) {
        throw Error(ErrorCode::NotPositiveDefinite,
                    "coupling matrix smallest eigenvalue " + std::to_string(mu1()) + " is not positive");
    }
}

double beta_closed_form(const LorenzParams& params) {
    const StateBounds sb = state_bounds(params);
    const auto [sigma, r, b] = params;
    return std::max({2.0 * sigma, sb.ymax + r + 1.0 + sb.xmax, sb.xmax + sb.ymax + b});
}

double beta_sampled(const LorenzParams& params, const CouplingMatrix& h, std::size_t grid) {
    if (h.dim() != 3) {
        throw Error(ErrorCode::DimensionMismatch, "Lorenz coupling matrix must be 3x3");
    }
    if (grid < 2) {
        throw Error(ErrorCode::InvalidParams, "beta grid needs at least 2 points per axis");
    }
    const StateBounds sb = state_bounds(params);
    const VectorField f = lorenz_field(params);
    const Matrix& p = h.p();
    const Matrix pt = p.transpose();
    const double zc = 2.0 * params.r;
    auto axis = [grid](double lo, double hi, std::size_t k) {
        return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(grid - 1);
    };

    std::vector<double> slab_max(grid, 0.0);
    parallel_for(grid, [&](std::size_t i) {
        const double x = axis(-sb.xmax, sb.xmax, i);
        double best = 0.0;
        for (std::size_t j = 0; j < grid; ++j) {
            const double y = axis(-sb.ymax, sb.ymax, j);
            for (std::size_t k = 0; k < grid; ++k) {
                const double z = axis(zc - sb.zdev, zc + sb.zdev, k);
                const double s[] = {x, y, z};
                best = std::max(best, inf_norm(pt * f.jacobian(s) * p));
            }
        }
        slab_max[i] = best;
    });
    return *std::max_element(slab_max.begin(), slab_max.end());
}

double beta_inf(const LorenzParams& params, const CouplingMatrix& h, BetaOptions opts) {
    if (h.is_identity() && !opts.force_sampled) return beta_closed_form(params);
    return beta_sampled(params, h, opts.grid);
}

double lyapunov_decrease_check(const LorenzParams& params, std::size_t samples, std::uint64_t seed) {
    if (samples == 0) {
        throw Error(ErrorCode::InvalidParams, "need at least one sample");
    }
    const AbsorbingSet omega = lorenz_absorbing_set(params);
    const State w = omega.half_widths();
    Rng rng(seed);
    std::size_t outside = 0;
    std::size_t violations = 0;
    for (std::size_t n = 0; n < samples; ++n) {
        const double s[] = {rng.uniform(-2.0 * w[0], 2.0 * w[0]), rng.uniform(-2.0 * w[1], 2.0 * w[1]),
                            omega.center[2] + rng.uniform(-2.0 * w[2], 2.0 * w[2])};
        if (omega.contains(s)) continue;
        ++outside;
        if (lorenz_lyapunov_derivative(params, s) >= 0.0) ++violations;
    }
    return outside == 0 ? 0.0 : static_cast<double>(violations) / static_cast<double>(outside);
}

}  // namespace syncnet
