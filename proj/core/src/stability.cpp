#include "syncnet/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"
#include "syncnet/error.hpp"
#include "syncnet/rk4.hpp"

namespace syncnet {

CouplingReport alpha_c_general(const Graph& g, const LorenzParams& params, const CouplingMatrix& h,
                               BetaOptions beta_opts) {
    if (g.vertex_count() < 2) {
        throw Error(ErrorCode::TooSmall, "critical coupling needs at least two oscillators");
    }
    const SpectralDecomp s = spectrum(g);
    const double lambda2 = s.eigenvalues[1];
    if (lambda2 <= kZeroEigenvalueTol) {
        throw Error(ErrorCode::Disconnected, "lambda2 = 0: graph is disconnected");
    }
    const double mu1 = h.mu1();
    if (!(mu1 > 0.0)) {
        throw Error(ErrorCode::NotPositiveDefinite, "coupling matrix is not positive-definite");
    }
    const double beta = beta_inf(params, h, beta_opts);
    return CouplingReport{beta, lambda2, mu1, beta / (lambda2 * mu1)};
}

double alpha_c_two_dd(const LorenzParams& params) { return beta_closed_form(params) / 2.0; }

double alpha_c_two_dd(const VectorField& field, std::span<const State> omega_samples) {
    double beta = 0.0;
    for (const State& x : omega_samples) beta = std::max(beta, inf_norm(field.jacobian(x)));
    return beta / 2.0;
}

namespace {

double grid_point(double lo, double hi, std::size_t k, std::size_t grid) {
    return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(grid - 1);
}

void require_grid(std::size_t grid) {
    if (grid < 2) throw Error(ErrorCode::InvalidParams, "grid needs at least 2 points per axis");
}

}  // namespace

bool symmetric_part_certificate(const LorenzParams& params, double alpha, std::size_t grid) {
    require_grid(grid);
    const StateBounds sb = state_bounds(params);
    const VectorField f = lorenz_field(params);
    const Matrix shift = Matrix::identity(3).scaled(2.0 * alpha);
    const double zc = 2.0 * params.r;
    for (std::size_t iy = 0; iy < grid; ++iy) {
        const double y = grid_point(-sb.ymax, sb.ymax, iy, grid);
        for (std::size_t iz = 0; iz < grid; ++iz) {
            const double z = grid_point(zc - sb.zdev, zc + sb.zdev, iz, grid);
            const double s[] = {0.0, y, z};
            const SpectralDecomp d = jacobi_eig(symmetric_part(f.jacobian(s) - shift));
            if (!(d.eigenvalues.back() < 0.0)) return false;
        }
    }
    return true;
}

double alpha_c_two_sym(const LorenzParams& params, BisectionOptions opts) {
    if (symmetric_part_certificate(params, 0.0, opts.grid)) return 0.0;
    double lo = 0.0;
    double hi = 1.0;
    while (!symmetric_part_certificate(params, hi, opts.grid)) {
        lo = hi;
        hi *= 2.0;
        if (hi > opts.upper_cap) {
            throw Error(ErrorCode::NoConvergence, "symmetric-part certificate never holds below the cap");
        }
    }
    while (hi - lo > opts.tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (symmetric_part_certificate(params, mid, opts.grid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

std::vector<double> real_cubic_roots(double c3, double c2, double c1, double c0) {
    std::vector<double> roots;
    if (c3 == 0.0) {
        if (c2 == 0.0) {
            if (c1 != 0.0) roots.push_back(-c0 / c1);
            return roots;
        }
        const double disc = c1 * c1 - 4.0 * c2 * c0;
        if (disc < 0.0) return roots;
        const double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
        roots.push_back(q / c2);
        if (q != 0.0) roots.push_back(c0 / q);
        std::sort(roots.begin(), roots.end());
        return roots;
    }
    const double a = c2 / c3, b = c1 / c3, c = c0 / c3;
    // x = t - a/3 gives t^3 + p t + q = 0
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double shift = -a / 3.0;
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    if (p == 0.0 && q == 0.0) {
        roots.assign(3, shift);
    } else if (disc > 0.0) {
        const double sq = std::sqrt(disc);
        roots.push_back(std::cbrt(-q / 2.0 + sq) + std::cbrt(-q / 2.0 - sq) + shift);
    } else {
        const double rad = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * rad), -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) roots.push_back(rad * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) + shift);
    }
    // Newton polish against the original coefficients.
    for (double& x : roots) {
        for (int it = 0; it < 3; ++it) {
            const double fx = ((c3 * x + c2) * x + c1) * x + c0;
            const double dfx = (3.0 * c3 * x + 2.0 * c2) * x + c1;
            if (dfx == 0.0) break;
            x -= fx / dfx;
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<double> minors_p3_coefficients(const LorenzParams& params, double y, double z) {
    const auto [sigma, r, b] = params;
    const double c = (r + sigma - z) * (r + sigma - z);
    return {-8.0, -4.0 * b - 4.0 * (sigma + 1.0), -2.0 * sigma - 2.0 * b * (sigma + 1.0) + c / 2.0 + y * y / 2.0,
            -sigma * b + b / 4.0 * c + y * y / 4.0};
}

namespace {

double largest_positive_root(std::span<const double> coeffs) {
    const auto roots = real_cubic_roots(coeffs[0], coeffs[1], coeffs[2], coeffs[3]);
    double best = -1.0;
    for (double x : roots)
        if (x > 0.0) best = std::max(best, x);
    return best;
}

}  // namespace

MinorsCriterion alpha_c_two_minors(const LorenzParams& params, std::size_t grid) {
    require_grid(grid);
    const StateBounds sb = state_bounds(params);
    const auto [sigma, r, b] = params;
    const double ztop = 2.0 * r + sb.zdev;

    MinorsCriterion out{};
    out.p1_bound = -sigma / 2.0;

    const double c = (r + sigma - ztop) * (r + sigma - ztop);
    const double disc = (sigma + 1.0) * (sigma + 1.0) - 4.0 * sigma + c;
    if (disc < 0.0) {
        throw Error(ErrorCode::NoRealRoot, "second leading minor has no real root");
    }
    out.p2_root = (-2.0 * (sigma + 1.0) + 2.0 * std::sqrt(disc)) / 8.0;

    out.p3_corner = largest_positive_root(minors_p3_coefficients(params, -sb.ymax, ztop));
    double sweep = -1.0;
    const double zc = 2.0 * r;
    for (std::size_t iy = 0; iy < grid; ++iy) {
        const double y = grid_point(-sb.ymax, sb.ymax, iy, grid);
        for (std::size_t iz = 0; iz < grid; ++iz) {
            const double z = grid_point(zc - sb.zdev, zc + sb.zdev, iz, grid);
            sweep = std::max(sweep, largest_positive_root(minors_p3_coefficients(params, y, z)));
        }
    }
    out.p3_root = std::max(sweep, out.p3_corner);
    if (out.p3_root <= 0.0) {
        throw Error(ErrorCode::NoRealRoot, "third leading minor has no positive real root on the grid");
    }
    out.alpha_critical = std::max({out.p1_bound, out.p2_root, out.p3_root, 0.0});
    return out;
}

PersistenceReport persistence_bound(const CouplingReport& report, double alpha, const Graph& g,
                                    std::span<const Perturbation> perturbations, EtaConvention convention,
                                    double kappa) {
    if (!(kappa >= 1.0)) {
        throw Error(ErrorCode::InvalidParams, "kappa must be >= 1");
    }
    const double eta = convention == EtaConvention::General ? report.eta(alpha) : report.eta_per_mode(alpha);
    if (!(eta > 0.0)) {
        throw Error(ErrorCode::SubcriticalAlpha, "alpha = " + std::to_string(alpha) +
                                                     " does not exceed alpha_c = " +
                                                     std::to_string(report.alpha_critical));
    }
    double measured = 0.0;
    for (const Perturbation& p : perturbations) {
        if (!g.has_edge(p.i, p.j)) {
            throw Error(ErrorCode::InvalidGraph, "perturbation on a non-edge");
        }
        // |cos| attains 1, so the modulated sup equals the base norm.
        measured += inf_norm(p.base);
    }
    const double l_inf = inf_norm(laplacian(g));
    const double bound = eta / (2.0 * kappa * l_inf);
    return PersistenceReport{eta, l_inf, bound, measured, measured < bound};
}

double max_perturbation_scale(const PersistenceReport& report, const Matrix& shape) {
    const double norm = inf_norm(shape);
    if (norm == 0.0) {
        throw Error(ErrorCode::InvalidParams, "perturbation shape is zero");
    }
    return report.bound / norm;
}

double coppel_margin(double eta, double k, double delta0) {
    if (!(eta > 0.0) || !(k >= 1.0) || !(delta0 >= 0.0)) {
        throw Error(ErrorCode::InvalidParams, "need eta > 0, k >= 1, delta0 >= 0");
    }
    return eta - delta0 * k;
}

double integral_perturbation_margin(double eta, double k, double m, double delta, double h) {
    if (!(eta < 0.0) || !(k >= 1.0) || !(m > 0.0) || !(delta >= 0.0) || !(h > 0.0)) {
        throw Error(ErrorCode::InvalidParams, "need eta < 0, k >= 1, M > 0, delta >= 0, h > 0");
    }
    return eta + 3.0 * m * k * delta + std::log1p(delta) * k / h;
}

double cosine_integral_delta(double xi, double base_norm, double omega) {
    if (!(omega > 0.0)) {
        throw Error(ErrorCode::InvalidParams, "omega must be positive");
    }
    return 2.0 * std::abs(xi) * base_norm / omega;
}

ContractionEstimate contraction_rate_estimate(const NetworkSystem& sys, std::span<const double> s0,
                                              ContractionOptions opts) {
    const std::size_t m = sys.dim();
    if (s0.size() != m) {
        throw Error(ErrorCode::DimensionMismatch, "reference state must have the oscillator dimension");
    }
    if (!(sys.alpha() > 0.0)) {
        throw Error(ErrorCode::InvalidParams, "contraction estimate needs alpha > 0");
    }
    if (!(opts.dt > 0.0) || !(opts.tmax > opts.transient)) {
        throw Error(ErrorCode::InvalidParams, "need dt > 0 and tmax > transient");
    }
    if (sys.vertex_count() < 2) {
        throw Error(ErrorCode::TooSmall, "contraction estimate needs at least two oscillators");
    }
    const double lambda2 = spectrum(sys.graph()).eigenvalues[1];
    const VectorField& f = sys.field();
    const Matrix& p = sys.coupling().p();
    const Matrix pt = p.transpose();
    const auto& d = sys.coupling().decomp().eigenvalues;
    const double gain = sys.alpha() * lambda2;

    // Joint state (s, y): s' = f(s), y' = (P^T Df(s) P - alpha lambda2 D) y
    auto rhs = [&](double, std::span<const double> w, std::span<double> out) {
        const auto s = w.subspan(0, m);
        const auto y = w.subspan(m, m);
        f.eval(s, out.subspan(0, m));
        const Matrix a = pt * f.jacobian(s) * p;
        a.apply(y, out.subspan(m, m));
        for (std::size_t c = 0; c < m; ++c) out[m + c] -= gain * d[c] * y[c];
    };

    const auto steps = static_cast<std::size_t>(std::llround(opts.tmax / opts.dt));
    ContractionEstimate est{lambda2, -INFINITY, {}};
    Rk4Buffers buffers(2 * m);
    for (std::size_t dir = 0; dir < m; ++dir) {
        State w(2 * m, 0.0);
        std::copy(s0.begin(), s0.end(), w.begin());
        w[m + dir] = 1.0;
        double log_norm = 0.0;
        // running sums for the least-squares line through (t, log ||y||)
        double n = 0.0, st = 0.0, sl = 0.0, stt = 0.0, stl = 0.0;
        auto record = [&](double t) {
            if (t < opts.transient) return;
            n += 1.0;
            st += t;
            sl += log_norm;
            stt += t * t;
            stl += t * log_norm;
        };
        record(0.0);
        for (std::size_t k = 1; k <= steps; ++k) {
            const double t = static_cast<double>(k - 1) * opts.dt;
            rk4_step(rhs, t, opts.dt, std::span<double>(w), buffers);
            double norm2 = 0.0;
            for (std::size_t c = 0; c < m; ++c) norm2 += w[m + c] * w[m + c];
            const double norm = std::sqrt(norm2);
            bool ok = std::isfinite(norm) && norm > 0.0;
            for (std::size_t c = 0; c < m && ok; ++c) ok = std::abs(w[c]) <= kDivergenceLimit;
            if (!ok) {
                throw Error(ErrorCode::Diverged, "mode integration diverged at t = " + std::to_string(t));
            }
            log_norm += std::log(norm);
            for (std::size_t c = 0; c < m; ++c) w[m + c] /= norm;
            record(static_cast<double>(k) * opts.dt);
        }
        const double denom = n * stt - st * st;
        const double slope = denom > 0.0 ? (n * stl - st * sl) / denom : 0.0;
        est.slopes.push_back(slope);
        est.slope = std::max(est.slope, slope);
    }
    return est;
}

std::string to_json(const CouplingReport& report) {
    nlohmann::ordered_json j;
    j["beta"] = report.beta;
    j["lambda2"] = report.lambda2;
    j["mu1"] = report.mu1;
    j["alpha_c"] = report.alpha_critical;
    return j.dump();
}

std::string to_json(const CouplingReport& report, double alpha) {
    auto j = nlohmann::ordered_json::parse(to_json(report));
    j["alpha"] = alpha;
    j["eta"] = report.eta(alpha);
    return j.dump();
}

std::string to_json(const PersistenceReport& report) {
    nlohmann::ordered_json j;
    j["eta"] = report.eta;
    j["l_inf_norm"] = report.l_inf_norm;
    j["bound"] = report.bound;
    j["measured_perturbation"] = report.measured_perturbation;
    j["persistent"] = report.persistent;
    return j.dump();
}

}  // namespace syncnet
