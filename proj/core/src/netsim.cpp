#include "syncnet/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "syncnet/error.hpp"
#include "syncnet/rk4.hpp"

namespace syncnet {

double Perturbation::modulation(double t) const { return omega ? std::cos(*omega * t) : 1.0; }

NetworkSystem::NetworkSystem(Graph graph, VectorField field, CouplingMatrix h, double alpha,
                             std::vector<Perturbation> perturbations)
    : graph_(std::move(graph)),
      field_(std::move(field)),
      h_(std::move(h)),
      alpha_(alpha),
      perturbations_(std::move(perturbations)),
      perturbations_by_vertex_(graph_.vertex_count()) {
    if (!graph_.is_connected()) {
        throw Error(ErrorCode::Disconnected, "network graph must be connected");
    }
    if (h_.dim() != field_.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "coupling matrix is " + std::to_string(h_.dim()) +
                                                      "-dimensional but the field is " +
                                                      std::to_string(field_.dim()) + "-dimensional");
    }
    if (!std::isfinite(alpha_)) {
        throw Error(ErrorCode::InvalidParams, "coupling strength must be finite");
    }
    for (std::size_t k = 0; k < perturbations_.size(); ++k) {
        const Perturbation& p = perturbations_[k];
        if (!graph_.has_edge(p.i, p.j)) {
            throw Error(ErrorCode::InvalidGraph, "perturbation on (" + std::to_string(p.i) + "," +
                                                     std::to_string(p.j) + ") which is not an edge");
        }
        if (p.base.rows() != field_.dim() || p.base.cols() != field_.dim()) {
            throw Error(ErrorCode::DimensionMismatch, "perturbation matrix must be m x m");
        }
        if (p.omega && !(*p.omega >= 0.0 && std::isfinite(*p.omega))) {
            throw Error(ErrorCode::InvalidParams, "perturbation frequency must be finite and >= 0");
        }
        perturbations_by_vertex_[p.i].push_back(k);
    }
}

NetworkSystem NetworkSystem::with_alpha(double alpha) const {
    return NetworkSystem(graph_, field_, h_, alpha, perturbations_);
}

NetworkSystem NetworkSystem::with_perturbations(std::vector<Perturbation> perturbations) const {
    return NetworkSystem(graph_, field_, h_, alpha_, std::move(perturbations));
}

void NetworkSystem::rhs(double t, std::span<const double> x, std::span<double> out, RhsWorkspace& ws) const {
    const std::size_t n = vertex_count();
    const std::size_t m = dim();
    if (x.size() != n * m || out.size() != n * m) {
        throw Error(ErrorCode::DimensionMismatch, "stacked state must have n*m = " + std::to_string(n * m) +
                                                      " components, got " + std::to_string(x.size()));
    }
    ws.diff.resize(m);
    ws.coupled.resize(m);
    const bool identity_h = h_.is_identity();

    for (Vertex i = 0; i < n; ++i) {
        const auto xi = x.subspan(i * m, m);
        auto oi = out.subspan(i * m, m);
        field_.eval(xi, oi);

        // -alpha sum_j L_ij H x_j == alpha H sum_{j~i} (x_j - x_i)
        std::fill(ws.diff.begin(), ws.diff.end(), 0.0);
        for (Vertex j : graph_.neighbors(i)) {
            const auto xj = x.subspan(j * m, m);
            for (std::size_t c = 0; c < m; ++c) ws.diff[c] += xj[c] - xi[c];
        }
        if (identity_h) {
            for (std::size_t c = 0; c < m; ++c) oi[c] += alpha_ * ws.diff[c];
        } else {
            h_.h().apply(ws.diff, ws.coupled);
            for (std::size_t c = 0; c < m; ++c) oi[c] += alpha_ * ws.coupled[c];
        }

        // (B_i L B_j)(D_ji - I) (x) V_ij contributes L_ij V_ij(t) (x_i - x_j) to block i.
        for (std::size_t k : perturbations_by_vertex_[i]) {
            const Perturbation& p = perturbations_[k];
            const auto xj = x.subspan(p.j * m, m);
            const double lij = -1.0;
            for (std::size_t c = 0; c < m; ++c) ws.diff[c] = xi[c] - xj[c];
            p.base.apply(ws.diff, ws.coupled);
            const double scale = lij * p.modulation(t);
            for (std::size_t c = 0; c < m; ++c) oi[c] += scale * ws.coupled[c];
        }
    }
}

State NetworkSystem::rhs(double t, std::span<const double> x) const {
    State out(x.size());
    RhsWorkspace ws;
    rhs(t, x, out, ws);
    return out;
}

State rk4_run(const NetworkSystem& sys, State x0, const IntegrationOptions& opts, const StepObserver& observer) {
    if (!(opts.dt > 0.0) || !std::isfinite(opts.dt)) {
        throw Error(ErrorCode::InvalidParams, "time step must be positive");
    }
    if (x0.size() != sys.state_size()) {
        throw Error(ErrorCode::DimensionMismatch, "initial state must have " + std::to_string(sys.state_size()) +
                                                      " components");
    }
    RhsWorkspace ws;
    Rk4Buffers buffers(x0.size());
    auto rhs = [&](double t, std::span<const double> x, std::span<double> out) { sys.rhs(t, x, out, ws); };

    State x = std::move(x0);
    if (observer) observer(0, opts.t0, x);
    for (std::size_t step = 1; step <= opts.steps; ++step) {
        const double t = opts.t0 + static_cast<double>(step - 1) * opts.dt;
        rk4_step(rhs, t, opts.dt, std::span<double>(x), buffers);
        for (double v : x) {
            if (!(std::abs(v) <= kDivergenceLimit)) {
                throw Error(ErrorCode::Diverged, "state left the divergence guard at t = " +
                                                     std::to_string(t + opts.dt));
            }
        }
        if (observer) observer(step, opts.t0 + static_cast<double>(step) * opts.dt, x);
    }
    return x;
}

Trajectory rk4_integrate(const NetworkSystem& sys, State x0, double dt, std::size_t steps, std::size_t save_stride) {
    if (steps == 0) {
        throw Error(ErrorCode::InvalidParams, "need at least one step");
    }
    if (save_stride == 0) {
        throw Error(ErrorCode::InvalidParams, "save stride must be positive");
    }
    Trajectory traj;
    traj.t0 = 0.0;
    traj.dt = dt * static_cast<double>(save_stride);
    traj.vertices = sys.vertex_count();
    traj.dim = sys.dim();
    traj.states.reserve(steps / save_stride + 1);
    IntegrationOptions opts{dt, steps, save_stride, 0.0};
    rk4_run(sys, std::move(x0), opts, [&](std::size_t step, double, std::span<const double> x) {
        if (step % save_stride == 0) traj.states.emplace_back(x.begin(), x.end());
    });
    return traj;
}

State spread_initial_condition(std::span<const double> base, std::size_t vertices, double spread) {
    const std::size_t m = base.size();
    if (m == 0 || vertices == 0) {
        throw Error(ErrorCode::DimensionMismatch, "initial condition needs m > 0 and n > 0");
    }
    State direction(m, 0.0);
    if (m == 1) {
        direction[0] = 1.0;
    } else {
        direction[0] = -1.0 / std::sqrt(2.0);
        direction[1] = 1.0 / std::sqrt(2.0);
    }
    State x(vertices * m);
    for (std::size_t v = 0; v < vertices; ++v)
        for (std::size_t c = 0; c < m; ++c)
            x[v * m + c] = base[c] + static_cast<double>(v) * spread * direction[c];
    return x;
}

ModeSplit project_modes(const Graph& g, std::span<const double> x) {
    const std::size_t n = g.vertex_count();
    if (x.empty() || x.size() % n != 0) {
        throw Error(ErrorCode::DimensionMismatch, "state length is not a multiple of the vertex count");
    }
    const std::size_t m = x.size() / n;
    // Mean taken as offset from block 0, so identical blocks give an exact zero transversal part.
    State mean(m, 0.0);
    for (std::size_t v = 1; v < n; ++v)
        for (std::size_t c = 0; c < m; ++c) mean[c] += x[v * m + c] - x[c];
    for (std::size_t c = 0; c < m; ++c) mean[c] = x[c] + mean[c] / static_cast<double>(n);

    ModeSplit split{State(x.size()), State(x.size())};
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t c = 0; c < m; ++c) {
            split.normal[v * m + c] = mean[c];
            split.transversal[v * m + c] = x[v * m + c] - mean[c];
        }
    return split;
}

namespace {

void require_dim(std::span<const double> v, std::size_t m, const char* what) {
    if (v.size() != m) {
        throw Error(ErrorCode::DimensionMismatch, std::string(what) + " must have dimension " + std::to_string(m));
    }
}

}  // namespace

State variational_two(const VectorField& field, const CouplingMatrix& h, double alpha, std::span<const double> x2,
                      std::span<const double> z) {
    const std::size_t m = field.dim();
    if (h.dim() != m) throw Error(ErrorCode::DimensionMismatch, "coupling matrix dimension mismatch");
    require_dim(x2, m, "reference state");
    require_dim(z, m, "difference vector");
    const Matrix a = field.jacobian(x2) - h.h().scaled(2.0 * alpha);
    return a.apply(z);
}

State mode_rhs(const VectorField& field, const CouplingMatrix& h, double alpha, double lambda_j,
               std::span<const double> s, std::span<const double> y) {
    const std::size_t m = field.dim();
    if (h.dim() != m) throw Error(ErrorCode::DimensionMismatch, "coupling matrix dimension mismatch");
    if (!(lambda_j >= 0.0)) throw Error(ErrorCode::InvalidParams, "Laplacian eigenvalue must be >= 0");
    require_dim(s, m, "reference state");
    require_dim(y, m, "mode vector");
    const Matrix& p = h.p();
    const Matrix a = p.transpose() * field.jacobian(s) * p;
    State out = a.apply(y);
    const auto& d = h.decomp().eigenvalues;
    for (std::size_t c = 0; c < m; ++c) out[c] -= alpha * lambda_j * d[c] * y[c];
    return out;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, std::size_t stride) {
    if (stride == 0) stride = 1;
    out << 't';
    for (std::size_t v = 0; v < traj.vertices; ++v)
        for (std::size_t c = 0; c < traj.dim; ++c) out << ",v" << v << "_x" << c;
    out << '\n';
    char buf[32];
    for (std::size_t k = 0; k < traj.states.size(); k += stride) {
        std::snprintf(buf, sizeof buf, "%.17g", traj.time(k));
        out << buf;
        for (double v : traj.states[k]) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << ',' << buf;
        }
        out << '\n';
    }
}

}  // namespace syncnet
