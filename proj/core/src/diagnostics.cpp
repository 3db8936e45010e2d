#include "syncnet/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "json.hpp"
#include "syncnet/error.hpp"
#include "syncnet/parallel.hpp"

namespace syncnet {

double sync_error(std::span<const double> x, std::size_t vertices, std::size_t dim) {
    double worst = 0.0;
    for (std::size_t a = 0; a < vertices; ++a)
        for (std::size_t b = a + 1; b < vertices; ++b) {
            double s = 0.0;
            for (std::size_t c = 0; c < dim; ++c) {
                const double d = x[a * dim + c] - x[b * dim + c];
                s += d * d;
            }
            worst = std::max(worst, s);
        }
    return std::sqrt(worst);
}

std::vector<double> sync_error_series(const Trajectory& traj) {
    if (traj.vertices < 2) {
        throw Error(ErrorCode::TooSmall, "sync error needs at least two vertices");
    }
    std::vector<double> out;
    out.reserve(traj.states.size());
    for (const State& x : traj.states) out.push_back(sync_error(x, traj.vertices, traj.dim));
    return out;
}

namespace {

struct WindowRange {
    std::size_t first;
    std::size_t last;  // inclusive
};

// Step indices k with t0 + k dt inside [lo, hi]; the slack absorbs rounding in t_k.
WindowRange window_range(double t0, double dt, std::size_t count, double lo, double hi) {
    const double t_last = t0 + static_cast<double>(count - 1) * dt;
    const double slack = 1e-9 * dt;
    if (!(lo <= hi) || lo < t0 - slack || hi > t_last + slack) {
        throw Error(ErrorCode::WindowOutOfRange, "window [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                                     "] not inside [" + std::to_string(t0) + ", " +
                                                     std::to_string(t_last) + "]");
    }
    const auto first = static_cast<std::size_t>(std::max(0.0, std::ceil((lo - t0) / dt - 1e-9)));
    const auto last = std::min(count - 1, static_cast<std::size_t>(std::floor((hi - t0) / dt + 1e-9)));
    if (first > last) {
        throw Error(ErrorCode::WindowOutOfRange, "window contains no saved steps");
    }
    return {first, last};
}

}  // namespace

double time_avg_sync_error(const Trajectory& traj, double t_lo, double t_hi) {
    if (traj.states.empty()) {
        throw Error(ErrorCode::WindowOutOfRange, "empty trajectory");
    }
    const WindowRange w = window_range(traj.t0, traj.dt, traj.states.size(), t_lo, t_hi);
    const std::vector<double> series = sync_error_series(traj);
    double sum = 0.0;
    for (std::size_t k = w.first; k <= w.last; ++k) sum += series[k];
    return sum / static_cast<double>(w.last - w.first + 1);
}

double simulate_sync_error(const NetworkSystem& sys, const State& ic, const SimConfig& config) {
    if (!(config.dt > 0.0) || !(config.t_end > 0.0)) {
        throw Error(ErrorCode::InvalidParams, "need dt > 0 and t_end > 0");
    }
    if (sys.vertex_count() < 2) {
        throw Error(ErrorCode::TooSmall, "sync error needs at least two vertices");
    }
    const auto steps = static_cast<std::size_t>(std::llround(config.t_end / config.dt));
    const WindowRange w = window_range(0.0, config.dt, steps + 1, config.window_lo, config.window_hi);
    double sum = 0.0;
    const std::size_t n = sys.vertex_count();
    const std::size_t m = sys.dim();
    IntegrationOptions opts{config.dt, w.last, 1, 0.0};
    rk4_run(sys, ic, opts, [&](std::size_t step, double, std::span<const double> x) {
        if (step >= w.first) sum += sync_error(x, n, m);
    });
    return sum / static_cast<double>(w.last - w.first + 1);
}

namespace {

void require_sorted(std::span<const double> v, const char* what) {
    if (v.empty()) {
        throw Error(ErrorCode::InvalidParams, std::string(what) + " grid is empty");
    }
    if (!std::is_sorted(v.begin(), v.end())) {
        throw Error(ErrorCode::InvalidParams, std::string(what) + " grid must be sorted ascending");
    }
}

void run_cells(SweepResult& result, const std::function<double(std::size_t)>& cell, std::size_t workers) {
    const std::size_t count = result.rows() * result.cols();
    result.cells.assign(count, 0.0);
    result.diverged.assign(count, 0);
    parallel_for(
        count,
        [&](std::size_t idx) {
            try {
                result.cells[idx] = cell(idx);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::Diverged) throw;
                result.cells[idx] = std::numeric_limits<double>::quiet_NaN();
                result.diverged[idx] = 1;
            }
        },
        workers == 0 ? worker_count() : workers);
}

}  // namespace

SweepResult alpha_sweep(const NetworkSystem& base, std::span<const double> alphas, const State& ic,
                        const SimConfig& config) {
    require_sorted(alphas, "alpha");
    SweepResult result{{"alpha", {alphas.begin(), alphas.end()}}, std::nullopt, {}, {}, config};
    run_cells(
        result, [&](std::size_t idx) { return simulate_sync_error(base.with_alpha(alphas[idx]), ic, config); },
        config.workers);
    return result;
}

SweepResult colormap_sweep(const NetworkSystem& base, std::span<const double> alphas, std::span<const double> xis,
                           const PerturbationShape& perturbation, const State& ic, const SimConfig& config) {
    require_sorted(alphas, "alpha");
    require_sorted(xis, "xi");
    const std::size_t m = base.dim();
    if (perturbation.shape.rows() != m || perturbation.shape.cols() != m) {
        throw Error(ErrorCode::DimensionMismatch, "perturbation shape must be m x m");
    }
    if (!base.graph().has_edge(perturbation.i, perturbation.j)) {
        throw Error(ErrorCode::InvalidGraph, "perturbed pair must be an edge");
    }
    SweepResult result{{"alpha", {alphas.begin(), alphas.end()}},
                       SweepAxis{"xi", {xis.begin(), xis.end()}},
                       {},
                       {},
                       config};
    const std::size_t nxi = xis.size();
    run_cells(
        result,
        [&](std::size_t idx) {
            const double alpha = alphas[idx / nxi];
            const double xi = xis[idx % nxi];
            std::vector<Perturbation> perts;
            if (xi != 0.0) {
                perts.push_back({perturbation.i, perturbation.j, perturbation.shape.scaled(xi), perturbation.omega});
            }
            return simulate_sync_error(base.with_alpha(alpha).with_perturbations(std::move(perts)), ic, config);
        },
        config.workers);
    return result;
}

namespace {

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    out << result.axis1.label;
    if (result.axis2) {
        for (double v : result.axis2->values) out << ',' << format_number(v);
    } else {
        out << ",sync_error";
    }
    out << '\n';
    for (std::size_t r = 0; r < result.rows(); ++r) {
        out << format_number(result.axis1.values[r]);
        for (std::size_t c = 0; c < result.cols(); ++c) {
            out << ',';
            if (result.diverged_at(r, c)) {
                out << "diverged";
            } else {
                out << format_number(result.at(r, c));
            }
        }
        out << '\n';
    }
}

namespace {

double grid_max(const SweepResult& result) {
    double mx = 0.0;
    for (std::size_t k = 0; k < result.cells.size(); ++k)
        if (!result.diverged[k]) mx = std::max(mx, result.cells[k]);
    return mx;
}

}  // namespace

void write_sweep_pgm(std::ostream& out, const SweepResult& result) {
    const double mx = grid_max(result);
    out << "P2\n" << result.cols() << ' ' << result.rows() << "\n255\n";
    for (std::size_t r = 0; r < result.rows(); ++r) {
        for (std::size_t c = 0; c < result.cols(); ++c) {
            int level = 255;
            if (!result.diverged_at(r, c)) {
                level = mx > 0.0 ? static_cast<int>(std::lround(255.0 * result.at(r, c) / mx)) : 0;
            }
            out << (c ? " " : "") << level;
        }
        out << '\n';
    }
}

std::string sweep_metadata_json(const SweepResult& result) {
    nlohmann::ordered_json j;
    j["scale"] = "linear";
    j["black"] = 0.0;
    j["white"] = grid_max(result);
    j["rows"] = {{"label", result.axis1.label}, {"values", result.axis1.values}};
    if (result.axis2) {
        j["cols"] = {{"label", result.axis2->label}, {"values", result.axis2->values}};
    }
    j["diverged_cells"] = std::count(result.diverged.begin(), result.diverged.end(), std::uint8_t{1});
    j["dt"] = result.meta.dt;
    j["t_end"] = result.meta.t_end;
    j["window"] = {result.meta.window_lo, result.meta.window_hi};
    j["seed"] = result.meta.seed;
    return j.dump(2);
}

}  // namespace syncnet
