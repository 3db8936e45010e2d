#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "syncnet/netsim.hpp"

namespace syncnet {

/// Max over vertex pairs of ||x_i - x_j||_2 for one stacked state.
double sync_error(std::span<const double> x, std::size_t vertices, std::size_t dim);

/// sync_error at every saved step. Needs at least two vertices.
std::vector<double> sync_error_series(const Trajectory& traj);

/// Mean of sync_error_series over saved steps with t in [t_lo, t_hi].
/// Throws WindowOutOfRange if the window is not inside the trajectory span.
double time_avg_sync_error(const Trajectory& traj, double t_lo, double t_hi);

struct SimConfig {
    double dt = 1e-3;
    double t_end = 2000.0;
    double window_lo = 1000.0;
    double window_hi = 2000.0;
    std::uint64_t seed = 0;  // recorded in the result metadata
    std::size_t workers = 0; // 0 = worker_count()
};

/// Integrates from `ic` and returns the windowed mean sync error without
/// storing the trajectory. Throws Diverged / WindowOutOfRange.
double simulate_sync_error(const NetworkSystem& sys, const State& ic, const SimConfig& config);

struct SweepAxis {
    std::string label;
    std::vector<double> values;
};

struct SweepResult {
    SweepAxis axis1;
    std::optional<SweepAxis> axis2;
    std::vector<double> cells;          // row-major: axis1 index major, axis2 minor
    std::vector<std::uint8_t> diverged; // 1 where the cell's integration blew up (cell is NaN)
    SimConfig meta;

    std::size_t rows() const noexcept { return axis1.values.size(); }
    std::size_t cols() const noexcept { return axis2 ? axis2->values.size() : 1; }
    double at(std::size_t row, std::size_t col = 0) const { return cells.at(row * cols() + col); }
    bool diverged_at(std::size_t row, std::size_t col = 0) const { return diverged.at(row * cols() + col) != 0; }
};

/// Sync threshold separating the "dark" synchronized region.
inline constexpr double kSyncThreshold = 1e-3;

SweepResult alpha_sweep(const NetworkSystem& base, std::span<const double> alphas, const State& ic,
                        const SimConfig& config);

struct PerturbationShape {
    Matrix shape;
    std::optional<double> omega;
    Vertex i = 0;
    Vertex j = 1;
};

/// Grid over (alpha, xi) with V_ij = xi * shape (or xi cos(omega t) * shape).
/// The xi = 0 column runs unperturbed and so matches alpha_sweep exactly.
SweepResult colormap_sweep(const NetworkSystem& base, std::span<const double> alphas, std::span<const double> xis,
                           const PerturbationShape& perturbation, const State& ic, const SimConfig& config);

/// Header row of axis2 values, first column axis1 values; "diverged" marks failed cells.
void write_sweep_csv(std::ostream& out, const SweepResult& result);

/// Plain PGM (P2, maxval 255): row per axis1 value, column per axis2 value,
/// linear from 0 (black) to the grid maximum (white). Diverged cells are white.
void write_sweep_pgm(std::ostream& out, const SweepResult& result);

/// Sidecar JSON with the grey-scale mapping and run metadata.
std::string sweep_metadata_json(const SweepResult& result);

}  // namespace syncnet
