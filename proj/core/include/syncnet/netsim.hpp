#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "syncnet/dynamics.hpp"
#include "syncnet/graph.hpp"
#include "syncnet/matrix.hpp"

namespace syncnet {

/// Linear perturbation V_ij of the coupling on edge (i, j), acting on vertex i.
/// With `omega` set the effective matrix is base * cos(omega t).
struct Perturbation {
    Vertex i;
    Vertex j;
    Matrix base;
    std::optional<double> omega;

    double modulation(double t) const;
};

/// Scratch buffers reused across right-hand-side evaluations.
struct RhsWorkspace {
    State diff;
    State coupled;
};

/// x_i' = f(x_i) + alpha H sum_{j~i} (x_j - x_i) + sum_j L_ij V_ij(t) (x_i - x_j)
///
/// Evaluated blockwise from adjacency lists; L (x) H is never formed. The
/// coupling is accumulated from state differences, so on the synchronization
/// manifold it is exactly zero rather than merely small.
class NetworkSystem {
public:
    /// Throws Disconnected, DimensionMismatch, InvalidGraph (perturbation off an edge),
    /// InvalidParams (non-finite alpha or negative omega).
    NetworkSystem(Graph graph, VectorField field, CouplingMatrix h, double alpha,
                  std::vector<Perturbation> perturbations = {});

    const Graph& graph() const noexcept { return graph_; }
    const VectorField& field() const noexcept { return field_; }
    const CouplingMatrix& coupling() const noexcept { return h_; }
    double alpha() const noexcept { return alpha_; }
    const std::vector<Perturbation>& perturbations() const noexcept { return perturbations_; }

    std::size_t vertex_count() const noexcept { return graph_.vertex_count(); }
    std::size_t dim() const noexcept { return field_.dim(); }
    std::size_t state_size() const noexcept { return vertex_count() * dim(); }

    NetworkSystem with_alpha(double alpha) const;
    NetworkSystem with_perturbations(std::vector<Perturbation> perturbations) const;

    void rhs(double t, std::span<const double> x, std::span<double> out, RhsWorkspace& ws) const;
    State rhs(double t, std::span<const double> x) const;

private:
    Graph graph_;
    VectorField field_;
    CouplingMatrix h_;
    double alpha_;
    std::vector<Perturbation> perturbations_;
    std::vector<std::vector<std::size_t>> perturbations_by_vertex_;
};

/// Stacked states on the uniform grid t_k = t0 + k dt.
struct Trajectory {
    double t0 = 0.0;
    double dt = 0.0;
    std::size_t vertices = 0;
    std::size_t dim = 0;
    std::vector<State> states;

    double time(std::size_t k) const noexcept { return t0 + static_cast<double>(k) * dt; }
    std::span<const double> block(std::size_t k, Vertex v) const {
        return std::span<const double>(states[k]).subspan(v * dim, dim);
    }
};

inline constexpr double kDivergenceLimit = 1e8;

struct IntegrationOptions {
    double dt = 1e-3;
    std::size_t steps = 0;
    std::size_t save_stride = 1;  // keep every stride-th state (step 0 always kept)
    double t0 = 0.0;
};

/// Called after every step (and once for the initial state with step 0).
using StepObserver = std::function<void(std::size_t step, double t, std::span<const double> x)>;

/// Classical fixed-step RK4. Throws Diverged as soon as any component leaves
/// [-1e8, 1e8] or becomes non-finite. Returns the final state.
State rk4_run(const NetworkSystem& sys, State x0, const IntegrationOptions& opts, const StepObserver& observer);

Trajectory rk4_integrate(const NetworkSystem& sys, State x0, double dt, std::size_t steps,
                         std::size_t save_stride = 1);

/// Stacked initial condition: vertex v starts at base + v * spread * d with d
/// the unit vector along (-1, 1, 0, ...), so neighbouring vertices differ by
/// `spread` in Euclidean norm.
State spread_initial_condition(std::span<const double> base, std::size_t vertices, double spread);

struct ModeSplit {
    State normal;       // vertex average replicated on every block
    State transversal;  // x - normal
};

/// Projection onto the synchronization manifold and its orthogonal complement.
ModeSplit project_modes(const Graph& g, std::span<const double> x);

/// (Df(x2) - 2 alpha H) z, the linearized difference equation for two oscillators.
State variational_two(const VectorField& field, const CouplingMatrix& h, double alpha, std::span<const double> x2,
                      std::span<const double> z);

/// (P^T Df(s) P - alpha lambda_j D) y, the j-th decoupled transversal mode.
State mode_rhs(const VectorField& field, const CouplingMatrix& h, double alpha, double lambda_j,
               std::span<const double> s, std::span<const double> y);

/// Header "t,v0_x0,...,v{n-1}_x{m-1}" then one row per `stride`-th saved state.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, std::size_t stride = 1);

}  // namespace syncnet
