#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "syncnet/dynamics.hpp"
#include "syncnet/graph.hpp"
#include "syncnet/netsim.hpp"

namespace syncnet {

/// Critical global coupling alpha_c = beta / (lambda2 mu1) and the
/// contraction margin eta(alpha) = alpha lambda2 mu1 - beta.
struct CouplingReport {
    double beta;
    double lambda2;
    double mu1;
    double alpha_critical;

    double eta(double alpha) const noexcept { return alpha * lambda2 * mu1 - beta; }
    /// eta with lambda2 mu1 divided out: alpha - alpha_c.
    double eta_per_mode(double alpha) const noexcept { return alpha - alpha_critical; }
};

/// Throws Disconnected (lambda2 ~ 0) or NotPositiveDefinite.
CouplingReport alpha_c_general(const Graph& g, const LorenzParams& params, const CouplingMatrix& h,
                               BetaOptions beta_opts = {});

/// Two oscillators, H = I: sup ||Df|| / 2 via the diagonal-dominance route.
double alpha_c_two_dd(const LorenzParams& params);
/// Same criterion for an arbitrary field, with the supremum taken over `omega_samples`.
double alpha_c_two_dd(const VectorField& field, std::span<const State> omega_samples);

/// True when every eigenvalue of sym(Df(0, y, z)) - 2 alpha I is negative on the
/// (y, z) grid spanning the absorbing box.
bool symmetric_part_certificate(const LorenzParams& params, double alpha, std::size_t grid);

struct BisectionOptions {
    std::size_t grid = 101;
    double tolerance = 0.01;
    double upper_cap = 1e6;
};

/// Smallest alpha (to `tolerance`) for which symmetric_part_certificate holds.
/// Throws NoConvergence if no bracket is found below `upper_cap`.
double alpha_c_two_sym(const LorenzParams& params, BisectionOptions opts = {});

struct MinorsCriterion {
    double p1_bound;   // -sigma / 2, the vacuous first-minor constraint
    double p2_root;    // larger root of the 2x2 minor at z = 2r + zdev
    double p3_root;    // largest positive root of the 3x3 minor cubic
    double p3_corner;  // p3 root at y = -zdev, z = 2r + zdev
    double alpha_critical;
};

/// Leading-minor (Sylvester) route for sym(Df) - 2 alpha I. Throws NoRealRoot.
MinorsCriterion alpha_c_two_minors(const LorenzParams& params, std::size_t grid = 101);

/// Cubic coefficients (alpha^3 .. alpha^0) of det of the 3x3 leading minor at (y, z).
std::vector<double> minors_p3_coefficients(const LorenzParams& params, double y, double z);

/// Real roots of c3 x^3 + c2 x^2 + c1 x + c0, ascending.
std::vector<double> real_cubic_roots(double c3, double c2, double c1, double c0);

enum class EtaConvention {
    General,  // eta = alpha lambda2 mu1 - beta
    PerMode,  // eta = alpha - beta / (lambda2 mu1)
};

struct PersistenceReport {
    double eta;
    double l_inf_norm;
    double bound;                  // eta / (2 kappa ||L||_inf)
    double measured_perturbation;  // sup_t sum ||V_ij(t)||_inf
    bool persistent;               // measured < bound
};

/// Throws SubcriticalAlpha when eta <= 0.
PersistenceReport persistence_bound(const CouplingReport& report, double alpha, const Graph& g,
                                    std::span<const Perturbation> perturbations,
                                    EtaConvention convention = EtaConvention::PerMode, double kappa = 1.0);

/// Largest |xi| keeping xi * shape on a single edge inside the persistence bound.
double max_perturbation_scale(const PersistenceReport& report, const Matrix& shape);

/// gamma = eta - delta0 k
double coppel_margin(double eta, double k, double delta0);

/// eta + 3 M k delta + ln(1 + delta) k / h, the decay rate surviving an
/// integrally small perturbation (eta < 0 is the unperturbed rate).
double integral_perturbation_margin(double eta, double k, double m, double delta, double h);

/// Bound on ||int_{t1}^{t2} xi cos(omega t) V dt||_inf for any interval: 2 |xi| ||V||_inf / omega.
double cosine_integral_delta(double xi, double base_norm, double omega);

struct ContractionOptions {
    double tmax = 20.0;
    double dt = 1e-3;
    double transient = 0.0;  // fit only t >= transient
};

struct ContractionEstimate {
    double lambda2;
    double slope;                      // largest fitted slope over the m initial directions
    std::vector<double> slopes;        // one per initial unit vector
};

/// Integrates the lambda2 transversal mode y' = (P^T Df(s) P - alpha lambda2 D) y along the
/// reference orbit s(t) of the isolated field, from each unit vector, and fits the
/// least-squares slope of log ||y(t)||. Throws Diverged.
ContractionEstimate contraction_rate_estimate(const NetworkSystem& sys, std::span<const double> s0,
                                              ContractionOptions opts = {});

std::string to_json(const CouplingReport& report);
std::string to_json(const CouplingReport& report, double alpha);
std::string to_json(const PersistenceReport& report);

}  // namespace syncnet
