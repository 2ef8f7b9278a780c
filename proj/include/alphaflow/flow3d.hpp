#pragma once

#include "alphaflow/complex.hpp"
#include "alphaflow/flow.hpp"
#include "alphaflow/ode.hpp"
#include "alphaflow/packing3d.hpp"
#include "alphaflow/types.hpp"

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace alphaflow {

struct Flow3dConfig {
    double alpha = 0.0;
    double t_end = 100.0;
    /// Converged once ||dr/dt||_inf drops below this.
    double tolerance = 1e-10;
    long max_steps = 1'000'000;
    ode::Method method = ode::Method::RK45;
    double initial_step = 1e-2;
    /// Tighter than the residual tolerance: near a stable fixed point the
    /// step controller leaves noise of order lambda_max * abs_tol in dr/dt.
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    /// Rescale r0 onto the unit sphere ||r||_2 = 1 before flowing.
    bool normalize = true;
    /// Consecutive step halvings allowed when a trial state leaves the admissible set.
    int max_guard_halvings = 40;
};

/// ||r||_p = (sum r_i^p)^(1/p).
double power_norm(const Vector& r, double p);

/// Q_alpha = S / ||r||_{alpha+1}. Throws AlphaExcluded for alpha = -1.
double yamabe_functional(const TetComplex& complex, const SpherePackingMetric& metric, double alpha);

/// s_alpha = S / ||r||_{alpha+1}^{alpha+1}.
double s_alpha_3d(const TetComplex& complex, const SpherePackingMetric& metric, double alpha);

struct YamabeState {
    double alpha = 0.0;
    double S = 0.0;
    double s_alpha = 0.0;
    double Q = 0.0;          ///< NaN when alpha = -1
    Vector K;
    Vector R;
    Vector gamma;            ///< s_alpha r^alpha - K
    Vector gradient;         ///< (K - s_alpha r^alpha) / ||r||_{alpha+1}; empty when alpha = -1
};

YamabeState yamabe_state(const TetComplex& complex, const SpherePackingMetric& metric, double alpha);

/// Gamma(r) = s_alpha r^alpha - K, the right-hand side of the 3D alpha-flow.
Vector gamma_field(const TetComplex& complex, const Vector& r, double alpha);

/// D Gamma = -Lambda + alpha s (diag(r^{alpha-1}) - r^alpha r^alpha^T / P)
///           + r^alpha (K - s r^alpha)^T / P,  with P = sum r^{alpha+1}.
Matrix dgamma(const TetComplex& complex, const SpherePackingMetric& metric, double alpha);

/// dr/dt = s_alpha r^alpha - K. Conserved column: ||r||_2^2; potential column: Q_alpha.
FlowTrace integrate_alpha_flow_3d(const TetComplex& complex, const SpherePackingMetric& r0, const Flow3dConfig& cfg);

/// dr/dt = (s_alpha r^alpha - K) / ||r||_{alpha+1}, the negative gradient flow of Q_alpha.
FlowTrace integrate_gradient_flow_3d(const TetComplex& complex, const SpherePackingMetric& r0,
                                     const Flow3dConfig& cfg);

enum class StabilityVerdict { Stable, Inconclusive };

std::string_view to_string(StabilityVerdict verdict);

struct StabilityReport {
    double alpha = 0.0;
    double s_alpha = 0.0;
    double alpha_s = 0.0;
    /// lambda_1(-Delta_alpha), through Sigma^{(1-alpha)/2} Lambda Sigma^{(1-alpha)/2}.
    double lambda1 = 0.0;
    double curvature_spread = 0.0;  ///< max_i |R_i - s_alpha|
    StabilityVerdict verdict = StabilityVerdict::Inconclusive;
    Matrix neg_dgamma;              ///< -D Gamma at r*
    Vector eigenvalues;             ///< of -D Gamma, ascending
    Vector tangent_eigenvalues;     ///< of -D Gamma restricted to the complement of r*
    double kernel_residual = 0.0;   ///< ||-D Gamma r*||_inf / ||r*||_inf
};

/// Requires max_i |R_i - s_alpha| <= 1e-8 max(1, |s_alpha|), else NotConstantCurvature.
StabilityReport stability_analysis(const TetComplex& complex, const SpherePackingMetric& r_star, double alpha);

/// Log-uniform radii in [0.5, 2], resampled until admissible.
SpherePackingMetric random_admissible_metric(const TetComplex& complex, std::mt19937_64& rng);

struct YamabeEstimate {
    double value = 0.0;
    Vector best_metric;
    std::vector<double> start_values;   ///< Q_alpha at each start
    std::vector<double> final_values;   ///< Q_alpha at each run's last valid state (NaN if skipped)
    int skipped = 0;
};

/// Minimum of the final Q_alpha over gradient-flow runs. Start 0 is the
/// uniform metric; the others are random admissible metrics from `seed`.
YamabeEstimate yamabe_invariant_estimate(const TetComplex& complex, double alpha, int starts, const Flow3dConfig& cfg,
                                         std::uint64_t seed = 20240607);

} // namespace alphaflow
