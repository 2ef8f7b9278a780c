#pragma once

#include "alphaflow/area_elements.hpp"
#include "alphaflow/complex.hpp"
#include "alphaflow/flow.hpp"
#include "alphaflow/ode.hpp"
#include "alphaflow/packing2d.hpp"
#include "alphaflow/spectral.hpp"

#include <optional>

namespace alphaflow {

struct FlowConfig {
    double alpha = 0.0;
    double t_end = 100.0;
    /// Converged once ||du/dt||_inf drops below this.
    double tolerance = 1e-10;
    long max_steps = 1'000'000;
    ode::Method method = ode::Method::RK45;
    double initial_step = 1e-2;
    /// Tighter than the residual tolerance, see Flow3dConfig.
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    /// Target curvature R-bar for the modified flow.
    std::optional<Vector> prescribed;
    /// Area element for the A-flow.
    std::optional<AreaElement> area;
    /// Rescale r0 so that prod r_i = 1 before flowing.
    bool normalize = true;
    /// Record the Ricci potential (relative to u(0)) at every sample.
    bool track_potential = true;
    /// Diverging once ||u||_inf exceeds this.
    double divergence_bound = 1e3;
};

/// du/dt = s_alpha r^alpha - K.
Vector alpha_flow_field(const WeightedSurface& surface, const Vector& u, double alpha);
/// du/dt = R-bar r^alpha - K.
Vector modified_flow_field(const WeightedSurface& surface, const Vector& u, double alpha, const Vector& prescribed);
/// du/dt = (2 pi chi / sum A) A - K.
Vector a_flow_field(const WeightedSurface& surface, const Vector& u, const AreaElement& area);

FlowTrace integrate_alpha_flow(const WeightedSurface& surface, const PackingMetric& r0, const FlowConfig& cfg);
/// Requires cfg.prescribed.
FlowTrace integrate_modified_flow(const WeightedSurface& surface, const PackingMetric& r0, const FlowConfig& cfg);
/// Requires cfg.area.
FlowTrace integrate_a_flow(const WeightedSurface& surface, const PackingMetric& r0, const FlowConfig& cfg);

/// Line integral of `gradient` along the straight segment from `from` to
/// `to`, by composite 7-point Gauss-Legendre with panel doubling until two
/// successive estimates differ by less than 1e-10 (relative to max(1, |F|)).
double segment_integral(const VectorField& gradient, const Vector& from, const Vector& to);

/// F(u) = integral from u_base to u of sum_i (K_i - s_alpha r_i^alpha) du_i.
double ricci_potential(const WeightedSurface& surface, const Vector& u, const Vector& u_base, double alpha);

/// The modified potential with integrand K_i - R-bar_i r_i^alpha.
double modified_potential(const WeightedSurface& surface, const Vector& u, const Vector& u_base, double alpha,
                          const Vector& prescribed);

} // namespace alphaflow
