#include "alphaflow/flow2d.hpp"

#include "alphaflow/error.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace alphaflow {

namespace {

// Spread of log radii beyond which exp() no longer represents the ratios.
constexpr double kRepresentableSpread = 600.0;
constexpr double kDivergingSpread = 500.0;
// Below this spread every face is comfortably nondegenerate in double precision.
constexpr double kSafeSpread = 20.0;

double spread(const Vector& u)
{
    return u.maxCoeff() - u.minCoeff();
}

/// K is scale invariant, so evaluate it at the metric shifted to max u = 0.
Vector curvature_at_log(const WeightedSurface& surface, const Vector& u)
{
    return gauss_curvature(surface, PackingMetric::from_log(u.array() - u.maxCoeff()));
}

/// s_alpha r^alpha = 2 pi chi r_i^alpha / sum_j r_j^alpha, by log-sum-exp.
Vector normalized_power_term(const WeightedSurface& surface, const Vector& u, double alpha)
{
    const int chi = euler_characteristic(surface);
    if (chi == 0) return Vector::Zero(u.size());
    const Vector w = alpha * u;
    const double top = w.maxCoeff();
    const double lse = top + std::log((w.array() - top).exp().sum());
    return 2.0 * std::numbers::pi * chi * (w.array() - lse).exp().matrix();
}

void check_dimensions(const WeightedSurface& surface, const Vector& u)
{
    if (u.size() != surface.vertex_count())
        throw Error(ErrorCode::InvalidArgument, "log metric size does not match the surface");
}

void validate(const FlowConfig& cfg)
{
    if (!(cfg.t_end > 0.0) || !std::isfinite(cfg.t_end)) throw Error(ErrorCode::ConfigError, "t_end must be positive");
    if (!(cfg.tolerance > 0.0)) throw Error(ErrorCode::ConfigError, "tolerance must be positive");
    if (!std::isfinite(cfg.alpha)) throw Error(ErrorCode::ConfigError, "alpha must be finite");
    if (!(cfg.divergence_bound > 0.0)) throw Error(ErrorCode::ConfigError, "divergence bound must be positive");
}

// Gauss-Legendre 7-point rule on [-1, 1].
constexpr std::array<double, 7> kNodes{-0.9491079123427585, -0.7415311855993945, -0.4058451513773972, 0.0,
                                       0.4058451513773972,  0.7415311855993945,  0.9491079123427585};
constexpr std::array<double, 7> kWeights{0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
                                         0.4179591836734694, 0.3818300505051189, 0.2797053914892766,
                                         0.1294849661688697};

double composite_gauss(const VectorField& gradient, const Vector& from, const Vector& direction, int panels)
{
    double sum = 0.0;
    const double width = 1.0 / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * width;
        for (int k = 0; k < 7; ++k) {
            const double t = mid + 0.5 * width * kNodes[k];
            sum += kWeights[k] * 0.5 * width * gradient(from + t * direction).dot(direction);
        }
    }
    return sum;
}

FlowTrace run_flow(const WeightedSurface& surface, const PackingMetric& r0, const FlowConfig& cfg,
                   const VectorField& field, bool has_potential)
{
    validate(cfg);
    if (r0.size() != surface.vertex_count())
        throw Error(ErrorCode::ConfigError, "initial metric size does not match the surface");

    FlowTrace trace;
    trace.conserved_label = "sum_u";
    Vector u0 = r0.log_radii();
    if (cfg.normalize) {
        const double mean = u0.mean();
        trace.normalization_factor = std::exp(-mean);
        u0.array() -= mean;
    }

    const VectorField gradient = [&field](const Vector& u) -> Vector { return -field(u); };
    bool converged = false, diverging = false;
    Vector previous_u = u0;
    double potential = 0.0;

    ode::IntegratorConfig icfg;
    icfg.method = cfg.method;
    icfg.abs_tol = cfg.abs_tol;
    icfg.rel_tol = cfg.rel_tol;
    icfg.initial_step = cfg.initial_step;
    icfg.max_steps = cfg.max_steps;
    icfg.guard = [&field](double, const Vector& u) {
        if (!u.allFinite() || spread(u) > kRepresentableSpread) return false;
        if (spread(u) <= kSafeSpread) return true;
        // Large radius ratios can make a face numerically flat.
        try {
            field(u);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::DegenerateTriangle) return false;
            throw;
        }
        return true;
    };
    icfg.monitors.push_back([&](double t, const Vector& u) {
        const Vector du = field(u);
        if (has_potential && cfg.track_potential && !trace.times.empty())
            potential += segment_integral(gradient, previous_u, u);
        previous_u = u;
        trace.times.push_back(t);
        trace.radii.push_back(u.array().exp().matrix());
        trace.residual.push_back(du.cwiseAbs().maxCoeff());
        trace.conserved.push_back(u.sum());
        trace.potential.push_back(has_potential && cfg.track_potential ? potential
                                                                       : std::numeric_limits<double>::quiet_NaN());
        if (trace.residual.back() < cfg.tolerance) {
            converged = true;
            return false;
        }
        if (u.cwiseAbs().maxCoeff() > cfg.divergence_bound || spread(u) > kDivergingSpread) {
            diverging = true;
            return false;
        }
        return true;
    });

    const auto traj = ode::integrate([&field](double, const Vector& u) { return field(u); }, u0, cfg.t_end, icfg);
    trace.accepted_steps = traj.accepted_steps;
    trace.rejected_steps = traj.rejected_steps;

    if (converged)
        trace.verdict = Verdict::Converged;
    else if (diverging || traj.status == ode::Status::GuardRejectionAtMinStep)
        trace.verdict = Verdict::Diverging;
    else
        trace.verdict = Verdict::MaxTime;
    trace.rate = check_convergence(trace, cfg.tolerance).rate;
    return trace;
}

} // namespace

Vector alpha_flow_field(const WeightedSurface& surface, const Vector& u, double alpha)
{
    check_dimensions(surface, u);
    return normalized_power_term(surface, u, alpha) - curvature_at_log(surface, u);
}

Vector modified_flow_field(const WeightedSurface& surface, const Vector& u, double alpha, const Vector& prescribed)
{
    check_dimensions(surface, u);
    if (prescribed.size() != u.size())
        throw Error(ErrorCode::ConfigError, "prescribed curvature needs one value per vertex");
    return (prescribed.array() * (alpha * u).array().exp()).matrix() - curvature_at_log(surface, u);
}

Vector a_flow_field(const WeightedSurface& surface, const Vector& u, const AreaElement& area)
{
    check_dimensions(surface, u);
    // s A is invariant under uniform scaling for every supported selector.
    const PackingMetric shifted = PackingMetric::from_log(u.array() - u.maxCoeff());
    const Vector a = area.evaluate(surface, shifted);
    const double s = 2.0 * std::numbers::pi * euler_characteristic(surface) / a.sum();
    return s * a - gauss_curvature(surface, shifted);
}

FlowTrace integrate_alpha_flow(const WeightedSurface& surface, const PackingMetric& r0, const FlowConfig& cfg)
{
    const double alpha = cfg.alpha;
    return run_flow(
        surface, r0, cfg, [&surface, alpha](const Vector& u) { return alpha_flow_field(surface, u, alpha); }, true);
}

FlowTrace integrate_modified_flow(const WeightedSurface& surface, const PackingMetric& r0, const FlowConfig& cfg)
{
    if (!cfg.prescribed) throw Error(ErrorCode::ConfigError, "modified flow needs a prescribed curvature");
    if (cfg.prescribed->size() != surface.vertex_count() || !cfg.prescribed->allFinite())
        throw Error(ErrorCode::ConfigError, "prescribed curvature needs one finite value per vertex");
    const Vector prescribed = *cfg.prescribed;
    const double alpha = cfg.alpha;
    return run_flow(
        surface, r0, cfg,
        [&surface, alpha, prescribed](const Vector& u) { return modified_flow_field(surface, u, alpha, prescribed); },
        true);
}

FlowTrace integrate_a_flow(const WeightedSurface& surface, const PackingMetric& r0, const FlowConfig& cfg)
{
    if (!cfg.area) throw Error(ErrorCode::ConfigError, "A-flow needs an area element");
    const AreaElement area = *cfg.area;
    return run_flow(
        surface, r0, cfg, [&surface, area](const Vector& u) { return a_flow_field(surface, u, area); }, false);
}

double segment_integral(const VectorField& gradient, const Vector& from, const Vector& to)
{
    const Vector direction = to - from;
    if (direction.squaredNorm() == 0.0) return 0.0;
    double previous = composite_gauss(gradient, from, direction, 1);
    for (int panels = 2; panels <= (1 << 14); panels *= 2) {
        const double current = composite_gauss(gradient, from, direction, panels);
        if (std::abs(current - previous) < 1e-10 * std::max(1.0, std::abs(current))) return current;
        previous = current;
    }
    throw Error(ErrorCode::QuadratureFailure, "line integral did not settle after 16384 panels");
}

double ricci_potential(const WeightedSurface& surface, const Vector& u, const Vector& u_base, double alpha)
{
    check_dimensions(surface, u);
    check_dimensions(surface, u_base);
    return segment_integral([&](const Vector& x) -> Vector { return -alpha_flow_field(surface, x, alpha); }, u_base,
                            u);
}

double modified_potential(const WeightedSurface& surface, const Vector& u, const Vector& u_base, double alpha,
                          const Vector& prescribed)
{
    check_dimensions(surface, u);
    check_dimensions(surface, u_base);
    return segment_integral(
        [&](const Vector& x) -> Vector { return -modified_flow_field(surface, x, alpha, prescribed); }, u_base, u);
}

} // namespace alphaflow
