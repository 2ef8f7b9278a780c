#include "alphaflow/flow3d.hpp"

#include "alphaflow/error.hpp"
#include "alphaflow/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace alphaflow {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_alpha_not_minus_one(double alpha)
{
    if (alpha == -1.0) throw Error(ErrorCode::AlphaExcluded, "the functional is undefined for alpha = -1");
}

bool admissible_point(const TetComplex& complex, const Vector& r)
{
    if (!r.allFinite() || !(r.minCoeff() > 0.0)) return false;
    for (const Tet& tet : complex.tets())
        if (!(nondegeneracy_Q(r[tet[0]], r[tet[1]], r[tet[2]], r[tet[3]]) > 0.0)) return false;
    return true;
}

void validate(const Flow3dConfig& cfg)
{
    if (!(cfg.t_end > 0.0) || !std::isfinite(cfg.t_end)) throw Error(ErrorCode::ConfigError, "t_end must be positive");
    if (!(cfg.tolerance > 0.0)) throw Error(ErrorCode::ConfigError, "tolerance must be positive");
    if (!std::isfinite(cfg.alpha)) throw Error(ErrorCode::ConfigError, "alpha must be finite");
    if (cfg.max_guard_halvings < 0) throw Error(ErrorCode::ConfigError, "max_guard_halvings must be nonnegative");
}

FlowTrace run_flow(const TetComplex& complex, const SpherePackingMetric& r0, const Flow3dConfig& cfg, bool gradient)
{
    validate(cfg);
    const double alpha = cfg.alpha;
    if (gradient) check_alpha_not_minus_one(alpha);
    if (r0.size() != complex.vertex_count())
        throw Error(ErrorCode::ConfigError, "initial metric size does not match the complex");
    const auto admissible = admissible_metric_check(complex, r0);
    if (!admissible.admissible)
        throw Error(ErrorCode::InadmissibleMetric,
                    "initial metric has Q <= 0 on " + std::to_string(admissible.offending_tets.size()) + " tetrahedra");

    FlowTrace trace;
    trace.conserved_label = "norm2_sq";
    Vector y0 = r0.radii();
    if (cfg.normalize) {
        trace.normalization_factor = 1.0 / y0.norm();
        y0 *= trace.normalization_factor;
    }

    auto field = [&complex, alpha, gradient](const Vector& r) -> Vector {
        Vector g = gamma_field(complex, r, alpha);
        if (gradient) g /= power_norm(r, alpha + 1.0);
        return g;
    };

    bool converged = false;
    ode::IntegratorConfig icfg;
    icfg.method = cfg.method;
    icfg.abs_tol = cfg.abs_tol;
    icfg.rel_tol = cfg.rel_tol;
    icfg.initial_step = cfg.initial_step;
    icfg.max_steps = cfg.max_steps;
    icfg.max_guard_halvings = cfg.max_guard_halvings;
    icfg.guard = [&complex, &field](double, const Vector& r) {
        if (!admissible_point(complex, r)) return false;
        // Q > 0 can still leave a tet too flat for the solid angle evaluation.
        try {
            field(r);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::DegenerateTet) return false;
            throw;
        }
        return true;
    };
    icfg.monitors.push_back([&](double t, const Vector& r) {
        const SpherePackingMetric metric(r);
        trace.times.push_back(t);
        trace.radii.push_back(r);
        trace.residual.push_back(field(r).cwiseAbs().maxCoeff());
        trace.conserved.push_back(r.squaredNorm());
        trace.potential.push_back(alpha == -1.0 ? kNaN : yamabe_functional(complex, metric, alpha));
        if (trace.residual.back() < cfg.tolerance) {
            converged = true;
            return false;
        }
        return true;
    });

    const auto traj = ode::integrate([&field](double, const Vector& r) { return field(r); }, y0, cfg.t_end, icfg);
    trace.accepted_steps = traj.accepted_steps;
    trace.rejected_steps = traj.rejected_steps;
    if (converged)
        trace.verdict = Verdict::Converged;
    else if (traj.status == ode::Status::GuardRejectionAtMinStep)
        trace.verdict = Verdict::LeftAdmissibleRegion;
    else
        trace.verdict = Verdict::MaxTime;
    trace.rate = check_convergence(trace, cfg.tolerance).rate;
    return trace;
}

} // namespace

double power_norm(const Vector& r, double p)
{
    return std::pow(r.array().pow(p).sum(), 1.0 / p);
}

double yamabe_functional(const TetComplex& complex, const SpherePackingMetric& metric, double alpha)
{
    check_alpha_not_minus_one(alpha);
    return ehr_functional(complex, metric) / power_norm(metric.radii(), alpha + 1.0);
}

double s_alpha_3d(const TetComplex& complex, const SpherePackingMetric& metric, double alpha)
{
    return ehr_functional(complex, metric) / metric.radii().array().pow(alpha + 1.0).sum();
}

YamabeState yamabe_state(const TetComplex& complex, const SpherePackingMetric& metric, double alpha)
{
    YamabeState st;
    st.alpha = alpha;
    const Vector& r = metric.radii();
    st.K = cr_curvature(complex, metric);
    st.S = st.K.dot(r);
    const Vector ra = r.array().pow(alpha).matrix();
    st.s_alpha = st.S / r.array().pow(alpha + 1.0).sum();
    st.R = st.K.cwiseQuotient(ra);
    st.gamma = st.s_alpha * ra - st.K;
    if (alpha == -1.0) {
        st.Q = kNaN;
    } else {
        const double norm = power_norm(r, alpha + 1.0);
        st.Q = st.S / norm;
        st.gradient = -st.gamma / norm;
    }
    return st;
}

Vector gamma_field(const TetComplex& complex, const Vector& r, double alpha)
{
    const SpherePackingMetric metric(r);
    const Vector k = cr_curvature(complex, metric);
    const Vector ra = r.array().pow(alpha).matrix();
    const double s = k.dot(r) / r.array().pow(alpha + 1.0).sum();
    return s * ra - k;
}

Matrix dgamma(const TetComplex& complex, const SpherePackingMetric& metric, double alpha)
{
    const Vector& r = metric.radii();
    const Matrix lambda = curvature_jacobian_r(complex, metric);
    const Vector k = cr_curvature(complex, metric);
    const Vector ra = r.array().pow(alpha).matrix();
    const double p = r.array().pow(alpha + 1.0).sum();
    const double s = k.dot(r) / p;
    const Matrix diag = r.array().pow(alpha - 1.0).matrix().asDiagonal();
    return -lambda + alpha * s * (diag - ra * ra.transpose() / p) + ra * (k - s * ra).transpose() / p;
}

FlowTrace integrate_alpha_flow_3d(const TetComplex& complex, const SpherePackingMetric& r0, const Flow3dConfig& cfg)
{
    return run_flow(complex, r0, cfg, false);
}

FlowTrace integrate_gradient_flow_3d(const TetComplex& complex, const SpherePackingMetric& r0,
                                     const Flow3dConfig& cfg)
{
    return run_flow(complex, r0, cfg, true);
}

std::string_view to_string(StabilityVerdict verdict)
{
    return verdict == StabilityVerdict::Stable ? "Stable" : "Inconclusive";
}

StabilityReport stability_analysis(const TetComplex& complex, const SpherePackingMetric& r_star, double alpha)
{
    if (r_star.size() != complex.vertex_count())
        throw Error(ErrorCode::InvalidArgument, "r* size does not match the complex");
    const YamabeState st = yamabe_state(complex, r_star, alpha);
    StabilityReport report;
    report.alpha = alpha;
    report.s_alpha = st.s_alpha;
    report.alpha_s = alpha * st.s_alpha;
    report.curvature_spread = (st.R.array() - st.s_alpha).abs().maxCoeff();
    if (report.curvature_spread > 1e-8 * std::max(1.0, std::abs(st.s_alpha)))
        throw Error(ErrorCode::NotConstantCurvature,
                    "max |R_i - s_alpha| = " + std::to_string(report.curvature_spread) + " exceeds 1e-8");

    const Vector& r = r_star.radii();
    const Matrix lambda = curvature_jacobian_r(complex, r_star);

    const Vector w = r.array().pow(0.5 * (1.0 - alpha)).matrix();
    Matrix conj = w.asDiagonal() * lambda * w.asDiagonal();
    conj = 0.5 * (conj + conj.transpose());
    SymOperator op{conj, r.array().pow(0.5 * (1.0 + alpha)).matrix(), 1e-6};
    report.lambda1 = first_positive_eigenvalue(op);

    const Vector ra = r.array().pow(alpha).matrix();
    const double p = r.array().pow(alpha + 1.0).sum();
    const Matrix diag = r.array().pow(alpha - 1.0).matrix().asDiagonal();
    report.neg_dgamma = lambda - report.alpha_s * (diag - ra * ra.transpose() / p);
    report.neg_dgamma = 0.5 * (report.neg_dgamma + report.neg_dgamma.transpose()).eval();
    report.eigenvalues = jacobi_eigen(report.neg_dgamma).values;
    report.tangent_eigenvalues = deflated_eigenvalues(report.neg_dgamma, r);
    report.kernel_residual = (report.neg_dgamma * r).cwiseAbs().maxCoeff() / r.cwiseAbs().maxCoeff();
    report.verdict = report.lambda1 > report.alpha_s ? StabilityVerdict::Stable : StabilityVerdict::Inconclusive;
    return report;
}

SpherePackingMetric random_admissible_metric(const TetComplex& complex, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> log_radius(std::log(0.5), std::log(2.0));
    for (int attempt = 0; attempt < 100000; ++attempt) {
        Vector r(complex.vertex_count());
        for (Eigen::Index i = 0; i < r.size(); ++i) r[i] = std::exp(log_radius(rng));
        if (admissible_point(complex, r)) return SpherePackingMetric(r);
    }
    throw Error(ErrorCode::InvalidArgument, "no admissible metric found by rejection sampling");
}

YamabeEstimate yamabe_invariant_estimate(const TetComplex& complex, double alpha, int starts, const Flow3dConfig& cfg,
                                         std::uint64_t seed)
{
    if (!(alpha > -1.0)) throw Error(ErrorCode::AlphaExcluded, "the estimate needs alpha > -1");
    if (starts < 1) throw Error(ErrorCode::ConfigError, "at least one start is required");
    Flow3dConfig run_cfg = cfg;
    run_cfg.alpha = alpha;

    std::mt19937_64 rng(seed);
    YamabeEstimate est;
    est.value = std::numeric_limits<double>::infinity();
    const int n = complex.vertex_count();
    for (int k = 0; k < starts; ++k) {
        const SpherePackingMetric start =
            k == 0 ? SpherePackingMetric(Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n))))
                   : random_admissible_metric(complex, rng);
        const double q0 = yamabe_functional(complex, start, alpha);
        est.start_values.push_back(q0);
        double q = kNaN;
        Vector best = start.radii() / start.radii().norm();
        try {
            const FlowTrace trace = integrate_gradient_flow_3d(complex, start, run_cfg);
            q = trace.potential.back();
            best = trace.final_radii();
        } catch (const Error&) {
            ++est.skipped;
        }
        est.final_values.push_back(q);
        // The start itself is a valid upper bound if the flow produced nothing better.
        const double candidate = std::isfinite(q) ? std::min(q, q0) : q0;
        if (candidate < est.value) {
            est.value = candidate;
            est.best_metric = std::isfinite(q) && q <= q0 ? best : Vector(start.radii() / start.radii().norm());
        }
    }
    return est;
}

} // namespace alphaflow
