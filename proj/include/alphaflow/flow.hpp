#pragma once

#include "alphaflow/types.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace alphaflow {

enum class Verdict {
    Converged,
    MaxTime,
    Diverging,
    LeftAdmissibleRegion,
};

std::string_view to_string(Verdict verdict);

/// Time-stamped record of a flow run. Shared by the surface and 3-manifold
/// flows; only the meaning of the conserved and potential columns differs.
struct FlowTrace {
    std::vector<double> times;
    std::vector<Vector> radii;
    std::vector<double> residual;   ///< ||dx/dt||_inf at each sample
    std::vector<double> conserved;  ///< sum u_i (surfaces) or ||r||_2^2 (3-manifolds)
    std::vector<double> potential;  ///< Ricci potential (surfaces) or Q_alpha (3-manifolds); NaN if undefined
    std::string conserved_label = "sum_u";

    Verdict verdict = Verdict::MaxTime;
    double rate = 0.0;                  ///< slope of ln(residual) over the final half
    double normalization_factor = 1.0;  ///< r0 was multiplied by this before flowing
    long accepted_steps = 0;
    long rejected_steps = 0;

    std::size_t size() const { return times.size(); }
    const Vector& final_radii() const { return radii.back(); }
    double final_residual() const { return residual.back(); }
    /// max_t |conserved(t) - conserved(0)|
    double conserved_drift() const;
};

struct ConvergenceReport {
    Verdict verdict = Verdict::MaxTime;
    double rate = 0.0;
    double final_residual = 0.0;
};

/// Converged iff the final residual is below tol; the rate is the
/// least-squares slope of ln(residual) against time over the final half of
/// the samples (zero residuals are skipped). A Diverging or
/// LeftAdmissibleRegion verdict already on the trace is kept.
ConvergenceReport check_convergence(const FlowTrace& trace, double tol);

/// CSV with header t, r_1..r_N, residual_inf, <conserved_label>, potential.
void write_trace_csv(const FlowTrace& trace, std::ostream& out);

} // namespace alphaflow
