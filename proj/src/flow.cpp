#include "alphaflow/flow.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace alphaflow {

std::string_view to_string(Verdict verdict)
{
    switch (verdict) {
    case Verdict::Converged: return "Converged";
    case Verdict::MaxTime: return "MaxTime";
    case Verdict::Diverging: return "Diverging";
    case Verdict::LeftAdmissibleRegion: return "LeftAdmissibleRegion";
    }
    return "Unknown";
}

double FlowTrace::conserved_drift() const
{
    double drift = 0.0;
    for (double c : conserved) drift = std::max(drift, std::abs(c - conserved.front()));
    return drift;
}

ConvergenceReport check_convergence(const FlowTrace& trace, double tol)
{
    ConvergenceReport report;
    if (trace.residual.empty()) return report;
    report.final_residual = trace.residual.back();

    const std::size_t n = trace.residual.size();
    double st = 0, sy = 0, stt = 0, sty = 0;
    int count = 0;
    for (std::size_t i = n / 2; i < n; ++i) {
        if (!(trace.residual[i] > 0.0)) continue;
        const double t = trace.times[i], y = std::log(trace.residual[i]);
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
        ++count;
    }
    const double denom = count * stt - st * st;
    report.rate = count >= 2 && denom > 0.0 ? (count * sty - st * sy) / denom : 0.0;

    if (trace.verdict == Verdict::Diverging || trace.verdict == Verdict::LeftAdmissibleRegion)
        report.verdict = trace.verdict;
    else
        report.verdict = report.final_residual < tol ? Verdict::Converged : Verdict::MaxTime;
    return report;
}

void write_trace_csv(const FlowTrace& trace, std::ostream& out)
{
    const Eigen::Index n = trace.radii.empty() ? 0 : trace.radii.front().size();
    out << "t";
    for (Eigen::Index i = 1; i <= n; ++i) out << ",r_" << i;
    out << ",residual_inf," << trace.conserved_label << ",potential\n";
    out << std::setprecision(17);
    for (std::size_t k = 0; k < trace.size(); ++k) {
        out << trace.times[k];
        for (Eigen::Index i = 0; i < n; ++i) out << ',' << trace.radii[k][i];
        out << ',' << trace.residual[k] << ',' << trace.conserved[k] << ',';
        if (std::isfinite(trace.potential[k])) out << trace.potential[k];
        out << '\n';
    }
}

} // namespace alphaflow
