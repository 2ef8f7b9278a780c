#include "alphaflow/packing3d.hpp"

#include "alphaflow/error.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace alphaflow {

namespace {

constexpr double kPi = std::numbers::pi;

/// Position of edge {i, j} (i != j, both in 0..3) in TetLengths.
int length_index(int i, int j)
{
    if (i > j) std::swap(i, j);
    static constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return table[i][j];
}

double face_angle(double adjacent1, double adjacent2, double opposite)
{
    const double c = (adjacent1 * adjacent1 + adjacent2 * adjacent2 - opposite * opposite) / (2.0 * adjacent1 * adjacent2);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

void check_radius(double r)
{
    if (!(r > 0.0) || !std::isfinite(r))
        throw Error(ErrorCode::NonpositiveRadius, "radius " + std::to_string(r) + " is not positive");
}

void require_admissible(const TetComplex& complex, const SpherePackingMetric& metric)
{
    if (metric.size() != complex.vertex_count())
        throw Error(ErrorCode::InvalidArgument, "metric size does not match the complex");
    const auto report = admissible_metric_check(complex, metric);
    if (!report.admissible)
        throw Error(ErrorCode::InadmissibleMetric,
                    std::to_string(report.offending_tets.size()) + " tetrahedra have Q <= 0 (first: tet " +
                        std::to_string(report.offending_tets.front()) + ")");
}

TetLengths packing_lengths(const std::array<double, 4>& r)
{
    return {r[0] + r[1], r[0] + r[2], r[0] + r[3], r[1] + r[2], r[1] + r[3], r[2] + r[3]};
}

} // namespace

SpherePackingMetric::SpherePackingMetric(Vector radii) : radii_(std::move(radii))
{
    for (double r : radii_) check_radius(r);
}

double nondegeneracy_Q(double ri, double rj, double rk, double rl)
{
    for (double r : {ri, rj, rk, rl}) check_radius(r);
    const double a = 1.0 / ri, b = 1.0 / rj, c = 1.0 / rk, d = 1.0 / rl;
    const double s = a + b + c + d;
    return s * s - 2.0 * (a * a + b * b + c * c + d * d);
}

AdmissibilityReport admissible_metric_check(const TetComplex& complex, const SpherePackingMetric& metric)
{
    AdmissibilityReport report;
    for (int t = 0; t < static_cast<int>(complex.tets().size()); ++t) {
        const Tet& tet = complex.tets()[t];
        if (!(nondegeneracy_Q(metric[tet[0]], metric[tet[1]], metric[tet[2]], metric[tet[3]]) > 0.0))
            report.offending_tets.push_back(t);
    }
    report.admissible = report.offending_tets.empty();
    return report;
}

double cayley_menger(const TetLengths& l)
{
    Eigen::Matrix<double, 5, 5> m;
    m.setZero();
    for (int i = 0; i < 4; ++i) {
        m(0, i + 1) = m(i + 1, 0) = 1.0;
        for (int j = i + 1; j < 4; ++j) {
            const double sq = l[length_index(i, j)] * l[length_index(i, j)];
            m(i + 1, j + 1) = m(j + 1, i + 1) = sq;
        }
    }
    return m.determinant();
}

std::array<double, 4> solid_angles(const TetLengths& l)
{
    double longest = 0.0;
    for (double x : l) {
        if (!(x > 0.0) || !std::isfinite(x)) throw Error(ErrorCode::DegenerateTet, "edge length is not positive");
        longest = std::max(longest, x);
    }
    const double cm = cayley_menger(l);
    if (!(cm > 1e-12 * std::pow(longest, 6)))
        throw Error(ErrorCode::DegenerateTet, "Cayley-Menger determinant " + std::to_string(cm) + " is not positive");

    std::array<double, 4> omega{};
    for (int v = 0; v < 4; ++v) {
        std::array<int, 3> o{};
        for (int k = 0, w = 0; w < 4; ++w)
            if (w != v) o[k++] = w;
        // Sides of the spherical triangle cut out around v.
        const double a = face_angle(l[length_index(v, o[1])], l[length_index(v, o[2])], l[length_index(o[1], o[2])]);
        const double b = face_angle(l[length_index(v, o[0])], l[length_index(v, o[2])], l[length_index(o[0], o[2])]);
        const double c = face_angle(l[length_index(v, o[0])], l[length_index(v, o[1])], l[length_index(o[0], o[1])]);
        const double s = 0.5 * (a + b + c);
        const double t = std::tan(0.5 * s) * std::tan(0.5 * (s - a)) * std::tan(0.5 * (s - b)) *
                         std::tan(0.5 * (s - c));
        omega[v] = 4.0 * std::atan(std::sqrt(std::max(t, 0.0)));
    }
    return omega;
}

TetGeometry tet_geometry(double ri, double rj, double rk, double rl)
{
    TetGeometry g;
    g.Q = nondegeneracy_Q(ri, rj, rk, rl);
    g.lengths = packing_lengths({ri, rj, rk, rl});
    g.solid_angles = solid_angles(g.lengths);
    return g;
}

Vector cr_curvature(const TetComplex& complex, const SpherePackingMetric& metric)
{
    require_admissible(complex, metric);
    Vector k = Vector::Constant(complex.vertex_count(), 4.0 * kPi);
    for (const Tet& tet : complex.tets()) {
        const auto omega = solid_angles(packing_lengths({metric[tet[0]], metric[tet[1]], metric[tet[2]], metric[tet[3]]}));
        for (int c = 0; c < 4; ++c) k[tet[c]] -= omega[c];
    }
    return k;
}

Vector alpha_curvature_3d(const TetComplex& complex, const SpherePackingMetric& metric, double alpha)
{
    return cr_curvature(complex, metric).cwiseQuotient(metric.radii().array().pow(alpha).matrix());
}

double ehr_functional(const TetComplex& complex, const SpherePackingMetric& metric)
{
    return cr_curvature(complex, metric).dot(metric.radii());
}

CurvatureJacobian3d curvature_jacobian_r_detail(const TetComplex& complex, const SpherePackingMetric& metric)
{
    require_admissible(complex, metric);
    const int n = complex.vertex_count();
    const Vector& r = metric.radii();
    Matrix jac(n, n);
    for (int j = 0; j < n; ++j) {
        const double h = 1e-6 * std::max(1.0, std::abs(r[j]));
        Vector plus = r, minus = r;
        plus[j] += h;
        minus[j] -= h;
        if (!(minus[j] > 0.0))
            throw Error(ErrorCode::FDNearBoundary, "difference step leaves the positive orthant at vertex " +
                                                       std::to_string(j));
        const SpherePackingMetric mp(plus), mm(minus);
        if (!admissible_metric_check(complex, mp).admissible || !admissible_metric_check(complex, mm).admissible)
            throw Error(ErrorCode::FDNearBoundary,
                        "difference step at vertex " + std::to_string(j) + " leaves the admissible set");
        jac.col(j) = (cr_curvature(complex, mp) - cr_curvature(complex, mm)) / (2.0 * h);
    }
    CurvatureJacobian3d out;
    out.asymmetry = (jac - jac.transpose()).cwiseAbs().maxCoeff();
    out.matrix = 0.5 * (jac + jac.transpose());
    return out;
}

Matrix curvature_jacobian_r(const TetComplex& complex, const SpherePackingMetric& metric)
{
    return curvature_jacobian_r_detail(complex, metric).matrix;
}

} // namespace alphaflow
