#include "alphaflow/packing2d.hpp"

#include "alphaflow/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace alphaflow {

PackingMetric::PackingMetric(Vector radii) : radii_(std::move(radii))
{
    if (radii_.size() == 0) throw Error(ErrorCode::InvalidArgument, "empty radius vector");
    for (Eigen::Index i = 0; i < radii_.size(); ++i) {
        if (!(radii_[i] > 0.0) || !std::isfinite(radii_[i]))
            throw Error(ErrorCode::NonpositiveRadius,
                        "radius " + std::to_string(i) + " = " + std::to_string(radii_[i]));
    }
}

PackingMetric PackingMetric::from_log(const Vector& u)
{
    return PackingMetric(u.array().exp().matrix());
}

double power_sum(const Vector& r, double alpha)
{
    return r.array().pow(alpha).sum();
}

double circle_packing_length(double ri, double rj, double phi)
{
    return std::sqrt(ri * ri + rj * rj + 2.0 * ri * rj * std::cos(phi));
}

namespace {

void check_size(const WeightedSurface& surface, const PackingMetric& metric)
{
    if (metric.size() != surface.vertex_count())
        throw Error(ErrorCode::InvalidArgument, "metric has " + std::to_string(metric.size()) +
                                                    " radii for " + std::to_string(surface.vertex_count()) +
                                                    " vertices");
}

} // namespace

Vector edge_lengths(const WeightedSurface& surface, const PackingMetric& metric)
{
    check_size(surface, metric);
    const auto& edges = surface.edges();
    Vector l(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e)
        l[e] = circle_packing_length(metric[edges[e][0]], metric[edges[e][1]], surface.weight(static_cast<int>(e)));
    return l;
}

std::array<double, 3> inner_angles(double a, double b, double c)
{
    const double perimeter = a + b + c;
    const double pa = -a + b + c, pb = a - b + c, pc = a + b - c;
    const double margin = 1e-12 * perimeter;
    if (!(a > 0 && b > 0 && c > 0) || !(pa > margin && pb > margin && pc > margin))
        throw Error(ErrorCode::DegenerateTriangle, "lengths (" + std::to_string(a) + ", " + std::to_string(b) +
                                                       ", " + std::to_string(c) + ") violate the triangle inequality");
    // 4 * area by Heron; the law-of-cosines numerator gives the cosine side.
    const double four_area = std::sqrt(perimeter * pa * pb * pc);
    return {std::atan2(four_area, b * b + c * c - a * a), std::atan2(four_area, a * a + c * c - b * b),
            std::atan2(four_area, a * a + b * b - c * c)};
}

std::vector<std::array<double, 3>> corner_angles(const WeightedSurface& surface, const PackingMetric& metric)
{
    const Vector l = edge_lengths(surface, metric);
    std::vector<std::array<double, 3>> angles(surface.faces().size());
    for (std::size_t f = 0; f < angles.size(); ++f) {
        const int fi = static_cast<int>(f);
        angles[f] = inner_angles(l[surface.opposite_edge(fi, 0)], l[surface.opposite_edge(fi, 1)],
                                 l[surface.opposite_edge(fi, 2)]);
    }
    return angles;
}

Vector gauss_curvature(const WeightedSurface& surface, const PackingMetric& metric)
{
    const auto angles = corner_angles(surface, metric);
    Vector K = Vector::Constant(surface.vertex_count(), 2.0 * std::numbers::pi);
    for (std::size_t f = 0; f < angles.size(); ++f)
        for (int c = 0; c < 3; ++c) K[surface.faces()[f][c]] -= angles[f][c];
    return K;
}

Vector alpha_curvature(const WeightedSurface& surface, const PackingMetric& metric, double alpha)
{
    const Vector K = gauss_curvature(surface, metric);
    return (K.array() / metric.radii().array().pow(alpha)).matrix();
}

double s_alpha_2d(const WeightedSurface& surface, const PackingMetric& metric, double alpha)
{
    check_size(surface, metric);
    return 2.0 * std::numbers::pi * euler_characteristic(surface) / power_sum(metric.radii(), alpha);
}

Matrix curvature_jacobian_u(const WeightedSurface& surface, const PackingMetric& metric)
{
    const Vector l = edge_lengths(surface, metric);
    const int n = surface.vertex_count();
    Matrix L = Matrix::Zero(n, n);

    for (int f = 0; f < static_cast<int>(surface.faces().size()); ++f) {
        const Face& face = surface.faces()[f];
        std::array<double, 3> side{};
        for (int c = 0; c < 3; ++c) side[c] = l[surface.opposite_edge(f, c)];
        const auto theta = inner_angles(side[0], side[1], side[2]);
        const double four_area = std::sqrt((side[0] + side[1] + side[2]) * (-side[0] + side[1] + side[2]) *
                                           (side[0] - side[1] + side[2]) * (side[0] + side[1] - side[2]));
        const double two_area = 0.5 * four_area;

        // dtheta[x] / dside[y]: side y is opposite corner y.
        double dtheta_dl[3][3];
        for (int x = 0; x < 3; ++x) {
            const double scale = side[x] / two_area;
            for (int y = 0; y < 3; ++y) {
                if (x == y) {
                    dtheta_dl[x][y] = scale;
                } else {
                    const int z = 3 - x - y;
                    dtheta_dl[x][y] = -scale * std::cos(theta[z]);
                }
            }
        }

        // dside[y] / du at corner d; side y joins the two corners other than y.
        double dl_du[3][3] = {};
        for (int y = 0; y < 3; ++y) {
            const double phi = surface.weight(surface.opposite_edge(f, y));
            const double cphi = std::cos(phi);
            for (int d = 0; d < 3; ++d) {
                if (d == y) continue;
                const int e = 3 - y - d;
                const double rd = metric[face[d]], re = metric[face[e]];
                dl_du[y][d] = (rd * rd + rd * re * cphi) / side[y];
            }
        }

        for (int x = 0; x < 3; ++x) {
            for (int d = 0; d < 3; ++d) {
                double dtheta_du = 0.0;
                for (int y = 0; y < 3; ++y) dtheta_du += dtheta_dl[x][y] * dl_du[y][d];
                L(face[x], face[d]) -= dtheta_du;
            }
        }
    }
    return 0.5 * (L + L.transpose());
}

CurvatureState curvature_state(const WeightedSurface& surface, const PackingMetric& metric, double alpha)
{
    CurvatureState state;
    state.alpha = alpha;
    state.lengths = edge_lengths(surface, metric);
    state.angles = corner_angles(surface, metric);
    state.K = Vector::Constant(surface.vertex_count(), 2.0 * std::numbers::pi);
    for (std::size_t f = 0; f < state.angles.size(); ++f)
        for (int c = 0; c < 3; ++c) state.K[surface.faces()[f][c]] -= state.angles[f][c];
    state.R = (state.K.array() / metric.radii().array().pow(alpha)).matrix();
    state.s_alpha = s_alpha_2d(surface, metric, alpha);
    state.K_average = 2.0 * std::numbers::pi * euler_characteristic(surface) / surface.vertex_count();
    state.jacobian = curvature_jacobian_u(surface, metric);
    return state;
}

} // namespace alphaflow
