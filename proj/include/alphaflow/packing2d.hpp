#pragma once

#include "alphaflow/complex.hpp"
#include "alphaflow/types.hpp"

#include <array>
#include <vector>

namespace alphaflow {

/// Positive radius per vertex. Log coordinates u = ln r are derived on demand.
class PackingMetric {
public:
    explicit PackingMetric(Vector radii);
    static PackingMetric from_log(const Vector& u);

    int size() const { return static_cast<int>(radii_.size()); }
    const Vector& radii() const { return radii_; }
    double operator[](int i) const { return radii_[i]; }
    Vector log_radii() const { return radii_.array().log().matrix(); }

private:
    Vector radii_;
};

/// ||r||_alpha^alpha = sum_i r_i^alpha.
double power_sum(const Vector& r, double alpha);

/// l_ij = sqrt(r_i^2 + r_j^2 + 2 r_i r_j cos(Phi_ij)).
double circle_packing_length(double ri, double rj, double phi);

/// Lengths indexed by edge id.
Vector edge_lengths(const WeightedSurface& surface, const PackingMetric& metric);

/// Angles of the Euclidean triangle with side lengths (a, b, c); entry k is
/// the angle opposite side k. Throws DegenerateTriangle unless the strict
/// triangle inequality holds with relative margin 1e-12.
std::array<double, 3> inner_angles(double a, double b, double c);

/// Inner angle at each corner of each face, in the face's corner order.
std::vector<std::array<double, 3>> corner_angles(const WeightedSurface& surface, const PackingMetric& metric);

/// K_i = 2 pi - sum of the inner angles at i.
Vector gauss_curvature(const WeightedSurface& surface, const PackingMetric& metric);

/// R_{alpha,i} = K_i / r_i^alpha.
Vector alpha_curvature(const WeightedSurface& surface, const PackingMetric& metric, double alpha);

/// s_alpha = 2 pi chi(M) / ||r||_alpha^alpha.
double s_alpha_2d(const WeightedSurface& surface, const PackingMetric& metric, double alpha);

/// Analytic Jacobian L = dK/du, assembled face by face via the chain rule
/// (dtheta/dl from the law of cosines, dl/du from the length formula) and
/// symmetrized.
Matrix curvature_jacobian_u(const WeightedSurface& surface, const PackingMetric& metric);

struct CurvatureState {
    double alpha = 0.0;
    Vector lengths;
    std::vector<std::array<double, 3>> angles;
    Vector K;
    Vector R;
    double s_alpha = 0.0;
    double K_average = 0.0;
    Matrix jacobian;
};

CurvatureState curvature_state(const WeightedSurface& surface, const PackingMetric& metric, double alpha);

} // namespace alphaflow
