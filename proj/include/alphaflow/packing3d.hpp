#pragma once

#include "alphaflow/complex.hpp"
#include "alphaflow/types.hpp"

#include <array>
#include <vector>

namespace alphaflow {

/// Positive radius per vertex of a tetrahedral complex; l_ij = r_i + r_j.
/// Admissibility (Q > 0 on every tet) is checked separately.
class SpherePackingMetric {
public:
    explicit SpherePackingMetric(Vector radii);

    int size() const { return static_cast<int>(radii_.size()); }
    const Vector& radii() const { return radii_; }
    double operator[](int i) const { return radii_[i]; }

private:
    Vector radii_;
};

/// Edge lengths of one tet in the order l01, l02, l03, l12, l13, l23.
using TetLengths = std::array<double, 6>;

struct TetGeometry {
    TetLengths lengths{};
    std::array<double, 4> solid_angles{};
    double Q = 0.0;
};

/// Q = (sum 1/r)^2 - 2 sum 1/r^2; the tet is realizable iff Q > 0.
double nondegeneracy_Q(double ri, double rj, double rk, double rl);

struct AdmissibilityReport {
    bool admissible = true;
    std::vector<int> offending_tets;  ///< indices into complex.tets()
};

AdmissibilityReport admissible_metric_check(const TetComplex& complex, const SpherePackingMetric& metric);

/// 288 V^2 via the Cayley-Menger determinant.
double cayley_menger(const TetLengths& l);

/// Solid angle at each vertex: face angles by the law of cosines, then the
/// spherical excess by L'Huilier. Throws DegenerateTet when the Cayley-Menger
/// determinant is not positive.
std::array<double, 4> solid_angles(const TetLengths& l);

TetGeometry tet_geometry(double ri, double rj, double rk, double rl);

/// K_i = 4 pi - sum of the solid angles at i.
Vector cr_curvature(const TetComplex& complex, const SpherePackingMetric& metric);

/// R_{alpha,i} = K_i / r_i^alpha.
Vector alpha_curvature_3d(const TetComplex& complex, const SpherePackingMetric& metric, double alpha);

/// S = sum K_i r_i.
double ehr_functional(const TetComplex& complex, const SpherePackingMetric& metric);

/// Lambda = dK/dr by central differences (step 1e-6 max(1, r_j)).
struct CurvatureJacobian3d {
    Matrix matrix;          ///< symmetrized
    double asymmetry = 0.0; ///< max |Lambda - Lambda^T| before symmetrizing
};

CurvatureJacobian3d curvature_jacobian_r_detail(const TetComplex& complex, const SpherePackingMetric& metric);
Matrix curvature_jacobian_r(const TetComplex& complex, const SpherePackingMetric& metric);

} // namespace alphaflow
