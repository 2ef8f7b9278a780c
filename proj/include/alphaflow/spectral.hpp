#pragma once

#include "alphaflow/complex.hpp"
#include "alphaflow/packing2d.hpp"
#include "alphaflow/types.hpp"

#include <functional>
#include <optional>

namespace alphaflow {

/// Dense symmetric matrix with an optional declared kernel direction.
struct SymOperator {
    Matrix matrix;
    std::optional<Vector> kernel;
    /// Allowed ||M k||_inf relative to max |M_ij|. Loosened for operators
    /// assembled by finite differences.
    double kernel_tol = 1e-8;
};

/// Eigenvalues ascending, eigenvectors as matching columns.
struct EigenDecomposition {
    Vector values;
    Matrix vectors;
};

/// Cyclic Jacobi rotations on a dense symmetric matrix. Sweeps until the
/// off-diagonal Frobenius norm drops below tol * ||A||_F.
EigenDecomposition jacobi_eigen(const Matrix& a, double tol = 1e-15, int max_sweeps = 100);

/// Orthonormal basis (N x N-1) of the complement of k, built from the
/// Householder reflection that maps k/|k| to e_1.
Matrix orthonormal_complement(const Vector& k);

/// Eigenvalues of Q^T A Q where Q spans the complement of the kernel vector.
Vector deflated_eigenvalues(const Matrix& a, const Vector& kernel);

/// Smallest eigenvalue on the complement of the declared kernel.
/// Throws NotPSD if any eigenvalue is below -1e-7 and KernelMismatch if the
/// kernel is not annihilated or a second null direction exists.
double first_positive_eigenvalue(const SymOperator& op);

/// Delta_alpha = -Sigma^{-alpha} L, with Sigma = diag(r). Not symmetric for alpha != 0.
Matrix alpha_laplacian_2d(const Matrix& L, const PackingMetric& metric, double alpha);

/// Lambda_alpha = Sigma^{-alpha/2} L Sigma^{-alpha/2}; its kernel is r^{alpha/2}.
SymOperator symmetric_alpha_conjugate_2d(const Matrix& L, const PackingMetric& metric, double alpha);

/// lambda_1(-Delta_alpha), computed through the symmetric conjugate.
double lambda1_alpha_laplacian_2d(const Matrix& L, const PackingMetric& metric, double alpha);

/// <f, h>_alpha = sum_i f_i h_i r_i^alpha.
double inner_product_alpha(const Vector& f, const Vector& h, const PackingMetric& metric, double alpha);

/// Hess_u F = L - alpha s_alpha (Sigma^alpha - r^alpha (r^alpha)^T / ||r||_alpha^alpha).
Matrix hessian_potential_2d(const WeightedSurface& surface, const PackingMetric& metric, double alpha);

using VectorField = std::function<Vector(const Vector&)>;

/// Per-coordinate default step 1e-6 * max(1, |x_j|).
Vector default_fd_steps(const Vector& x);

/// Central-difference Jacobian, column j = (fn(x + h e_j) - fn(x - h e_j)) / 2h.
/// Failures inside fn surface as EvaluationFailure.
Matrix fd_jacobian(const VectorField& fn, const Vector& x, std::optional<double> step = std::nullopt);

} // namespace alphaflow
