#include "alphaflow/spectral.hpp"

#include "alphaflow/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace alphaflow {

EigenDecomposition jacobi_eigen(const Matrix& a_in, double tol, int max_sweeps)
{
    if (a_in.rows() != a_in.cols()) throw Error(ErrorCode::InvalidArgument, "eigensolver needs a square matrix");
    const Eigen::Index n = a_in.rows();
    Matrix a = 0.5 * (a_in + a_in.transpose());
    Matrix v = Matrix::Identity(n, n);
    const double scale = std::max(a.norm(), std::numeric_limits<double>::min());

    auto off_norm = [&] {
        double s = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) s += 2.0 * a(p, q) * a(p, q);
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < max_sweeps && off_norm() > tol * scale; ++sweep) {
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                // Rotation annihilating a(p, q); t is the smaller root for stability.
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return a(i, i) < a(j, j); });
    EigenDecomposition out{Vector(n), Matrix(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        out.vectors.col(k) = v.col(order[k]);
    }
    return out;
}

Matrix orthonormal_complement(const Vector& k)
{
    const Eigen::Index n = k.size();
    const double norm = k.norm();
    if (n < 2 || !(norm > 0.0)) throw Error(ErrorCode::InvalidArgument, "kernel vector must be nonzero");
    Vector w = k / norm;
    // Reflect w onto -sign(w_0) e_1 to avoid cancellation.
    w[0] += (w[0] >= 0 ? 1.0 : -1.0);
    const Matrix h = Matrix::Identity(n, n) - 2.0 * w * w.transpose() / w.squaredNorm();
    return h.rightCols(n - 1);
}

Vector deflated_eigenvalues(const Matrix& a, const Vector& kernel)
{
    const Matrix q = orthonormal_complement(kernel);
    return jacobi_eigen(q.transpose() * a * q).values;
}

namespace {

double max_abs(const Matrix& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

} // namespace

double first_positive_eigenvalue(const SymOperator& op)
{
    const Matrix& m = op.matrix;
    if (m.rows() != m.cols() || m.rows() < 2)
        throw Error(ErrorCode::InvalidArgument, "operator must be square with N >= 2");
    const double scale = std::max(1.0, max_abs(m));
    if (max_abs(m - m.transpose()) > 1e-9 * scale) throw Error(ErrorCode::InvalidArgument, "operator is not symmetric");

    const double zero_tol = 1e-10 * scale;
    if (!op.kernel) {
        const Vector values = jacobi_eigen(m).values;
        if (values[0] < -1e-7) throw Error(ErrorCode::NotPSD, "eigenvalue " + std::to_string(values[0]));
        for (Eigen::Index i = 0; i < values.size(); ++i)
            if (values[i] > zero_tol) return values[i];
        throw Error(ErrorCode::KernelMismatch, "operator has no positive eigenvalue");
    }

    const Vector& k = *op.kernel;
    if (k.size() != m.rows()) throw Error(ErrorCode::KernelMismatch, "kernel vector has the wrong length");
    const Vector kn = k / k.norm();
    const double residual = (m * kn).cwiseAbs().maxCoeff();
    if (residual > op.kernel_tol * scale)
        throw Error(ErrorCode::KernelMismatch, "declared kernel leaves residual " + std::to_string(residual));

    const Vector values = deflated_eigenvalues(m, k);
    if (values[0] < -1e-7) throw Error(ErrorCode::NotPSD, "eigenvalue " + std::to_string(values[0]));
    if (values[0] <= zero_tol)
        throw Error(ErrorCode::KernelMismatch, "kernel is larger than the declared direction");
    return values[0];
}

Matrix alpha_laplacian_2d(const Matrix& L, const PackingMetric& metric, double alpha)
{
    const Vector w = metric.radii().array().pow(-alpha).matrix();
    return -(w.asDiagonal() * L);
}

SymOperator symmetric_alpha_conjugate_2d(const Matrix& L, const PackingMetric& metric, double alpha)
{
    const Vector half = metric.radii().array().pow(-0.5 * alpha).matrix();
    Matrix conj = half.asDiagonal() * L * half.asDiagonal();
    conj = 0.5 * (conj + conj.transpose());
    return {conj, metric.radii().array().pow(0.5 * alpha).matrix()};
}

double lambda1_alpha_laplacian_2d(const Matrix& L, const PackingMetric& metric, double alpha)
{
    return first_positive_eigenvalue(symmetric_alpha_conjugate_2d(L, metric, alpha));
}

double inner_product_alpha(const Vector& f, const Vector& h, const PackingMetric& metric, double alpha)
{
    if (f.size() != metric.size() || h.size() != metric.size())
        throw Error(ErrorCode::InvalidArgument, "vertex functions must have one entry per vertex");
    return (f.array() * h.array() * metric.radii().array().pow(alpha)).sum();
}

Matrix hessian_potential_2d(const WeightedSurface& surface, const PackingMetric& metric, double alpha)
{
    const Matrix L = curvature_jacobian_u(surface, metric);
    const Vector ra = metric.radii().array().pow(alpha).matrix();
    const double s = s_alpha_2d(surface, metric, alpha);
    const Matrix correction = Matrix(ra.asDiagonal()) - ra * ra.transpose() / ra.sum();
    return L - alpha * s * correction;
}

Vector default_fd_steps(const Vector& x)
{
    return (1e-6 * x.cwiseAbs().cwiseMax(1.0)).eval();
}

Matrix fd_jacobian(const VectorField& fn, const Vector& x, std::optional<double> step)
{
    const Vector steps = step ? Vector::Constant(x.size(), *step) : default_fd_steps(x);
    auto eval = [&](const Vector& p) {
        Vector y;
        try {
            y = fn(p);
        } catch (const std::exception& e) {
            throw Error(ErrorCode::EvaluationFailure, e.what());
        }
        if (!y.allFinite()) throw Error(ErrorCode::EvaluationFailure, "non-finite value in differenced field");
        return y;
    };

    Matrix J;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        Vector plus = x, minus = x;
        plus[j] += steps[j];
        minus[j] -= steps[j];
        const Vector column = (eval(plus) - eval(minus)) / (2.0 * steps[j]);
        if (j == 0) J.resize(column.size(), x.size());
        J.col(j) = column;
    }
    return J;
}

} // namespace alphaflow
