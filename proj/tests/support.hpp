#pragma once

#include "alphaflow/complex.hpp"
#include "alphaflow/packing2d.hpp"
#include "alphaflow/packing3d.hpp"
#include "alphaflow/types.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <random>

namespace alphaflow::testing {

/// Log-uniform radii in [lo, hi].
inline Vector random_radii(int n, std::mt19937_64& rng, double lo = 0.5, double hi = 2.0)
{
    std::uniform_real_distribution<double> d(std::log(lo), std::log(hi));
    Vector r(n);
    for (int i = 0; i < n; ++i) r[i] = std::exp(d(rng));
    return r;
}

inline PackingMetric random_packing(int n, std::mt19937_64& rng, double lo = 0.5, double hi = 2.0)
{
    return PackingMetric(random_radii(n, rng, lo, hi));
}

/// Same faces with an independent random weight in [0, max_weight] per edge.
inline WeightedSurface with_random_weights(const WeightedSurface& s, std::mt19937_64& rng, double max_weight)
{
    std::uniform_real_distribution<double> d(0.0, max_weight);
    EdgeWeights w;
    for (const Edge& e : s.edges()) w[e] = d(rng);
    return build_surface(s.vertex_count(), s.faces(), w);
}

/// Angles of the triangle with the given side lengths (entry k opposite side
/// k), from an explicit planar embedding.
inline std::array<double, 3> angles_by_coordinates(double a, double b, double c)
{
    // Vertex 1 at the origin, vertex 2 at (a, 0); side a joins 1 and 2.
    const double x = (a * a + c * c - b * b) / (2.0 * a);
    const double y = std::sqrt(std::max(c * c - x * x, 0.0));
    const std::array<double, 2> p0{x, y}, p1{0.0, 0.0}, p2{a, 0.0};
    auto angle_at = [](const std::array<double, 2>& o, const std::array<double, 2>& u, const std::array<double, 2>& v) {
        const double ux = u[0] - o[0], uy = u[1] - o[1], vx = v[0] - o[0], vy = v[1] - o[1];
        return std::atan2(std::abs(ux * vy - uy * vx), ux * vx + uy * vy);
    };
    return {angle_at(p0, p1, p2), angle_at(p1, p0, p2), angle_at(p2, p0, p1)};
}

/// Central-difference gradient of a scalar function.
inline Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x, double h = 1e-6)
{
    Vector g(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        Vector p = x, m = x;
        p[j] += h;
        m[j] -= h;
        g[j] = (f(p) - f(m)) / (2.0 * h);
    }
    return g;
}

/// Solid angles from an explicit embedding of the sphere-packing tet, by
/// the dihedral-angle sum Omega_v = sum of dihedral angles at v's edges - pi.
inline std::array<double, 4> solid_angles_by_dihedrals(const std::array<double, 4>& r)
{
    auto len = [&](int i, int j) { return r[i] + r[j]; };
    using P = std::array<double, 3>;
    // Place vertex 0 at the origin, 1 on the x axis, 2 in the xy plane.
    const double l01 = len(0, 1), l02 = len(0, 2), l03 = len(0, 3), l12 = len(1, 2), l13 = len(1, 3),
                 l23 = len(2, 3);
    P p0{0, 0, 0}, p1{l01, 0, 0};
    const double x2 = (l01 * l01 + l02 * l02 - l12 * l12) / (2 * l01);
    P p2{x2, std::sqrt(l02 * l02 - x2 * x2), 0};
    const double x3 = (l01 * l01 + l03 * l03 - l13 * l13) / (2 * l01);
    const double y3 = (l02 * l02 + l03 * l03 - l23 * l23 - 2 * x2 * x3) / (2 * p2[1]);
    P p3{x3, y3, std::sqrt(std::max(l03 * l03 - x3 * x3 - y3 * y3, 0.0))};
    const std::array<P, 4> p{p0, p1, p2, p3};

    auto sub = [](const P& a, const P& b) { return P{a[0] - b[0], a[1] - b[1], a[2] - b[2]}; };
    auto cross = [](const P& a, const P& b) {
        return P{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
    };
    auto dot = [](const P& a, const P& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; };
    auto norm = [&](const P& a) { return std::sqrt(dot(a, a)); };

    // Dihedral angle along edge ij, between faces ijk and ijl.
    auto dihedral = [&](int i, int j, int k, int l) {
        const P e = sub(p[j], p[i]);
        const P nk = cross(e, sub(p[k], p[i]));
        const P nl = cross(e, sub(p[l], p[i]));
        return std::acos(std::clamp(dot(nk, nl) / (norm(nk) * norm(nl)), -1.0, 1.0));
    };
    std::array<double, 4> omega{};
    for (int v = 0; v < 4; ++v) {
        std::array<int, 3> o{};
        for (int k = 0, w = 0; w < 4; ++w)
            if (w != v) o[k++] = w;
        omega[v] = dihedral(v, o[0], o[1], o[2]) + dihedral(v, o[1], o[0], o[2]) + dihedral(v, o[2], o[0], o[1]) -
                   M_PI;
    }
    return omega;
}

} // namespace alphaflow::testing
