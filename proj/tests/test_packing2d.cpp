#include "alphaflow/error.hpp"
#include "alphaflow/meshes.hpp"
#include "alphaflow/packing2d.hpp"
#include "alphaflow/spectral.hpp"

#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>

#include <numbers>

using namespace alphaflow;
using Catch::Approx;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<WeightedSurface> test_meshes()
{
    return {meshes::tetrahedron(), meshes::octahedron(), meshes::seven_vertex_torus()};
}

} // namespace

TEST_CASE("circle packing edge lengths")
{
    CHECK(circle_packing_length(3, 4, pi / 2) == Approx(5.0).margin(1e-14));
    CHECK(circle_packing_length(1, 1, 0) == Approx(2.0).margin(1e-14));
    CHECK(circle_packing_length(2, 3, pi / 3) == Approx(std::sqrt(19.0)).margin(1e-14));
    CHECK(std::sqrt(19.0) == Approx(4.358899).epsilon(0).margin(1e-6));
}

TEST_CASE("edge lengths satisfy the triangle inequality on every face")
{
    std::mt19937_64 rng(3);
    for (const WeightedSurface& base : test_meshes()) {
        const WeightedSurface s = testing::with_random_weights(base, rng, pi / 2);
        const PackingMetric m = testing::random_packing(s.vertex_count(), rng, 0.1, 10.0);
        const Vector l = edge_lengths(s, m);
        for (int f = 0; f < static_cast<int>(s.faces().size()); ++f) {
            const double a = l[s.opposite_edge(f, 0)], b = l[s.opposite_edge(f, 1)], c = l[s.opposite_edge(f, 2)];
            CHECK(a > 0);
            CHECK(a < b + c);
            CHECK(b < a + c);
            CHECK(c < a + b);
        }
    }
}

TEST_CASE("inner angles")
{
    SECTION("equilateral")
    {
        for (double t : inner_angles(2, 2, 2)) CHECK(t == Approx(pi / 3).margin(1e-14));
    }
    SECTION("right triangle")
    {
        const auto t = inner_angles(3, 4, 5);
        CHECK(t[2] == Approx(pi / 2).margin(1e-14));
        CHECK(t[0] == Approx(0.643501).epsilon(0).margin(1e-6));
        CHECK(t[1] == Approx(0.927295).epsilon(0).margin(1e-6));
        CHECK(t[0] == Approx(std::atan(3.0 / 4.0)).margin(1e-14));
    }
    SECTION("degenerate")
    {
        CHECK_THROWS_AS(inner_angles(1, 1, 2), Error);
        CHECK_THROWS_AS(inner_angles(1, 1, 3), Error);
        CHECK_THROWS_AS(inner_angles(0, 1, 1), Error);
        try {
            inner_angles(1, 1, 2);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::DegenerateTriangle);
        }
    }
    SECTION("agree with a planar embedding")
    {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> d(0.1, 5.0);
        for (int k = 0; k < 500; ++k) {
            const double x = d(rng), y = d(rng), z = d(rng);
            const double a = x + y, b = y + z, c = x + z;  // always a proper triangle
            const auto t = inner_angles(a, b, c);
            const auto o = testing::angles_by_coordinates(a, b, c);
            for (int i = 0; i < 3; ++i) CHECK(t[i] == Approx(o[i]).margin(1e-12));
            CHECK(t[0] + t[1] + t[2] == Approx(pi).margin(1e-12));
        }
    }
}

TEST_CASE("Gauss curvature at the regular metrics")
{
    const Vector kt = gauss_curvature(meshes::tetrahedron(), PackingMetric(Vector::Ones(4)));
    for (double k : kt) CHECK(k == Approx(pi).margin(1e-13));
    const Vector ko = gauss_curvature(meshes::seven_vertex_torus(), PackingMetric(Vector::Ones(7)));
    for (double k : ko) CHECK(k == Approx(0.0).margin(1e-13));
}

TEST_CASE("Gauss-Bonnet and curvature bounds on random metrics")
{
    std::mt19937_64 rng(7);
    for (const WeightedSurface& base : test_meshes()) {
        const double total = 2 * pi * euler_characteristic(base);
        for (int k = 0; k < 200; ++k) {
            const WeightedSurface s = k % 2 ? testing::with_random_weights(base, rng, pi / 2) : base;
            const PackingMetric m = testing::random_packing(s.vertex_count(), rng, 0.1, 10.0);
            const Vector K = gauss_curvature(s, m);
            CHECK(std::abs(K.sum() - total) <= 1e-9);
            for (int i = 0; i < s.vertex_count(); ++i) {
                CHECK(K[i] < 2 * pi);
                CHECK(K[i] > (2 - s.degree(i)) * pi);
            }
            for (const auto& a : corner_angles(s, m)) CHECK(std::abs(a[0] + a[1] + a[2] - pi) <= 1e-12);
        }
    }
}

TEST_CASE("curvature is invariant under scaling")
{
    std::mt19937_64 rng(9);
    const WeightedSurface s = meshes::octahedron(0.3);
    const Vector r = testing::random_radii(6, rng);
    const Vector K = gauss_curvature(s, PackingMetric(r));
    for (double c : {0.5, 2.0, 10.0}) {
        const Vector Kc = gauss_curvature(s, PackingMetric(c * r));
        CHECK((Kc - K).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("alpha curvature and s_alpha")
{
    const WeightedSurface tet = meshes::tetrahedron();
    for (double alpha : {-1.0, 0.0, 1.0, 2.5}) {
        const Vector R = alpha_curvature(tet, PackingMetric(Vector::Ones(4)), alpha);
        for (double x : R) CHECK(x == Approx(pi).margin(1e-13));
        CHECK(s_alpha_2d(tet, PackingMetric(Vector::Ones(4)), alpha) == Approx(pi).margin(1e-14));
    }
    Vector r(4);
    r << 1, 1, 1, 2;
    CHECK(s_alpha_2d(tet, PackingMetric(r), 1.0) == Approx(4 * pi / 5).margin(1e-14));
    const Vector K = gauss_curvature(tet, PackingMetric(r));
    const Vector R2 = alpha_curvature(tet, PackingMetric(r), 2.0);
    CHECK(R2[3] == Approx(K[3] / 4).margin(1e-14));
    CHECK((alpha_curvature(tet, PackingMetric(r), 0.0) - K).cwiseAbs().maxCoeff() == 0.0);
    CHECK(s_alpha_2d(meshes::seven_vertex_torus(), PackingMetric(Vector::Ones(7) * 3), 1.5) == 0.0);

    const CurvatureState st = curvature_state(tet, PackingMetric(r), 2.0);
    CHECK(st.K.sum() == Approx(4 * pi).margin(1e-12));
    CHECK(st.K_average == Approx(pi).margin(1e-12));
    CHECK(st.lengths.size() == 6);
}

TEST_CASE("invalid metrics are rejected")
{
    Vector r(3);
    r << 1, 0, 2;
    CHECK_THROWS_AS(PackingMetric(r), Error);
    r << 1, std::nan(""), 2;
    CHECK_THROWS_AS(PackingMetric(r), Error);
    CHECK_THROWS_AS(gauss_curvature(meshes::tetrahedron(), PackingMetric(Vector::Ones(3))), Error);
}

TEST_CASE("analytic Jacobian matches finite differences")
{
    std::mt19937_64 rng(13);
    for (const WeightedSurface& base : test_meshes()) {
        for (int k = 0; k < 20; ++k) {
            const WeightedSurface s = testing::with_random_weights(base, rng, pi / 2);
            const PackingMetric m = testing::random_packing(s.vertex_count(), rng);
            const Matrix L = curvature_jacobian_u(s, m);
            const Matrix fd = fd_jacobian(
                [&s](const Vector& u) { return gauss_curvature(s, PackingMetric::from_log(u)); }, m.log_radii());
            CHECK((L - fd).norm() / fd.norm() <= 1e-5);
        }
    }
}

TEST_CASE("Jacobian structure: symmetry, kernel, sign pattern, PSD")
{
    std::mt19937_64 rng(17);
    for (const WeightedSurface& base : test_meshes()) {
        for (int k = 0; k < 20; ++k) {
            const WeightedSurface s = testing::with_random_weights(base, rng, 1.5);
            const Matrix L = curvature_jacobian_u(s, testing::random_packing(s.vertex_count(), rng));
            const int n = s.vertex_count();
            CHECK((L - L.transpose()).cwiseAbs().maxCoeff() <= 1e-9);
            CHECK((L * Vector::Ones(n)).cwiseAbs().maxCoeff() <= 1e-9);
            const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(L).eigenvalues();
            CHECK(ev[0] >= -1e-9);
            CHECK(ev[1] > 1e-9);  // rank N - 1
            for (int i = 0; i < n; ++i) {
                CHECK(L(i, i) > 0);
                for (int j = 0; j < n; ++j) {
                    if (i == j) continue;
                    if (s.find_edge(i, j) >= 0)
                        CHECK(L(i, j) < 0);
                    else
                        CHECK(L(i, j) == 0.0);
                }
            }
        }
    }
}

TEST_CASE("Jacobian at the regular tetrahedron has equal negative off-diagonals")
{
    const Matrix L = curvature_jacobian_u(meshes::tetrahedron(), PackingMetric(Vector::Ones(4)));
    const double off = L(0, 1);
    CHECK(off < 0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) CHECK(L(i, j) == Approx(off).margin(1e-14));
}

TEST_CASE("sign pattern at the boundary weight pi/2 is nonpositive")
{
    std::mt19937_64 rng(19);
    const WeightedSurface s = meshes::octahedron(pi / 2);
    const Matrix L = curvature_jacobian_u(s, testing::random_packing(6, rng));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            if (i != j) CHECK(L(i, j) <= 1e-15);
}
