#include "alphaflow/error.hpp"
#include "alphaflow/flow2d.hpp"
#include "alphaflow/meshes.hpp"

#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <numbers>
#include <sstream>

using namespace alphaflow;
using Catch::Approx;

namespace {

constexpr double pi = std::numbers::pi;

/// Random radii rescaled so that prod r_i = 1.
PackingMetric unit_product_start(int n, std::mt19937_64& rng, double lo = 0.5, double hi = 2.0)
{
    Vector u = testing::random_radii(n, rng, lo, hi).array().log().matrix();
    u.array() -= u.mean();
    return PackingMetric::from_log(u);
}

FlowConfig config(double alpha, double t_end = 100.0)
{
    FlowConfig cfg;
    cfg.alpha = alpha;
    cfg.t_end = t_end;
    return cfg;
}

} // namespace

TEST_CASE("regular tetrahedron is a fixed point")
{
    for (double alpha : {-1.0, 0.0, 2.0}) {
        const FlowTrace t = integrate_alpha_flow(meshes::tetrahedron(), PackingMetric(Vector::Ones(4)), config(alpha));
        CHECK(t.verdict == Verdict::Converged);
        CHECK(t.residual.front() <= 1e-12);
        CHECK((t.final_radii().array() - 1.0).abs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("torus alpha-flow converges to the uniform metric")
{
    std::mt19937_64 rng(67);
    const WeightedSurface s = meshes::seven_vertex_torus();
    for (double alpha : {-1.0, 0.0, 1.0, 2.0}) {
        const FlowTrace t = integrate_alpha_flow(s, unit_product_start(7, rng), config(alpha, 500.0));
        CHECK(t.verdict == Verdict::Converged);
        CHECK(t.final_residual() <= 1e-8);
        CHECK((t.final_radii().array() - 1.0).abs().maxCoeff() <= 1e-6);
        CHECK(t.rate < 0);
        CHECK(t.conserved_drift() <= 1e-8);
    }
}

TEST_CASE("trace invariants along the flow")
{
    std::mt19937_64 rng(71);
    for (const WeightedSurface& base : {meshes::tetrahedron(), meshes::octahedron(), meshes::seven_vertex_torus()}) {
        const WeightedSurface s = testing::with_random_weights(base, rng, pi / 2);
        for (double alpha : {-1.0, 0.0, 1.0}) {
            const FlowTrace t = integrate_alpha_flow(s, testing::random_packing(s.vertex_count(), rng), config(alpha, 50));
            CHECK(t.conserved_drift() <= 1e-8);
            const double bound = 2 * pi * std::abs(euler_characteristic(s)) + s.max_degree() * pi;
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (i > 0) CHECK(t.times[i] > t.times[i - 1]);
                CHECK(t.radii[i].minCoeff() > 0);
                CHECK(t.residual[i] <= bound);
                if (i > 0) CHECK(t.potential[i] <= t.potential[i - 1] + 1e-10);
            }
            if (t.verdict == Verdict::Converged) {
                const PackingMetric m(t.final_radii());
                const Vector R = alpha_curvature(s, m, alpha);
                CHECK((R.array() - s_alpha_2d(s, m, alpha)).abs().maxCoeff() <= 10 * 1e-10);
            }
        }
    }
}

TEST_CASE("normalization rescales the start to unit product")
{
    Vector r(4);
    r << 2, 3, 4, 5;
    const FlowTrace t = integrate_alpha_flow(meshes::tetrahedron(), PackingMetric(r), config(0.0, 1.0));
    CHECK(t.radii.front().array().log().sum() == Approx(0.0).margin(1e-12));
    CHECK(t.normalization_factor == Approx(std::pow(120.0, -0.25)).epsilon(1e-12));
}

TEST_CASE("large alpha on the sphere is allowed to diverge")
{
    std::mt19937_64 rng(73);
    const FlowTrace t = integrate_alpha_flow(meshes::tetrahedron(), unit_product_start(4, rng), config(3.0, 200.0));
    CHECK((t.verdict == Verdict::Converged || t.verdict == Verdict::Diverging));
    CHECK(t.conserved_drift() <= 1e-8);
}

TEST_CASE("configuration errors")
{
    const PackingMetric m(Vector::Ones(4));
    FlowConfig bad = config(0.0);
    bad.t_end = 0;
    CHECK_THROWS_AS(integrate_alpha_flow(meshes::tetrahedron(), m, bad), Error);
    bad = config(0.0);
    bad.tolerance = -1;
    CHECK_THROWS_AS(integrate_alpha_flow(meshes::tetrahedron(), m, bad), Error);
    CHECK_THROWS_AS(integrate_modified_flow(meshes::tetrahedron(), m, config(0.0)), Error);
    CHECK_THROWS_AS(integrate_a_flow(meshes::tetrahedron(), m, config(0.0)), Error);
    CHECK_THROWS_AS(integrate_alpha_flow(meshes::tetrahedron(), PackingMetric(Vector::Ones(5)), config(0.0)), Error);
}

TEST_CASE("modified flow reaches the prescribed metric")
{
    std::mt19937_64 rng(79);
    const WeightedSurface s = meshes::tetrahedron();
    const double alpha = -1.0;
    const PackingMetric target = testing::random_packing(4, rng, 0.8, 1.25);
    const Vector prescribed = alpha_curvature(s, target, alpha);
    REQUIRE(prescribed.minCoeff() > 0);
    FlowConfig cfg = config(alpha, 500.0);
    cfg.prescribed = prescribed;
    Vector first;
    for (int k = 0; k < 5; ++k) {
        const FlowTrace t = integrate_modified_flow(s, testing::random_packing(4, rng), cfg);
        CHECK(t.verdict == Verdict::Converged);
        CHECK((t.final_radii() - target.radii()).cwiseAbs().maxCoeff() <= 1e-6);
        if (k == 0) first = t.final_radii();
        CHECK((t.final_radii() - first).cwiseAbs().maxCoeff() <= 1e-6);
        for (std::size_t i = 1; i < t.size(); ++i) CHECK(t.potential[i] <= t.potential[i - 1] + 1e-10);
    }
}

TEST_CASE("modified flow with zero target on the torus matches the alpha-flow")
{
    std::mt19937_64 rng(83);
    const WeightedSurface s = meshes::seven_vertex_torus();
    const PackingMetric r0 = testing::random_packing(7, rng);
    FlowConfig cfg = config(1.0, 20.0);
    const FlowTrace a = integrate_alpha_flow(s, r0, cfg);
    cfg.prescribed = Vector::Zero(7);
    const FlowTrace b = integrate_modified_flow(s, r0, cfg);
    REQUIRE(a.size() == b.size());
    CHECK((a.final_radii() - b.final_radii()).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("modified flow is stationary at a constant curvature metric")
{
    FlowConfig cfg = config(1.0, 10.0);
    cfg.prescribed = Vector::Constant(4, pi);
    const FlowTrace t = integrate_modified_flow(meshes::tetrahedron(), PackingMetric(Vector::Ones(4)), cfg);
    CHECK(t.verdict == Verdict::Converged);
    CHECK(t.residual.front() <= 1e-12);
}

TEST_CASE("A-flow stationary states")
{
    FlowConfig cfg = config(0.0, 10.0);
    cfg.area = AreaElement::third();
    FlowTrace t = integrate_a_flow(meshes::tetrahedron(), PackingMetric(Vector::Ones(4)), cfg);
    CHECK(t.verdict == Verdict::Converged);
    CHECK(t.residual.front() <= 1e-12);
    CHECK(std::isnan(t.potential.front()));
    for (const AreaElement& a : {AreaElement::third(), AreaElement::dual(), AreaElement::power(2.0)}) {
        cfg.area = a;
        t = integrate_a_flow(meshes::seven_vertex_torus(), PackingMetric(Vector::Ones(7)), cfg);
        CHECK(t.verdict == Verdict::Converged);
        CHECK(t.residual.front() <= 1e-12);
    }
}

TEST_CASE("A-flow limits satisfy K = s A")
{
    std::mt19937_64 rng(89);
    const WeightedSurface s = meshes::octahedron();
    FlowConfig cfg = config(0.0, 200.0);
    cfg.area = AreaElement::third();
    const FlowTrace t = integrate_a_flow(s, testing::random_packing(6, rng, 0.8, 1.25), cfg);
    REQUIRE(t.verdict == Verdict::Converged);
    const PackingMetric m(t.final_radii());
    const Vector a = area_third(s, m);
    const Vector k = gauss_curvature(s, m);
    CHECK((k - 4 * pi / a.sum() * a).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("Ricci potential")
{
    std::mt19937_64 rng(97);
    for (const WeightedSurface& s : {meshes::tetrahedron(0.4), meshes::seven_vertex_torus()}) {
        const int n = s.vertex_count();
        for (double alpha : {-1.0, 0.0, 1.0, 2.0}) {
            const Vector base = testing::random_packing(n, rng).log_radii();
            const Vector u = testing::random_packing(n, rng).log_radii();
            CHECK(ricci_potential(s, base, base, alpha) == 0.0);

            // Straight segment versus a two-leg path through a random corner.
            const Vector corner = testing::random_packing(n, rng).log_radii();
            const double straight = ricci_potential(s, u, base, alpha);
            const double dogleg = ricci_potential(s, corner, base, alpha) + ricci_potential(s, u, corner, alpha);
            CHECK(std::abs(straight - dogleg) <= 1e-8);

            const Vector g = testing::fd_gradient([&](const Vector& x) { return ricci_potential(s, x, base, alpha); }, u,
                                                  1e-5);
            CHECK((g + alpha_flow_field(s, u, alpha)).cwiseAbs().maxCoeff() <= 1e-5);
        }
    }
}

TEST_CASE("modified potential gradient")
{
    std::mt19937_64 rng(101);
    const WeightedSurface s = meshes::octahedron(0.2);
    const Vector prescribed = Vector::LinSpaced(6, 0.5, 2.5);
    const Vector base = Vector::Zero(6);
    const Vector u = testing::random_packing(6, rng).log_radii();
    const Vector g = testing::fd_gradient(
        [&](const Vector& x) { return modified_potential(s, x, base, -1.0, prescribed); }, u, 1e-5);
    CHECK((g + modified_flow_field(s, u, -1.0, prescribed)).cwiseAbs().maxCoeff() <= 1e-5);
}

TEST_CASE("segment integral")
{
    const VectorField grad = [](const Vector& x) { return Vector(2.0 * x); };
    Vector a = Vector::Zero(3), b(3);
    b << 1, 2, 3;
    CHECK(segment_integral(grad, a, b) == Approx(14.0).epsilon(1e-14));
    CHECK(segment_integral(grad, b, b) == 0.0);
    const VectorField wild = [](const Vector& x) { return Vector::Constant(1, std::sin(1e6 * x[0])); };
    CHECK_THROWS_AS(segment_integral(wild, Vector::Zero(1), Vector::Constant(1, 1.0)), Error);
}

TEST_CASE("convergence report")
{
    FlowTrace t;
    t.times = {0, 1, 2, 3};
    t.residual = {1, 0.1, 0.01, 0.001};
    ConvergenceReport r = check_convergence(t, 1e-2);
    CHECK(r.verdict == Verdict::Converged);
    CHECK(r.rate == Approx(-std::log(10.0)).epsilon(1e-12));

    t.residual = {1, 1, 1, 1};
    r = check_convergence(t, 1e-2);
    CHECK(r.verdict == Verdict::MaxTime);
    CHECK(r.rate == Approx(0.0).margin(1e-14));

    t.verdict = Verdict::Diverging;
    t.residual = {1, 0.1, 0.01, 0.001};
    CHECK(check_convergence(t, 1e-2).verdict == Verdict::Diverging);
}

TEST_CASE("trace CSV")
{
    FlowConfig cfg = config(0.0, 1.0);
    const FlowTrace t = integrate_alpha_flow(meshes::tetrahedron(), PackingMetric(Vector::Ones(4)), cfg);
    std::ostringstream out;
    write_trace_csv(t, out);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,r_1,r_2,r_3,r_4,residual_inf,sum_u,potential");
}
