#include "alphaflow/area_elements.hpp"
#include "alphaflow/error.hpp"
#include "alphaflow/flow2d.hpp"
#include "alphaflow/meshes.hpp"

#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <numbers>

using namespace alphaflow;
using Catch::Approx;

namespace {

constexpr double pi = std::numbers::pi;

ErrorCode code_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an alphaflow::Error");
    return ErrorCode::InvalidArgument;
}

} // namespace

TEST_CASE("regular tetrahedron area elements")
{
    const WeightedSurface s = meshes::tetrahedron();
    const PackingMetric m(Vector::Ones(4));
    for (double a : AreaElement::third().evaluate(s, m)) CHECK(a == Approx(std::sqrt(3.0)).margin(1e-14));
    for (double a : AreaElement::dual().evaluate(s, m)) CHECK(a == Approx(std::sqrt(3.0)).margin(1e-14));
    for (double a : AreaElement::power(2.0).evaluate(s, m)) CHECK(a == 1.0);
    CHECK(total_area(s, m) == Approx(4 * std::sqrt(3.0)).margin(1e-13));
}

TEST_CASE("Heron area")
{
    CHECK(triangle_area(3, 4, 5) == Approx(6.0).margin(1e-14));
    CHECK(triangle_area(2, 2, 2) == Approx(std::sqrt(3.0)).margin(1e-14));
    CHECK(triangle_area(1, 1, 2) == 0.0);
}

TEST_CASE("tangent dual cells are kites around the incenter")
{
    // With zero weights the radical center is the incenter and the feet are
    // the tangency points, so corner c contributes r_c times the inradius.
    std::mt19937_64 rng(47);
    for (int k = 0; k < 200; ++k) {
        const Vector r = testing::random_radii(3, rng, 0.1, 10.0);
        const std::array<double, 3> rr{r[0], r[1], r[2]};
        const auto cells = face_dual_cells(rr, {0.0, 0.0, 0.0});
        const double area = triangle_area(r[1] + r[2], r[0] + r[2], r[0] + r[1]);
        const double inradius = area / (r[0] + r[1] + r[2]);
        for (int c = 0; c < 3; ++c) CHECK(cells[c] == Approx(rr[c] * inradius).epsilon(1e-12));
    }
    const auto cells = face_dual_cells({1, 1, 2}, {0, 0, 0});
    const double inradius = triangle_area(3, 3, 2) / 4.0;
    CHECK(cells[0] == Approx(inradius).epsilon(1e-13));
    CHECK(cells[2] == Approx(2 * inradius).epsilon(1e-13));
}

TEST_CASE("dual cells partition every face")
{
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> w(0.0, pi / 2);
    for (int k = 0; k < 200; ++k) {
        const Vector r = testing::random_radii(3, rng);
        const std::array<double, 3> rr{r[0], r[1], r[2]}, phi{w(rng), w(rng), w(rng)};
        const auto cells = face_dual_cells(rr, phi);
        for (double c : cells) CHECK(c >= -1e-12);
        const double area = triangle_area(circle_packing_length(rr[1], rr[2], phi[0]),
                                          circle_packing_length(rr[0], rr[2], phi[1]),
                                          circle_packing_length(rr[0], rr[1], phi[2]));
        CHECK(cells[0] + cells[1] + cells[2] == Approx(area).epsilon(1e-12));
    }
}

TEST_CASE("area elements sum to the total area")
{
    std::mt19937_64 rng(59);
    for (const WeightedSurface& s : {meshes::octahedron(), meshes::seven_vertex_torus()}) {
        for (int k = 0; k < 20; ++k) {
            const PackingMetric m = testing::random_packing(s.vertex_count(), rng);
            const double total = total_area(s, m);
            CHECK(area_third(s, m).sum() == Approx(total).epsilon(1e-12));
            CHECK(area_dual_cell(s, m).sum() == Approx(total).epsilon(1e-12));
        }
    }
}

TEST_CASE("radical center outside the face")
{
    // Unreachable for weights in [0, pi/2]; obtuse weights on the two long edges push it out.
    CHECK(code_of([] { face_dual_cells({1.0, 0.1, 0.1}, {0.0, 2.9, 2.9}); }) == ErrorCode::DualPointOutside);
}

TEST_CASE("power radius A-flow field equals the alpha-flow field")
{
    std::mt19937_64 rng(61);
    const WeightedSurface s = meshes::octahedron(0.5);
    for (double alpha : {-1.0, 0.0, 1.5}) {
        const Vector u = testing::random_packing(6, rng).log_radii();
        const Vector a = a_flow_field(s, u, AreaElement::power(alpha));
        const Vector b = alpha_flow_field(s, u, alpha);
        CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("area element specs")
{
    CHECK(AreaElement::parse("third").kind() == AreaElement::Kind::ThirdArea);
    CHECK(AreaElement::parse("dual").kind() == AreaElement::Kind::DualCell);
    const AreaElement p = AreaElement::parse("power:-0.5");
    CHECK(p.kind() == AreaElement::Kind::PowerRadius);
    CHECK(p.alpha() == -0.5);
    for (const char* bad : {"", "power:", "power:x", "power:1e999", "thirds", "power:1.0z"})
        CHECK(code_of([bad] { AreaElement::parse(bad); }) == ErrorCode::ConfigError);
}
