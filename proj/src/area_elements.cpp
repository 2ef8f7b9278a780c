#include "alphaflow/area_elements.hpp"

#include "alphaflow/error.hpp"

#include <cmath>
#include <string>

namespace alphaflow {

namespace {

struct Point {
    double x, y;
};

double shoelace(std::initializer_list<Point> poly)
{
    double twice = 0.0;
    const Point* prev = poly.end() - 1;
    for (const Point& p : poly) {
        twice += prev->x * p.y - p.x * prev->y;
        prev = &p;
    }
    return 0.5 * twice;
}

Point along(Point a, Point b, double t)
{
    return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

} // namespace

AreaElement AreaElement::parse(std::string_view spec)
{
    if (spec == "third") return third();
    if (spec == "dual") return dual();
    if (spec.starts_with("power:")) {
        const std::string number(spec.substr(6));
        std::size_t used = 0;
        double alpha = 0.0;
        try {
            alpha = std::stod(number, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == number.size() && used > 0 && std::isfinite(alpha)) return power(alpha);
    }
    throw Error(ErrorCode::ConfigError, "unknown area element '" + std::string(spec) + "'");
}

std::string AreaElement::describe() const
{
    switch (kind_) {
    case Kind::PowerRadius: return "power:" + std::to_string(alpha_);
    case Kind::ThirdArea: return "third";
    case Kind::DualCell: return "dual";
    }
    return "unknown";
}

Vector AreaElement::evaluate(const WeightedSurface& surface, const PackingMetric& metric) const
{
    Vector a;
    switch (kind_) {
    case Kind::PowerRadius: a = metric.radii().array().pow(alpha_).matrix(); break;
    case Kind::ThirdArea: a = area_third(surface, metric); break;
    case Kind::DualCell: a = area_dual_cell(surface, metric); break;
    }
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (!(a[i] > 0.0) || !std::isfinite(a[i]))
            throw Error(ErrorCode::AreaElementFailure,
                        describe() + " area element at vertex " + std::to_string(i) + " is " + std::to_string(a[i]));
    }
    return a;
}

double triangle_area(double a, double b, double c)
{
    const double p = (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c);
    return 0.25 * std::sqrt(std::max(p, 0.0));
}

double total_area(const WeightedSurface& surface, const PackingMetric& metric)
{
    return area_third(surface, metric).sum();
}

Vector area_third(const WeightedSurface& surface, const PackingMetric& metric)
{
    const Vector l = edge_lengths(surface, metric);
    Vector a = Vector::Zero(surface.vertex_count());
    for (int f = 0; f < static_cast<int>(surface.faces().size()); ++f) {
        const double area = triangle_area(l[surface.opposite_edge(f, 0)], l[surface.opposite_edge(f, 1)],
                                          l[surface.opposite_edge(f, 2)]);
        for (int v : surface.faces()[f]) a[v] += area / 3.0;
    }
    return a;
}

std::array<double, 3> face_dual_cells(const std::array<double, 3>& r, const std::array<double, 3>& phi)
{
    std::array<double, 3> l{};
    for (int c = 0; c < 3; ++c) l[c] = circle_packing_length(r[(c + 1) % 3], r[(c + 2) % 3], phi[c]);

    // Corner 0 at the origin, corner 1 on the positive x axis, corner 2 above.
    const double area = triangle_area(l[0], l[1], l[2]);
    if (!(area > 0.0)) throw Error(ErrorCode::DegenerateTriangle, "face has zero area");
    const Point p0{0.0, 0.0};
    const Point p1{l[2], 0.0};
    const Point p2{(l[1] * l[1] + l[2] * l[2] - l[0] * l[0]) / (2.0 * l[2]), 2.0 * area / l[2]};
    const std::array<Point, 3> p{p0, p1, p2};

    // Radical center: equal power with respect to all three circles.
    // 2 O . p1 = |p1|^2 + r0^2 - r1^2 and 2 O . p2 = |p2|^2 + r0^2 - r2^2.
    const double b1 = p1.x * p1.x + r[0] * r[0] - r[1] * r[1];
    const double b2 = p2.x * p2.x + p2.y * p2.y + r[0] * r[0] - r[2] * r[2];
    const double ox = b1 / (2.0 * p1.x);
    const Point o{ox, (b2 - 2.0 * ox * p2.x) / (2.0 * p2.y)};

    // Barycentric coordinates of O (sub-triangle areas over total area).
    const std::array<double, 3> bary{shoelace({o, p1, p2}) / area, shoelace({p0, o, p2}) / area,
                                     shoelace({p0, p1, o}) / area};
    for (double b : bary) {
        if (b < -1e-12)
            throw Error(ErrorCode::DualPointOutside, "radical center lies outside the face (barycentric " +
                                                         std::to_string(b) + ")");
    }

    // Foot of the radical line of corners a, b on segment ab, at distance d from a.
    auto foot = [&](int a, int b) {
        const int opposite = 3 - a - b;
        const double len = l[opposite];
        const double d = (len * len + r[a] * r[a] - r[b] * r[b]) / (2.0 * len);
        return along(p[a], p[b], d / len);
    };

    std::array<double, 3> cells{};
    for (int c = 0; c < 3; ++c) {
        const int next = (c + 1) % 3, prev = (c + 2) % 3;
        cells[c] = shoelace({p[c], foot(c, next), o, foot(c, prev)});
    }
    return cells;
}

Vector area_dual_cell(const WeightedSurface& surface, const PackingMetric& metric)
{
    if (metric.size() != surface.vertex_count())
        throw Error(ErrorCode::InvalidArgument, "metric size does not match the surface");
    Vector a = Vector::Zero(surface.vertex_count());
    for (int f = 0; f < static_cast<int>(surface.faces().size()); ++f) {
        const Face& face = surface.faces()[f];
        const std::array<double, 3> r{metric[face[0]], metric[face[1]], metric[face[2]]};
        const std::array<double, 3> phi{surface.weight(surface.opposite_edge(f, 0)),
                                        surface.weight(surface.opposite_edge(f, 1)),
                                        surface.weight(surface.opposite_edge(f, 2))};
        const auto cells = face_dual_cells(r, phi);
        for (int c = 0; c < 3; ++c) a[face[c]] += cells[c];
    }
    return a;
}

} // namespace alphaflow
