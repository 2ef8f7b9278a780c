#pragma once

#include "alphaflow/complex.hpp"
#include "alphaflow/packing2d.hpp"
#include "alphaflow/types.hpp"

#include <array>
#include <string>
#include <string_view>

namespace alphaflow {

/// Per-vertex area element A_i used by the A-flow.
class AreaElement {
public:
    enum class Kind {
        PowerRadius,  ///< A_i = r_i^alpha
        ThirdArea,    ///< a third of the area of every incident face
        DualCell,     ///< area of the dual cell cut out by the radical centers
        // Voronoi cells of a Delaunay retriangulation would slot in here.
    };

    static AreaElement power(double alpha) { return AreaElement(Kind::PowerRadius, alpha); }
    static AreaElement third() { return AreaElement(Kind::ThirdArea, 0.0); }
    static AreaElement dual() { return AreaElement(Kind::DualCell, 0.0); }
    /// Parses "power:<alpha>", "third" or "dual".
    static AreaElement parse(std::string_view spec);

    Kind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    std::string describe() const;

    /// Evaluates A for the metric; throws AreaElementFailure if any A_i <= 0.
    Vector evaluate(const WeightedSurface& surface, const PackingMetric& metric) const;

private:
    AreaElement(Kind kind, double alpha) : kind_(kind), alpha_(alpha) {}

    Kind kind_;
    double alpha_;
};

/// Area of the triangle with the given side lengths (Heron).
double triangle_area(double a, double b, double c);

/// Total area of the realized surface.
double total_area(const WeightedSurface& surface, const PackingMetric& metric);

/// A_i = sum over faces containing i of Area / 3.
Vector area_third(const WeightedSurface& surface, const PackingMetric& metric);

/// Corner cells of one face with corner radii r and weights phi[c] on the
/// edge opposite corner c. Entry c is the area of the quadrilateral
/// (corner c, radical foot on one incident edge, radical center, radical foot
/// on the other). Throws DualPointOutside when the radical center leaves the
/// triangle.
std::array<double, 3> face_dual_cells(const std::array<double, 3>& r, const std::array<double, 3>& phi);

/// A_i = area of the dual cell of i, summed from the corner cells.
Vector area_dual_cell(const WeightedSurface& surface, const PackingMetric& metric);

} // namespace alphaflow
