#pragma once

#include "alphaflow/complex.hpp"

namespace alphaflow::meshes {

/// Boundary of a tetrahedron: 4 vertices, 4 faces, chi = 2.
WeightedSurface tetrahedron(double weight = 0.0);
/// Regular octahedron: 6 vertices, 8 faces, chi = 2.
WeightedSurface octahedron(double weight = 0.0);
/// Seven-vertex (Csaszar) torus with faces {i, i+1, i+3} and {i, i+2, i+3} mod 7.
WeightedSurface seven_vertex_torus(double weight = 0.0);

/// Boundary of the 4-simplex: the five facets of {0, ..., 4}.
TetComplex simplex4_boundary();
/// Boundary of the 4-dimensional cross-polytope: 8 vertices, 16 tetrahedra.
TetComplex cross_polytope4_boundary();

} // namespace alphaflow::meshes
