#include "alphaflow/meshes.hpp"

namespace alphaflow::meshes {

WeightedSurface tetrahedron(double weight)
{
    return build_surface(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}, weight);
}

WeightedSurface octahedron(double weight)
{
    // Poles 0 and 5, equator 1-2-3-4.
    return build_surface(6,
                         {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1}, {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {5, 1, 4}},
                         weight);
}

WeightedSurface seven_vertex_torus(double weight)
{
    std::vector<Face> faces;
    for (int i = 0; i < 7; ++i) {
        faces.push_back({i, (i + 1) % 7, (i + 3) % 7});
        faces.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return build_surface(7, std::move(faces), weight);
}

TetComplex simplex4_boundary()
{
    std::vector<Tet> tets;
    for (int skip = 4; skip >= 0; --skip) {
        Tet t{};
        int k = 0;
        for (int v = 0; v < 5; ++v)
            if (v != skip) t[k++] = v;
        tets.push_back(t);
    }
    return build_tet_complex(5, std::move(tets));
}

TetComplex cross_polytope4_boundary()
{
    // Vertex 2*i is +e_i and 2*i+1 is -e_i; a facet picks one sign per axis.
    std::vector<Tet> tets;
    for (int signs = 0; signs < 16; ++signs) {
        Tet t{};
        for (int axis = 0; axis < 4; ++axis) t[axis] = 2 * axis + (signs >> axis & 1);
        tets.push_back(t);
    }
    return build_tet_complex(8, std::move(tets));
}

} // namespace alphaflow::meshes
