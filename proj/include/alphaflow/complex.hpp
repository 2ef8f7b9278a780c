#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace alphaflow {

/// Unordered vertex pair stored sorted, (a, b) with a < b.
using Edge = std::array<int, 2>;
using Face = std::array<int, 3>;
using Tet = std::array<int, 4>;

Edge make_edge(int a, int b);

/// Per-edge weights keyed by the canonical sorted vertex pair.
using EdgeWeights = std::map<Edge, double>;

/// Closed triangulated surface with an intersection-angle weight on every
/// edge. Immutable after construction.
class WeightedSurface {
public:
    /// Validates the input: simplicial faces, every edge in exactly two faces,
    /// no unused vertex, and one weight in [0, pi/2] per derived edge.
    WeightedSurface(int vertex_count, std::vector<Face> faces, const EdgeWeights& weights);

    int vertex_count() const { return vertex_count_; }
    const std::vector<Face>& faces() const { return faces_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::span<const double> weights() const { return weights_; }
    double weight(int edge_id) const { return weights_[edge_id]; }

    /// Index of edge {a, b}, or -1 if the pair is not an edge.
    int find_edge(int a, int b) const;
    /// Edge id opposite corner c of face f (the edge joining the other two corners).
    int opposite_edge(int f, int c) const { return face_edges_[f][c]; }

    const std::vector<int>& incident_faces(int v) const { return vertex_faces_[v]; }
    const std::vector<int>& neighbors(int v) const { return vertex_neighbors_[v]; }
    int degree(int v) const { return static_cast<int>(vertex_neighbors_[v].size()); }
    int max_degree() const { return max_degree_; }

private:
    int vertex_count_;
    std::vector<Face> faces_;
    std::vector<Edge> edges_;
    std::map<Edge, int> edge_index_;
    std::vector<double> weights_;
    std::vector<std::array<int, 3>> face_edges_;
    std::vector<std::vector<int>> vertex_faces_;
    std::vector<std::vector<int>> vertex_neighbors_;
    int max_degree_ = 0;
};

/// Closed triangulated 3-manifold (combinatorial check only).
class TetComplex {
public:
    TetComplex(int vertex_count, std::vector<Tet> tets);

    int vertex_count() const { return vertex_count_; }
    const std::vector<Tet>& tets() const { return tets_; }
    const std::vector<Face>& triangles() const { return triangles_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& incident_tets(int v) const { return vertex_tets_[v]; }

private:
    int vertex_count_;
    std::vector<Tet> tets_;
    std::vector<Face> triangles_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> vertex_tets_;
};

WeightedSurface build_surface(int vertex_count, std::vector<Face> faces, const EdgeWeights& weights);
/// Convenience overload assigning the same weight to every derived edge.
WeightedSurface build_surface(int vertex_count, std::vector<Face> faces, double uniform_weight);
TetComplex build_tet_complex(int vertex_count, std::vector<Tet> tets);

/// Every unordered vertex pair occurring in the face list, sorted.
std::vector<Edge> derive_edges(std::span<const Face> faces);

int euler_characteristic(const WeightedSurface& surface);
int euler_characteristic(const TetComplex& complex);

/// Subset I of the vertex set {0, ..., n-1}.
class VertexSubset {
public:
    VertexSubset(int universe, std::span<const int> members);
    /// Bit i of mask selects vertex i; requires universe <= 64.
    static VertexSubset from_mask(int universe, std::uint64_t mask);

    int universe() const { return static_cast<int>(in_.size()); }
    int size() const { return static_cast<int>(members_.size()); }
    bool contains(int v) const { return in_[v] != 0; }
    const std::vector<int>& members() const { return members_; }
    bool is_proper_nonempty() const { return size() > 0 && size() < universe(); }

private:
    std::vector<char> in_;
    std::vector<int> members_;
};

/// A pair (e, v) of Lk(I): e avoids I, v lies in I, and e together with v
/// spans a face.
struct LinkPair {
    Edge edge;
    int vertex;

    friend bool operator==(const LinkPair&, const LinkPair&) = default;
};

std::vector<LinkPair> link_pairs(const WeightedSurface& surface, const VertexSubset& subset);

struct InducedSubcomplex {
    std::vector<int> vertices;
    std::vector<Edge> edges;
    std::vector<Face> faces;
    int euler_characteristic = 0;
};

/// Full subcomplex F_I spanned by the vertices of I.
InducedSubcomplex induced_subcomplex(const WeightedSurface& surface, const VertexSubset& subset);

} // namespace alphaflow
