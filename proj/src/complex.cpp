#include "alphaflow/complex.hpp"

#include "alphaflow/error.hpp"

#include <algorithm>
#include <numbers>
#include <set>
#include <string>

namespace alphaflow {

namespace {

std::string describe(std::span<const int> simplex)
{
    std::string s = "{";
    for (std::size_t i = 0; i < simplex.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(simplex[i]);
    }
    return s + "}";
}

template <std::size_t K>
void check_simplex(const std::array<int, K>& s, int vertex_count, ErrorCode degenerate)
{
    for (int v : s) {
        if (v < 0 || v >= vertex_count)
            throw Error(ErrorCode::InvalidArgument,
                        "vertex index " + std::to_string(v) + " out of range in " + describe(s));
    }
    auto sorted = s;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error(degenerate, "repeated vertex in " + describe(s));
}

template <std::size_t K>
std::array<int, K> sorted_copy(std::array<int, K> s)
{
    std::sort(s.begin(), s.end());
    return s;
}

} // namespace

Edge make_edge(int a, int b)
{
    return a < b ? Edge{a, b} : Edge{b, a};
}

std::vector<Edge> derive_edges(std::span<const Face> faces)
{
    std::set<Edge> edges;
    for (const auto& f : faces) {
        edges.insert(make_edge(f[0], f[1]));
        edges.insert(make_edge(f[1], f[2]));
        edges.insert(make_edge(f[0], f[2]));
    }
    return {edges.begin(), edges.end()};
}

WeightedSurface::WeightedSurface(int vertex_count, std::vector<Face> faces, const EdgeWeights& weights)
    : vertex_count_(vertex_count), faces_(std::move(faces))
{
    if (vertex_count_ <= 0) throw Error(ErrorCode::InvalidArgument, "vertex count must be positive");
    if (faces_.empty()) throw Error(ErrorCode::InvalidArgument, "face list is empty");

    std::set<Face> seen;
    for (const auto& f : faces_) {
        check_simplex(f, vertex_count_, ErrorCode::DegenerateFace);
        if (!seen.insert(sorted_copy(f)).second)
            throw Error(ErrorCode::DuplicateFace, "face " + describe(f) + " appears twice");
    }

    edges_ = derive_edges(faces_);
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) edge_index_.emplace(edges_[e], e);

    std::vector<int> face_count(edges_.size(), 0);
    face_edges_.resize(faces_.size());
    vertex_faces_.assign(vertex_count_, {});
    for (int f = 0; f < static_cast<int>(faces_.size()); ++f) {
        const auto& face = faces_[f];
        for (int c = 0; c < 3; ++c) {
            int e = edge_index_.at(make_edge(face[(c + 1) % 3], face[(c + 2) % 3]));
            face_edges_[f][c] = e;
            ++face_count[e];
            vertex_faces_[face[c]].push_back(f);
        }
    }
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (face_count[e] != 2)
            throw Error(ErrorCode::NonManifold, "edge " + describe(edges_[e]) + " lies in " +
                                                    std::to_string(face_count[e]) + " faces");
    }

    vertex_neighbors_.assign(vertex_count_, {});
    for (const auto& e : edges_) {
        vertex_neighbors_[e[0]].push_back(e[1]);
        vertex_neighbors_[e[1]].push_back(e[0]);
    }
    for (int v = 0; v < vertex_count_; ++v) {
        if (vertex_faces_[v].empty())
            throw Error(ErrorCode::NonManifold, "vertex " + std::to_string(v) + " lies in no face");
        max_degree_ = std::max(max_degree_, degree(v));
    }

    weights_.assign(edges_.size(), 0.0);
    std::vector<char> assigned(edges_.size(), 0);
    for (const auto& [key, value] : weights) {
        auto it = edge_index_.find(make_edge(key[0], key[1]));
        if (it == edge_index_.end())
            throw Error(ErrorCode::BadWeight, "weight given for non-edge " + describe(key));
        if (assigned[it->second])
            throw Error(ErrorCode::BadWeight, "edge " + describe(key) + " weighted twice");
        if (!(value >= 0.0 && value <= std::numbers::pi / 2))
            throw Error(ErrorCode::BadWeight,
                        "weight " + std::to_string(value) + " on edge " + describe(key) + " outside [0, pi/2]");
        weights_[it->second] = value;
        assigned[it->second] = 1;
    }
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (!assigned[e]) throw Error(ErrorCode::BadWeight, "no weight for edge " + describe(edges_[e]));
    }
}

int WeightedSurface::find_edge(int a, int b) const
{
    auto it = edge_index_.find(make_edge(a, b));
    return it == edge_index_.end() ? -1 : it->second;
}

TetComplex::TetComplex(int vertex_count, std::vector<Tet> tets)
    : vertex_count_(vertex_count), tets_(std::move(tets))
{
    if (vertex_count_ <= 0) throw Error(ErrorCode::InvalidArgument, "vertex count must be positive");
    if (tets_.empty()) throw Error(ErrorCode::InvalidArgument, "tetrahedron list is empty");

    std::set<Tet> seen;
    std::map<Face, int> triangle_count;
    std::set<Edge> edges;
    vertex_tets_.assign(vertex_count_, {});
    for (int t = 0; t < static_cast<int>(tets_.size()); ++t) {
        const auto& tet = tets_[t];
        check_simplex(tet, vertex_count_, ErrorCode::DegenerateTet);
        const Tet s = sorted_copy(tet);
        if (!seen.insert(s).second)
            throw Error(ErrorCode::DuplicateTet, "tetrahedron " + describe(tet) + " appears twice");
        for (int skip = 0; skip < 4; ++skip) {
            Face tri{};
            int k = 0;
            for (int c = 0; c < 4; ++c)
                if (c != skip) tri[k++] = s[c];
            ++triangle_count[tri];
        }
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) edges.insert(make_edge(s[a], s[b]));
        for (int v : tet) vertex_tets_[v].push_back(t);
    }
    for (const auto& [tri, count] : triangle_count) {
        if (count != 2)
            throw Error(ErrorCode::NonManifold,
                        "triangle " + describe(tri) + " lies in " + std::to_string(count) + " tetrahedra");
        triangles_.push_back(tri);
    }
    for (int v = 0; v < vertex_count_; ++v) {
        if (vertex_tets_[v].empty())
            throw Error(ErrorCode::NonManifold, "vertex " + std::to_string(v) + " lies in no tetrahedron");
    }
    edges_.assign(edges.begin(), edges.end());
}

WeightedSurface build_surface(int vertex_count, std::vector<Face> faces, const EdgeWeights& weights)
{
    return WeightedSurface(vertex_count, std::move(faces), weights);
}

WeightedSurface build_surface(int vertex_count, std::vector<Face> faces, double uniform_weight)
{
    EdgeWeights weights;
    for (const auto& e : derive_edges(faces)) weights.emplace(e, uniform_weight);
    return WeightedSurface(vertex_count, std::move(faces), weights);
}

TetComplex build_tet_complex(int vertex_count, std::vector<Tet> tets)
{
    return TetComplex(vertex_count, std::move(tets));
}

int euler_characteristic(const WeightedSurface& surface)
{
    return surface.vertex_count() - static_cast<int>(surface.edges().size()) +
           static_cast<int>(surface.faces().size());
}

int euler_characteristic(const TetComplex& complex)
{
    return complex.vertex_count() - static_cast<int>(complex.edges().size()) +
           static_cast<int>(complex.triangles().size()) - static_cast<int>(complex.tets().size());
}

VertexSubset::VertexSubset(int universe, std::span<const int> members) : in_(universe, 0)
{
    if (universe <= 0) throw Error(ErrorCode::InvalidArgument, "subset universe must be nonempty");
    for (int v : members) {
        if (v < 0 || v >= universe)
            throw Error(ErrorCode::InvalidArgument, "subset member " + std::to_string(v) + " out of range");
        in_[v] = 1;
    }
    for (int v = 0; v < universe; ++v)
        if (in_[v]) members_.push_back(v);
}

VertexSubset VertexSubset::from_mask(int universe, std::uint64_t mask)
{
    if (universe > 64) throw Error(ErrorCode::InvalidArgument, "bitmask subsets hold at most 64 vertices");
    std::vector<int> members;
    for (int v = 0; v < universe; ++v)
        if (mask >> v & 1u) members.push_back(v);
    return VertexSubset(universe, members);
}

std::vector<LinkPair> link_pairs(const WeightedSurface& surface, const VertexSubset& subset)
{
    if (subset.universe() != surface.vertex_count())
        throw Error(ErrorCode::InvalidArgument, "subset universe does not match the surface");
    if (!subset.is_proper_nonempty())
        throw Error(ErrorCode::EmptyOrFullSubset, "link pairs need a nonempty proper subset");

    // A face contributes a pair exactly when one of its corners is in I.
    std::vector<LinkPair> pairs;
    for (const auto& f : surface.faces()) {
        int inside = 0, corner = -1;
        for (int c = 0; c < 3; ++c) {
            if (subset.contains(f[c])) {
                ++inside;
                corner = c;
            }
        }
        if (inside == 1)
            pairs.push_back({make_edge(f[(corner + 1) % 3], f[(corner + 2) % 3]), f[corner]});
    }
    std::sort(pairs.begin(), pairs.end(), [](const LinkPair& a, const LinkPair& b) {
        return a.vertex != b.vertex ? a.vertex < b.vertex : a.edge < b.edge;
    });
    return pairs;
}

InducedSubcomplex induced_subcomplex(const WeightedSurface& surface, const VertexSubset& subset)
{
    if (subset.universe() != surface.vertex_count())
        throw Error(ErrorCode::InvalidArgument, "subset universe does not match the surface");
    if (subset.size() == 0) throw Error(ErrorCode::EmptySubset, "induced subcomplex of the empty set");

    InducedSubcomplex sub;
    sub.vertices = subset.members();
    for (const auto& e : surface.edges())
        if (subset.contains(e[0]) && subset.contains(e[1])) sub.edges.push_back(e);
    for (const auto& f : surface.faces())
        if (subset.contains(f[0]) && subset.contains(f[1]) && subset.contains(f[2])) sub.faces.push_back(f);
    sub.euler_characteristic = static_cast<int>(sub.vertices.size()) - static_cast<int>(sub.edges.size()) +
                               static_cast<int>(sub.faces.size());
    return sub;
}

} // namespace alphaflow
