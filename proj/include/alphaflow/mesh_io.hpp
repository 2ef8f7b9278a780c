#pragma once

#include "alphaflow/complex.hpp"
#include "alphaflow/types.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace alphaflow {

inline constexpr std::string_view kMeshSchema = "alphaflow-mesh/1";

/// On-disk mesh description (JSON). Vertex indices are 0-based; 2D weights
/// are keyed "i-j" with i < j and default to 0 when the object is omitted.
struct MeshDocument {
    int dim = 2;
    int vertex_count = 0;
    std::vector<Face> faces;
    std::vector<Tet> tets;
    EdgeWeights weights;
    std::optional<Vector> radii;

    friend bool operator==(const MeshDocument&, const MeshDocument&);
};

/// Throws ParseError on malformed JSON or a schema violation.
MeshDocument parse_mesh(std::string_view text);
MeshDocument read_mesh(const std::filesystem::path& path);
std::string write_mesh(const MeshDocument& doc);

MeshDocument to_document(const WeightedSurface& surface, std::optional<Vector> radii = std::nullopt);
MeshDocument to_document(const TetComplex& complex, std::optional<Vector> radii = std::nullopt);

/// Validating conversions; combinatorial errors propagate from the builders.
WeightedSurface surface_from(const MeshDocument& doc);
TetComplex complex_from(const MeshDocument& doc);

/// Radii from the document, or all ones when absent.
Vector radii_or_ones(const MeshDocument& doc);

/// A JSON array of numbers, or an object with a "values" array.
Vector parse_vector(std::string_view text);
Vector read_vector(const std::filesystem::path& path);

} // namespace alphaflow
