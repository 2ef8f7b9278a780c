#include "alphaflow/mesh_io.hpp"

#include "alphaflow/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace alphaflow {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what)
{
    throw Error(ErrorCode::ParseError, what);
}

template <std::size_t K>
std::vector<std::array<int, K>> read_cells(const json& j, const char* key)
{
    if (!j.contains(key) || !j[key].is_array()) fail(std::string("missing array '") + key + "'");
    std::vector<std::array<int, K>> cells;
    for (const json& cell : j[key]) {
        if (!cell.is_array() || cell.size() != K)
            fail(std::string("every entry of '") + key + "' needs " + std::to_string(K) + " indices");
        std::array<int, K> c{};
        for (std::size_t i = 0; i < K; ++i) {
            if (!cell[i].is_number_integer()) fail(std::string("non-integer index in '") + key + "'");
            c[i] = cell[i].get<int>();
        }
        cells.push_back(c);
    }
    return cells;
}

Edge parse_edge_key(const std::string& key)
{
    const auto dash = key.find('-');
    if (dash == std::string::npos) fail("weight key '" + key + "' is not of the form i-j");
    try {
        std::size_t used_a = 0, used_b = 0;
        const std::string a = key.substr(0, dash), b = key.substr(dash + 1);
        const int i = std::stoi(a, &used_a), k = std::stoi(b, &used_b);
        if (used_a != a.size() || used_b != b.size()) fail("weight key '" + key + "' is not of the form i-j");
        if (!(i < k)) fail("weight key '" + key + "' must have i < j");
        return {i, k};
    } catch (const std::logic_error&) {
        fail("weight key '" + key + "' is not of the form i-j");
    }
}

Vector read_numbers(const json& arr, const char* what)
{
    if (!arr.is_array()) fail(std::string(what) + " must be an array");
    Vector v(static_cast<Eigen::Index>(arr.size()));
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number()) fail(std::string(what) + " must contain numbers only");
        v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
    }
    return v;
}

std::string slurp(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) fail("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

bool operator==(const MeshDocument& a, const MeshDocument& b)
{
    if (a.dim != b.dim || a.vertex_count != b.vertex_count || a.faces != b.faces || a.tets != b.tets ||
        a.weights != b.weights || a.radii.has_value() != b.radii.has_value())
        return false;
    return !a.radii || *a.radii == *b.radii;
}

MeshDocument parse_mesh(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) fail("mesh document must be a JSON object");
    if (!j.contains("schema") || j["schema"] != kMeshSchema)
        fail("missing or unsupported schema (expected \"" + std::string(kMeshSchema) + "\")");
    if (!j.contains("dim") || !j["dim"].is_number_integer()) fail("missing integer 'dim'");
    if (!j.contains("vertex_count") || !j["vertex_count"].is_number_integer()) fail("missing integer 'vertex_count'");

    MeshDocument doc;
    doc.dim = j["dim"].get<int>();
    doc.vertex_count = j["vertex_count"].get<int>();
    if (doc.vertex_count < 1) fail("vertex_count must be positive");
    if (doc.dim == 2) {
        doc.faces = read_cells<3>(j, "faces");
        if (j.contains("tets")) fail("a 2D mesh cannot list tets");
        if (j.contains("weights")) {
            if (!j["weights"].is_object()) fail("'weights' must be an object");
            for (const auto& [key, value] : j["weights"].items()) {
                if (!value.is_number()) fail("weight '" + key + "' is not a number");
                doc.weights[parse_edge_key(key)] = value.get<double>();
            }
        }
    } else if (doc.dim == 3) {
        doc.tets = read_cells<4>(j, "tets");
        if (j.contains("faces")) fail("a 3D mesh lists tets, not faces");
        if (j.contains("weights")) fail("weights are only defined for 2D meshes");
    } else {
        fail("dim must be 2 or 3");
    }
    if (j.contains("radii")) {
        doc.radii = read_numbers(j["radii"], "radii");
        if (doc.radii->size() != doc.vertex_count) fail("radii length does not match vertex_count");
    }
    return doc;
}

MeshDocument read_mesh(const std::filesystem::path& path)
{
    return parse_mesh(slurp(path));
}

std::string write_mesh(const MeshDocument& doc)
{
    json j;
    j["schema"] = kMeshSchema;
    j["dim"] = doc.dim;
    j["vertex_count"] = doc.vertex_count;
    if (doc.dim == 2) {
        j["faces"] = doc.faces;
        json w = json::object();
        for (const auto& [edge, phi] : doc.weights) w[std::to_string(edge[0]) + "-" + std::to_string(edge[1])] = phi;
        j["weights"] = w;
    } else {
        j["tets"] = doc.tets;
    }
    if (doc.radii) j["radii"] = std::vector<double>(doc.radii->begin(), doc.radii->end());
    return j.dump(2) + "\n";
}

MeshDocument to_document(const WeightedSurface& surface, std::optional<Vector> radii)
{
    MeshDocument doc;
    doc.dim = 2;
    doc.vertex_count = surface.vertex_count();
    doc.faces = surface.faces();
    for (int e = 0; e < static_cast<int>(surface.edges().size()); ++e) doc.weights[surface.edges()[e]] = surface.weight(e);
    doc.radii = std::move(radii);
    return doc;
}

MeshDocument to_document(const TetComplex& complex, std::optional<Vector> radii)
{
    MeshDocument doc;
    doc.dim = 3;
    doc.vertex_count = complex.vertex_count();
    doc.tets = complex.tets();
    doc.radii = std::move(radii);
    return doc;
}

WeightedSurface surface_from(const MeshDocument& doc)
{
    if (doc.dim != 2) throw Error(ErrorCode::ConfigError, "expected a 2D mesh");
    if (doc.weights.empty()) return build_surface(doc.vertex_count, doc.faces, 0.0);
    return build_surface(doc.vertex_count, doc.faces, doc.weights);
}

TetComplex complex_from(const MeshDocument& doc)
{
    if (doc.dim != 3) throw Error(ErrorCode::ConfigError, "expected a 3D mesh");
    return build_tet_complex(doc.vertex_count, doc.tets);
}

Vector radii_or_ones(const MeshDocument& doc)
{
    return doc.radii ? *doc.radii : Vector::Ones(doc.vertex_count);
}

Vector parse_vector(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    if (j.is_object()) {
        if (!j.contains("values")) fail("vector object needs a 'values' array");
        return read_numbers(j["values"], "values");
    }
    return read_numbers(j, "vector");
}

Vector read_vector(const std::filesystem::path& path)
{
    return parse_vector(slurp(path));
}

} // namespace alphaflow
