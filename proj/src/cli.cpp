#include "alphaflow/cli.hpp"

#include "alphaflow/area_elements.hpp"
#include "alphaflow/error.hpp"
#include "alphaflow/flow2d.hpp"
#include "alphaflow/flow3d.hpp"
#include "alphaflow/mesh_io.hpp"
#include "alphaflow/meshes.hpp"
#include "alphaflow/packing2d.hpp"
#include "alphaflow/packing3d.hpp"
#include "alphaflow/thurston.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

namespace alphaflow::cli {

using nlohmann::json;

namespace {

json to_json(const Vector& v)
{
    return std::vector<double>(v.begin(), v.end());
}

void emit(std::ostream& out, const json& j)
{
    out << j.dump(2) << '\n';
}

int exit_code_for(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InadmissibleMetric: return kInadmissible;
    case ErrorCode::TooManyVertices: return kTooManyVertices;
    case ErrorCode::NotConstantCurvature: return kNotConstantCurvature;
    case ErrorCode::DegenerateTriangle:
    case ErrorCode::AreaElementFailure:
    case ErrorCode::DualPointOutside:
    case ErrorCode::NotPSD:
    case ErrorCode::KernelMismatch:
    case ErrorCode::EvaluationFailure:
    case ErrorCode::QuadratureFailure:
    case ErrorCode::FDNearBoundary:
    case ErrorCode::DegenerateTet: return kFail;
    default: return kUsage;
    }
}

int exit_code_for(Verdict verdict)
{
    switch (verdict) {
    case Verdict::Converged: return kOk;
    case Verdict::MaxTime: return kMaxTime;
    case Verdict::Diverging:
    case Verdict::LeftAdmissibleRegion: return kDiverging;
    }
    return kFail;
}

std::vector<int> members_of(std::uint64_t mask)
{
    std::vector<int> m;
    for (int i = 0; mask != 0; ++i, mask >>= 1)
        if (mask & 1) m.push_back(i);
    return m;
}

// ---- curvature -------------------------------------------------------------

struct CurvatureArgs {
    std::string mesh;
    double alpha = 0.0;
};

int cmd_curvature(const CurvatureArgs& a, std::ostream& out)
{
    const MeshDocument doc = read_mesh(a.mesh);
    const Vector r = radii_or_ones(doc);
    json j;
    j["dim"] = doc.dim;
    j["alpha"] = a.alpha;
    if (doc.dim == 2) {
        const WeightedSurface surface = surface_from(doc);
        const PackingMetric metric(r);
        const Vector k = gauss_curvature(surface, metric);
        const double expected = 2.0 * std::numbers::pi * euler_characteristic(surface);
        j["K"] = to_json(k);
        j["R"] = to_json(alpha_curvature(surface, metric, a.alpha));
        j["s_alpha"] = s_alpha_2d(surface, metric, a.alpha);
        j["euler_characteristic"] = euler_characteristic(surface);
        j["gauss_bonnet"] = {{"sum_K", k.sum()},
                             {"expected", expected},
                             {"residual", k.sum() - expected},
                             {"ok", std::abs(k.sum() - expected) <= 1e-9}};
        emit(out, j);
        return kOk;
    }
    const TetComplex complex = complex_from(doc);
    const SpherePackingMetric metric(r);
    const auto adm = admissible_metric_check(complex, metric);
    j["admissible"] = adm.admissible;
    j["offending_tets"] = adm.offending_tets;
    if (!adm.admissible) {
        emit(out, j);
        return kInadmissible;
    }
    const Vector k = cr_curvature(complex, metric);
    j["K"] = to_json(k);
    j["R"] = to_json(alpha_curvature_3d(complex, metric, a.alpha));
    j["s_alpha"] = s_alpha_3d(complex, metric, a.alpha);
    j["S"] = k.dot(r);
    emit(out, j);
    return kOk;
}

// ---- flow ------------------------------------------------------------------

struct FlowArgs {
    std::string mesh;
    double alpha = 0.0;
    double t_end = 100.0;
    double tol = 1e-10;
    std::string area;
    std::string prescribed;
    std::string out_csv;
    bool gradient = false;
    long max_steps = 1'000'000;
};

json trace_summary(const FlowTrace& trace)
{
    return {{"verdict", std::string(to_string(trace.verdict))},
            {"rate", trace.rate},
            {"final_time", trace.times.back()},
            {"final_residual", trace.final_residual()},
            {"normalization_factor", trace.normalization_factor},
            {"conserved_label", trace.conserved_label},
            {"conserved_drift", trace.conserved_drift()},
            {"accepted_steps", trace.accepted_steps},
            {"rejected_steps", trace.rejected_steps},
            {"final_radii", to_json(trace.final_radii())}};
}

int cmd_flow(const FlowArgs& a, std::ostream& out)
{
    const MeshDocument doc = read_mesh(a.mesh);
    const Vector r0 = radii_or_ones(doc);
    FlowTrace trace;
    json j;
    if (doc.dim == 2) {
        if (a.gradient) throw Error(ErrorCode::ConfigError, "--gradient applies to 3D meshes only");
        if (!a.area.empty() && !a.prescribed.empty())
            throw Error(ErrorCode::ConfigError, "--area and --prescribed are mutually exclusive");
        const WeightedSurface surface = surface_from(doc);
        FlowConfig cfg;
        cfg.alpha = a.alpha;
        cfg.t_end = a.t_end;
        cfg.tolerance = a.tol;
        cfg.max_steps = a.max_steps;
        if (!a.area.empty()) {
            cfg.area = AreaElement::parse(a.area);
            j["flow"] = "area:" + cfg.area->describe();
            trace = integrate_a_flow(surface, PackingMetric(r0), cfg);
        } else if (!a.prescribed.empty()) {
            cfg.prescribed = read_vector(a.prescribed);
            j["flow"] = "modified";
            trace = integrate_modified_flow(surface, PackingMetric(r0), cfg);
        } else {
            j["flow"] = "alpha";
            trace = integrate_alpha_flow(surface, PackingMetric(r0), cfg);
        }
    } else {
        if (!a.area.empty()) throw Error(ErrorCode::ConfigError, "--area applies to 2D meshes only");
        if (!a.prescribed.empty()) throw Error(ErrorCode::ConfigError, "--prescribed applies to 2D meshes only");
        const TetComplex complex = complex_from(doc);
        Flow3dConfig cfg;
        cfg.alpha = a.alpha;
        cfg.t_end = a.t_end;
        cfg.tolerance = a.tol;
        cfg.max_steps = a.max_steps;
        j["flow"] = a.gradient ? "gradient" : "alpha";
        trace = a.gradient ? integrate_gradient_flow_3d(complex, SpherePackingMetric(r0), cfg)
                           : integrate_alpha_flow_3d(complex, SpherePackingMetric(r0), cfg);
    }
    if (!a.out_csv.empty()) {
        std::ofstream csv(a.out_csv);
        if (!csv) throw Error(ErrorCode::ConfigError, "cannot write '" + a.out_csv + "'");
        write_trace_csv(trace, csv);
    }
    j["dim"] = doc.dim;
    j["alpha"] = a.alpha;
    j.update(trace_summary(trace));
    emit(out, j);
    return exit_code_for(trace.verdict);
}

// ---- check -----------------------------------------------------------------

struct CheckArgs {
    std::string mesh;
    std::string mode = "thurston";
    double alpha = 0.0;
    std::string rstar;
    std::string x;
    int cap = 22;
    int workers = 1;
    bool short_circuit = false;
};

int cmd_check(const CheckArgs& a, std::ostream& out)
{
    const MeshDocument doc = read_mesh(a.mesh);
    if (doc.dim != 2) throw Error(ErrorCode::ConfigError, "subset checks apply to 2D meshes only");
    const WeightedSurface surface = surface_from(doc);
    CheckOptions options;
    options.vertex_cap = a.cap;
    options.workers = a.workers;
    options.short_circuit = a.short_circuit;

    CheckReport report;
    json j;
    j["mode"] = a.mode;
    if (a.mode == "thurston") {
        report = thurston_condition(surface, options);
    } else if (a.mode == "gexu") {
        const Vector r = a.rstar.empty() ? radii_or_ones(doc) : read_vector(a.rstar);
        j["alpha"] = a.alpha;
        report = ge_xu_condition(surface, PackingMetric(r), a.alpha, options);
    } else {
        if (a.x.empty()) throw Error(ErrorCode::ConfigError, "--mode membership needs --x");
        report = admissible_curvature_membership(surface, read_vector(a.x), options);
        j["gauss_bonnet"] = {{"ok", report.gauss_bonnet_ok}, {"residual", report.gauss_bonnet_residual}};
    }
    json records = json::array();
    for (const SubsetVerdict& v : report.verdicts)
        records.push_back({{"subset", v.mask},
                           {"members", members_of(v.mask)},
                           {"lhs", v.lhs},
                           {"rhs", v.rhs},
                           {"pass", v.pass},
                           {"marginal", v.marginal}});
    j["records"] = records;
    j["summary"] = {{"subsets_checked", report.subsets_checked},
                    {"failures", report.failures},
                    {"marginal", report.marginal},
                    {"pass", report.pass}};
    emit(out, j);
    return report.pass ? kOk : kFail;
}

// ---- stability -------------------------------------------------------------

struct StabilityArgs {
    std::string mesh;
    double alpha = 0.0;
    std::string rstar;
};

int cmd_stability(const StabilityArgs& a, std::ostream& out)
{
    const MeshDocument doc = read_mesh(a.mesh);
    if (doc.dim != 3) throw Error(ErrorCode::ConfigError, "stability analysis applies to 3D meshes only");
    const TetComplex complex = complex_from(doc);
    const Vector r = a.rstar.empty() ? radii_or_ones(doc) : read_vector(a.rstar);
    if (r.size() != complex.vertex_count()) throw Error(ErrorCode::ConfigError, "r* length does not match the mesh");
    const SpherePackingMetric metric(r);
    const auto adm = admissible_metric_check(complex, metric);
    if (!adm.admissible) throw Error(ErrorCode::InadmissibleMetric, "r* is not an admissible metric");
    const StabilityReport rep = stability_analysis(complex, metric, a.alpha);
    json j{{"alpha", rep.alpha},
           {"s_alpha", rep.s_alpha},
           {"alpha_s", rep.alpha_s},
           {"lambda1", rep.lambda1},
           {"curvature_spread", rep.curvature_spread},
           {"verdict", std::string(to_string(rep.verdict))},
           {"neg_dgamma_eigenvalues", to_json(rep.eigenvalues)},
           {"tangent_eigenvalues", to_json(rep.tangent_eigenvalues)},
           {"kernel_residual", rep.kernel_residual}};
    json rows = json::array();
    for (Eigen::Index i = 0; i < rep.neg_dgamma.rows(); ++i) rows.push_back(to_json(rep.neg_dgamma.row(i).transpose()));
    j["neg_dgamma"] = rows;
    emit(out, j);
    return rep.verdict == StabilityVerdict::Stable ? kOk : kFail;
}

// ---- yamabe ----------------------------------------------------------------

struct YamabeArgs {
    std::string mesh;
    double alpha = 1.0;
    int starts = 4;
    std::uint64_t seed = 20240607;
    double t_end = 100.0;
};

int cmd_yamabe(const YamabeArgs& a, std::ostream& out)
{
    const MeshDocument doc = read_mesh(a.mesh);
    const TetComplex complex = complex_from(doc);
    Flow3dConfig cfg;
    cfg.t_end = a.t_end;
    const YamabeEstimate est = yamabe_invariant_estimate(complex, a.alpha, a.starts, cfg, a.seed);
    emit(out, {{"alpha", a.alpha},
               {"starts", a.starts},
               {"seed", a.seed},
               {"estimate", est.value},
               {"skipped", est.skipped},
               {"start_values", est.start_values},
               {"final_values", est.final_values},
               {"best_metric", to_json(est.best_metric)}});
    return kOk;
}

// ---- generate --------------------------------------------------------------

struct GenerateArgs {
    std::string name;
    double weight = 0.0;
    std::string out;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out)
{
    MeshDocument doc;
    if (a.name == "tetrahedron") doc = to_document(meshes::tetrahedron(a.weight));
    else if (a.name == "octahedron") doc = to_document(meshes::octahedron(a.weight));
    else if (a.name == "torus7") doc = to_document(meshes::seven_vertex_torus(a.weight));
    else if (a.name == "simplex4") doc = to_document(meshes::simplex4_boundary());
    else doc = to_document(meshes::cross_polytope4_boundary());
    const std::string text = write_mesh(doc);
    if (a.out.empty()) {
        out << text;
    } else {
        std::ofstream file(a.out);
        if (!file) throw Error(ErrorCode::ConfigError, "cannot write '" + a.out + "'");
        file << text;
    }
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Combinatorial curvature flows on circle and sphere packings"};
    app.require_subcommand(1);

    CurvatureArgs curv;
    auto* c_curv = app.add_subcommand("curvature", "Per-vertex curvature of a mesh at its stored radii");
    c_curv->add_option("mesh", curv.mesh, "Mesh JSON file")->required();
    c_curv->add_option("--alpha", curv.alpha, "Curvature order");

    FlowArgs flow;
    auto* c_flow = app.add_subcommand("flow", "Run a curvature flow from the stored radii");
    c_flow->add_option("mesh", flow.mesh, "Mesh JSON file")->required();
    c_flow->add_option("--alpha", flow.alpha, "Curvature order");
    c_flow->add_option("--t-end", flow.t_end, "Final time")->check(CLI::PositiveNumber);
    c_flow->add_option("--tol", flow.tol, "Residual tolerance for convergence")->check(CLI::PositiveNumber);
    c_flow->add_option("--area", flow.area, "A-flow area element: power:<a>, third or dual (2D)");
    c_flow->add_option("--prescribed", flow.prescribed, "Prescribed curvature vector file (2D modified flow)");
    c_flow->add_option("--out", flow.out_csv, "Write the trace as CSV");
    c_flow->add_flag("--gradient", flow.gradient, "Use the normalized gradient flow (3D)");
    c_flow->add_option("--max-steps", flow.max_steps, "Step budget")->check(CLI::PositiveNumber);

    CheckArgs check;
    auto* c_check = app.add_subcommand("check", "Enumerate the subset inequalities of a surface");
    c_check->add_option("mesh", check.mesh, "Mesh JSON file")->required();
    c_check->add_option("--mode", check.mode, "thurston, gexu or membership")
        ->check(CLI::IsMember({"thurston", "gexu", "membership"}));
    c_check->add_option("--alpha", check.alpha, "Curvature order (gexu)");
    c_check->add_option("--rstar", check.rstar, "Radii vector file (gexu)");
    c_check->add_option("--x", check.x, "Curvature vector file (membership)");
    c_check->add_option("--cap", check.cap, "Maximum vertex count")->check(CLI::Range(1, 62));
    c_check->add_option("--workers", check.workers, "Enumeration threads")->check(CLI::Range(1, 64));
    c_check->add_flag("--short-circuit", check.short_circuit, "Stop at the first failing subset");

    StabilityArgs stab;
    auto* c_stab = app.add_subcommand("stability", "Linear stability of a constant curvature sphere packing");
    c_stab->add_option("mesh", stab.mesh, "3D mesh JSON file")->required();
    c_stab->add_option("--alpha", stab.alpha, "Curvature order");
    c_stab->add_option("--rstar", stab.rstar, "Radii vector file (defaults to the mesh radii)");

    YamabeArgs yam;
    auto* c_yam = app.add_subcommand("yamabe", "Multistart upper estimate of the Yamabe invariant");
    c_yam->add_option("mesh", yam.mesh, "3D mesh JSON file")->required();
    c_yam->add_option("--alpha", yam.alpha, "Curvature order (> -1)");
    c_yam->add_option("--starts", yam.starts, "Number of starts")->check(CLI::PositiveNumber);
    c_yam->add_option("--seed", yam.seed, "Random seed");
    c_yam->add_option("--t-end", yam.t_end, "Final time per run")->check(CLI::PositiveNumber);

    GenerateArgs gen;
    auto* c_gen = app.add_subcommand("generate", "Write a bundled mesh");
    c_gen->add_option("name", gen.name, "tetrahedron, octahedron, torus7, simplex4 or cross4")
        ->required()
        ->check(CLI::IsMember({"tetrahedron", "octahedron", "torus7", "simplex4", "cross4"}));
    c_gen->add_option("--weight", gen.weight, "Uniform edge weight (2D)");
    c_gen->add_option("--out", gen.out, "Output file (default stdout)");

    std::vector<char*> argv;
    std::vector<std::string> storage = args;
    if (storage.empty()) storage.emplace_back("alphaflow");
    for (std::string& s : storage) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*c_curv) return cmd_curvature(curv, out);
        if (*c_flow) return cmd_flow(flow, out);
        if (*c_check) return cmd_check(check, out);
        if (*c_stab) return cmd_stability(stab, out);
        if (*c_yam) return cmd_yamabe(yam, out);
        if (*c_gen) return cmd_generate(gen, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFail;
    }
    return kUsage;
}

} // namespace alphaflow::cli
