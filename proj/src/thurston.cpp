#include "alphaflow/thurston.hpp"

#include "alphaflow/error.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numbers>
#include <thread>

namespace alphaflow {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMarginal = 1e-9;

struct FaceMasks {
    std::uint64_t mask;
    std::array<std::uint64_t, 3> corner;
    std::array<double, 3> link_cost;  ///< pi - Phi of the edge opposite each corner
};

/// Precomputed bitmasks so each subset costs a handful of popcounts.
class SubsetEvaluator {
public:
    explicit SubsetEvaluator(const WeightedSurface& surface)
    {
        for (int f = 0; f < static_cast<int>(surface.faces().size()); ++f) {
            const Face& face = surface.faces()[f];
            FaceMasks fm{};
            for (int c = 0; c < 3; ++c) {
                fm.corner[c] = std::uint64_t{1} << face[c];
                fm.mask |= fm.corner[c];
                fm.link_cost[c] = kPi - surface.weight(surface.opposite_edge(f, c));
            }
            faces_.push_back(fm);
        }
        for (const Edge& e : surface.edges()) edges_.push_back((std::uint64_t{1} << e[0]) | (std::uint64_t{1} << e[1]));
    }

    double rhs(std::uint64_t subset) const
    {
        double link = 0.0;
        int inner_faces = 0;
        for (const FaceMasks& fm : faces_) {
            const int hit = std::popcount(fm.mask & subset);
            if (hit == 3) {
                ++inner_faces;
            } else if (hit == 1) {
                for (int c = 0; c < 3; ++c)
                    if (fm.corner[c] & subset) link += fm.link_cost[c];
            }
        }
        int inner_edges = 0;
        for (std::uint64_t em : edges_)
            if ((em & subset) == em) ++inner_edges;
        const int chi = std::popcount(subset) - inner_edges + inner_faces;
        return -link + 2.0 * kPi * chi;
    }

private:
    std::vector<FaceMasks> faces_;
    std::vector<std::uint64_t> edges_;
};

void check_size(const WeightedSurface& surface, const CheckOptions& options)
{
    const int n = surface.vertex_count();
    if (n > options.vertex_cap || n > 62)
        throw Error(ErrorCode::TooManyVertices, std::to_string(n) + " vertices exceed the enumeration cap of " +
                                                    std::to_string(std::min(options.vertex_cap, 62)));
}

/// Enumerates every nonempty proper subset with lhs(I) = sum_{i in I} w_i.
CheckReport enumerate(const WeightedSurface& surface, const Vector& w, const CheckOptions& options)
{
    check_size(surface, options);
    const int n = surface.vertex_count();
    const SubsetEvaluator evaluator(surface);
    const std::uint64_t end = (std::uint64_t{1} << n) - 1;  // full set excluded
    std::atomic<bool> stop{false};

    struct Chunk {
        std::vector<SubsetVerdict> verdicts;
        long checked = 0, failures = 0, marginal = 0;
    };

    auto run = [&](std::uint64_t begin, std::uint64_t last, Chunk& chunk) {
        for (std::uint64_t mask = begin; mask < last; ++mask) {
            if (options.short_circuit && stop.load(std::memory_order_relaxed)) return;
            double lhs = 0.0;
            for (std::uint64_t bits = mask; bits != 0; bits &= bits - 1) lhs += w[std::countr_zero(bits)];
            SubsetVerdict v{mask, lhs, evaluator.rhs(mask), false, false};
            v.pass = v.lhs > v.rhs;
            v.marginal = std::abs(v.lhs - v.rhs) <= kMarginal;
            ++chunk.checked;
            if (v.marginal) ++chunk.marginal;
            if (!v.pass) {
                ++chunk.failures;
                if (options.short_circuit) stop = true;
            }
            if (options.keep_records || !v.pass) chunk.verdicts.push_back(v);
        }
    };

    const int workers = std::max(1, std::min<int>(options.workers, static_cast<int>(std::min<std::uint64_t>(end, 64))));
    std::vector<Chunk> chunks(workers);
    if (workers == 1) {
        run(1, end, chunks[0]);
    } else {
        std::vector<std::jthread> threads;
        const std::uint64_t span = (end - 1) / workers + 1;
        for (int k = 0; k < workers; ++k) {
            const std::uint64_t begin = 1 + k * span;
            const std::uint64_t last = std::min(end, begin + span);
            threads.emplace_back([&, begin, last, k] { run(begin, last, chunks[k]); });
        }
    }

    CheckReport report;
    for (Chunk& chunk : chunks) {
        report.subsets_checked += chunk.checked;
        report.failures += chunk.failures;
        report.marginal += chunk.marginal;
        report.verdicts.insert(report.verdicts.end(), chunk.verdicts.begin(), chunk.verdicts.end());
    }
    report.pass = report.failures == 0;
    return report;
}

} // namespace

double subset_rhs(const WeightedSurface& surface, const VertexSubset& subset)
{
    const auto pairs = link_pairs(surface, subset);
    double link = 0.0;
    for (const LinkPair& p : pairs) link += kPi - surface.weight(surface.find_edge(p.edge[0], p.edge[1]));
    return -link + 2.0 * kPi * induced_subcomplex(surface, subset).euler_characteristic;
}

CheckReport thurston_condition(const WeightedSurface& surface, const CheckOptions& options)
{
    const int n = surface.vertex_count();
    const Vector w = Vector::Constant(n, 2.0 * kPi * euler_characteristic(surface) / n);
    return enumerate(surface, w, options);
}

CheckReport ge_xu_condition(const WeightedSurface& surface, const PackingMetric& r_star, double alpha,
                            const CheckOptions& options)
{
    if (r_star.size() != surface.vertex_count())
        throw Error(ErrorCode::InvalidArgument, "r* size does not match the surface");
    const Vector p = r_star.radii().array().pow(alpha).matrix();
    const Vector w = 2.0 * kPi * euler_characteristic(surface) * p / p.sum();
    return enumerate(surface, w, options);
}

CheckReport admissible_curvature_membership(const WeightedSurface& surface, const Vector& x,
                                            const CheckOptions& options)
{
    if (x.size() != surface.vertex_count())
        throw Error(ErrorCode::InvalidArgument, "curvature vector size does not match the surface");
    CheckReport report = enumerate(surface, x, options);
    report.gauss_bonnet_residual = x.sum() - 2.0 * kPi * euler_characteristic(surface);
    report.gauss_bonnet_ok = std::abs(report.gauss_bonnet_residual) <= 1e-9;
    report.pass = report.pass && report.gauss_bonnet_ok;
    return report;
}

} // namespace alphaflow
