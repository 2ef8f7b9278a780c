#pragma once

#include "alphaflow/complex.hpp"
#include "alphaflow/packing2d.hpp"
#include "alphaflow/types.hpp"

#include <cstdint>
#include <vector>

namespace alphaflow {

/// One inequality lhs(I) > rhs(I) for a nonempty proper vertex subset I.
struct SubsetVerdict {
    std::uint64_t mask = 0;  ///< bit i set iff vertex i is in I
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;       ///< lhs > rhs, strictly
    bool marginal = false;   ///< |lhs - rhs| <= 1e-9
};

struct CheckOptions {
    int vertex_cap = 22;
    /// Stop at the first failing subset instead of enumerating everything.
    bool short_circuit = false;
    /// 0 or 1 runs inline; more splits the mask range across threads.
    int workers = 1;
    /// Keep per-subset records (the summary is always computed).
    bool keep_records = true;
};

struct CheckReport {
    std::vector<SubsetVerdict> verdicts;  ///< ordered by mask
    long subsets_checked = 0;
    long failures = 0;
    long marginal = 0;
    bool pass = false;
    /// Membership only: |sum x - 2 pi chi| <= 1e-9.
    bool gauss_bonnet_ok = true;
    double gauss_bonnet_residual = 0.0;
};

/// rhs(I) = -sum_{(e,v) in Lk(I)} (pi - Phi(e)) + 2 pi chi(F_I).
double subset_rhs(const WeightedSurface& surface, const VertexSubset& subset);

/// lhs(I) = 2 pi chi |I| / N.
CheckReport thurston_condition(const WeightedSurface& surface, const CheckOptions& options = {});

/// lhs(I) = 2 pi chi sum_{i in I} r_i^alpha / sum_i r_i^alpha.
CheckReport ge_xu_condition(const WeightedSurface& surface, const PackingMetric& r_star, double alpha,
                            const CheckOptions& options = {});

/// lhs(I) = sum_{i in I} x_i, plus the Gauss-Bonnet constraint on sum x.
CheckReport admissible_curvature_membership(const WeightedSurface& surface, const Vector& x,
                                            const CheckOptions& options = {});

} // namespace alphaflow
