#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "biholo/automorphism.hpp"
#include "biholo/domain.hpp"
#include "biholo/types.hpp"

namespace biholo {

using HoloFunc = std::function<cplx(const Point&)>;

using PointPair = std::pair<Point, Point>;

/// Deterministic pair sampler discretizing the Lipschitz supremum.  Half the
/// budget is uniform interior pairs, half a boundary ladder (fixed directions,
/// geometric depths) so derivative blow-up near the boundary is seen.
class PairSampler {
public:
    PairSampler(ModelDomain domain, int pair_count, std::uint64_t seed = 1,
                double min_separation = 1e-12);

    const ModelDomain& domain() const { return domain_; }
    int pair_count() const { return static_cast<int>(pairs_.size()); }
    std::uint64_t seed() const { return seed_; }
    const std::vector<PointPair>& pairs() const { return pairs_; }

    /// Deterministic interior sample (shared by exhaustions and grids).
    static std::vector<Point> interior_points(const ModelDomain& d, int n, std::uint64_t seed);

private:
    ModelDomain domain_;
    std::uint64_t seed_;
    std::vector<PointPair> pairs_;
};

struct LipschitzEstimate {
    double norm;  // sampled lower bound for the Lipschitz seminorm
    PointPair max_pair;
    int budget;
};

LipschitzEstimate lipschitz_norm(const HoloFunc& f, const PairSampler& sampler);

/// Nested grids K_1 c K_2 c ... with boundary clearances delta_k halving.
class CompactExhaustion {
public:
    CompactExhaustion(ModelDomain domain, int levels = 4, double delta0 = 0.2,
                      int master_points = 256, std::uint64_t seed = 3);

    const ModelDomain& domain() const { return domain_; }
    int levels() const { return static_cast<int>(grids_.size()); }
    const std::vector<Point>& grid(int k) const { return grids_.at(static_cast<size_t>(k)); }
    double clearance(int k) const { return clearances_.at(static_cast<size_t>(k)); }

private:
    ModelDomain domain_;
    std::vector<std::vector<Point>> grids_;
    std::vector<double> clearances_;
};

enum class FamilyVerdict { noncompact, equicontinuous, inconclusive };

std::string verdict_name(FamilyVerdict v);

struct FamilyEvidence {
    FamilyVerdict verdict = FamilyVerdict::inconclusive;
    std::vector<double> norms;           // lipschitz_norm(f o phi_j) per j
    std::vector<PointPair> max_pairs;
    double blowup_factor = 0.0;
    int budget = 0;
    bool uniform_bound_ok = false;
    bool subsequence_found = false;
    int cluster_size = 0;
    double cluster_diameter = 0.0;
    std::string note;
};

/// Prop 3.1 at desk scale: noncompact when the tail of the sampled norms
/// exceeds blowup_factor times the first norm; equicontinuous when the
/// per-level difference quotients stay uniformly bounded and a greedy value
/// cluster (pointwise 1e-6 on the level grids) certifies a convergent
/// subsequence; otherwise inconclusive.
FamilyEvidence family_classify(const HoloFunc& f, const std::vector<Automorphism>& phis,
                               const CompactExhaustion& exhaustion, const PairSampler& sampler,
                               double blowup_factor = 1e3, double cluster_tol = 1e-6);

struct LipschitzBoundRow {
    double norm_f;        // ||f||_L on Omega
    double norm_fh;       // ||f o h||_L on Omega-hat
    double bound;         // Lip(h) * ||f||_L
    bool holds;
};

struct LipschitzBoundReport {
    double lip_h = 0.0;
    double lip_h_inverse = 0.0;  // 0 when no inverse supplied
    std::vector<LipschitzBoundRow> rows;
    std::vector<LipschitzBoundRow> reverse_rows;
    bool all_hold = true;
};

/// Checks ||f o h||_L <= Lip(h) ||f||_L on sampled norms for each test f
/// (h: target -> source); with an inverse also the reverse bound.
/// Sampled sup semantics: a 5% slack absorbs sampler underestimation.
LipschitzBoundReport lipschitz_hom_bound(
    const std::function<Point(const Point&)>& h, const ModelDomain& source,
    const ModelDomain& target, const std::vector<HoloFunc>& test_set, int pair_budget = 4000,
    std::uint64_t seed = 5, const std::function<Point(const Point&)>* h_inverse = nullptr);

}  // namespace biholo
