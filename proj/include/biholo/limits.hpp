#pragma once

#include <optional>
#include <string>
#include <vector>

#include "biholo/automorphism.hpp"
#include "biholo/lipschitz.hpp"
#include "biholo/types.hpp"

namespace biholo {

enum class LimitVerdict { automorphism, constant, not_converged };

std::string limit_verdict_name(LimitVerdict v);

struct NormalLimitReport {
    LimitVerdict verdict = LimitVerdict::not_converged;
    std::optional<Automorphism> limit_aut;
    Point limit_constant;
    double constant_boundary_rho = 0.0;   // rho of the limit constant (>= -tol expected... )
    std::vector<double> level_cauchy;     // tail Cauchy deviation per exhaustion level
    double fit_residual = 0.0;            // sup |fitted automorphism - tail mean| finest grid
    std::string note;
};

/// Classifies the tail of a sequence of automorphisms on an exhaustion:
/// either the tail is Cauchy on every level and the limit is a constant
/// (a boundary point for the catalog kinds) or it is again an automorphism
/// recovered in closed form; otherwise not_converged.  The constant /
/// automorphism dichotomy is enforced: a converged tail that fits neither
/// raises recovery_error.
NormalLimitReport normal_limit_classify(const std::vector<Automorphism>& phis,
                                        const CompactExhaustion& exhaustion, double tol = 1e-6);

/// Fits a closed-form automorphism of d to a map given by values; used by
/// the limit classifier and available for direct probing.
std::optional<Automorphism> fit_automorphism(const ModelDomain& d,
                                             const std::function<Point(const Point&)>& h,
                                             const std::vector<Point>& grid, double tol,
                                             double* residual = nullptr);

struct RescalingCompositionReport {
    double tail_cauchy = 0.0;             // tail Cauchy deviation of f o phi_j over all levels
    bool g_is_automorphism = false;       // estimated limit g passes the automorphism test
    double g_fit_residual = 0.0;
    bool f_injective_on_grid = false;     // grid evidence for f when g is an automorphism
    double f_surjectivity_gap = 0.0;      // sup over g-values of min distance to f(grid)
    std::vector<double> h_level_dev;      // sup |h_limit - id| per exhaustion level
    int h_cluster_size = 0;               // size of the largest convergent h_k subsequence
    double h_cluster_diameter = 0.0;      // internal spread of that subsequence on the fine grid
    std::string note;                     // measured h limits reported as-is, not asserted = id
};

/// Composition check for a normal limit f of the phi_j: forms
/// h_k = f o phi_{k+1} o phi_k^{-1} on the exhaustion grids, extracts a
/// convergent subsequence by greedy clustering, and measures its distance
/// to the identity per level; when the tail-average limit g of f o phi_j
/// is an automorphism, also reports injectivity/surjectivity evidence for
/// f on the grids.  A non-convergent f o phi_j tail raises recovery_error.
/// The measured h limits can differ from the identity by an automorphism;
/// they are reported without being asserted equal to it.
RescalingCompositionReport rescaling_composition_check(
    const std::function<Point(const Point&)>& f, const std::vector<Automorphism>& phis,
    const CompactExhaustion& exhaustion, double tol = 1e-6);

}  // namespace biholo
