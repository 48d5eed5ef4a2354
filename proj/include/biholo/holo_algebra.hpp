#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "biholo/automorphism.hpp"
#include "biholo/domain.hpp"
#include "biholo/lipschitz.hpp"
#include "biholo/series.hpp"
#include "biholo/types.hpp"

namespace biholo {

/// Black-box unital algebra homomorphism Phi: O(Omega) -> O(Omega_hat),
/// observed only through its action on representable functions.
struct HomAction {
    ModelDomain source;  // Omega
    ModelDomain target;  // Omega_hat
    std::function<HoloFunc(const HoloFunc&)> act;
};

/// Black-box multiplicative linear functional chi: O(Omega) -> C.
struct CharacterAction {
    ModelDomain domain;
    std::function<cplx(const HoloFunc&)> act;
};

/// Functions probing algebra structure: constants, coordinates, low
/// monomials, a geometric series, and a bounded rational function.
std::vector<HoloFunc> standard_test_set(const ModelDomain& d);

struct HomCheckReport {
    bool ok = false;
    double unit_residual = 0.0;
    double additive_residual = 0.0;
    double multiplicative_residual = 0.0;
    int grid_size = 0;
    double tol = 0.0;
};

/// Finite certificate that act() respects 1, +, and x on the test set,
/// evaluated over a deterministic interior grid of the target.
HomCheckReport is_unital_hom(const HomAction& phi, const std::vector<HoloFunc>& test_set,
                             int grid_size = 64, double tol = 1e-9,
                             std::uint64_t seed = 7);
HomCheckReport is_unital_hom(const CharacterAction& chi, const std::vector<HoloFunc>& test_set,
                             double tol = 1e-9);

struct CharacterLocation {
    Point c;  // the evaluation point: chi = e_c
    double residual_max = 0.0;
    double boundary_distance = 0.0;
};

/// Locates the evaluation point of a character via the coordinate
/// functions; throws unit_obstruction_error when the candidate point
/// escapes the domain (f - chi(f) would be invertible for no f),
/// recovery_error when chi is not point evaluation at it.
CharacterLocation character_locate(const CharacterAction& chi,
                                   const std::vector<HoloFunc>& test_set, double tol = 1e-8);

struct RecoveredMap {
    std::function<Point(const Point&)> h;  // h: Omega_hat -> Omega, Phi f = f o h
    std::vector<Point> grid;               // target-grid certificates
    std::vector<Point> values;             // h(grid)
    double residual_max = 0.0;
    bool injective_on_grid = false;
    bool inverse_certified = false;        // candidate inverse matched on the grid
    double inverse_residual = 0.0;
};

/// Recovers h with Phi f = f o h from the action on coordinates, checks the
/// factorization on the test set over a target grid, and certifies
/// bijectivity against an optional candidate inverse.  Throws
/// recovery_error if some h(w) leaves the source domain or the
/// factorization residual exceeds tol.
RecoveredMap bers_recover(const HomAction& phi, const std::vector<HoloFunc>& test_set,
                          int grid_size = 64, double tol = 1e-8, std::uint64_t seed = 7,
                          const std::function<Point(const Point&)>* candidate_inverse = nullptr);

struct AnnulusClassification {
    bool accepted = false;
    cplx alpha;              // Phi(id) = alpha z when accepted
    bool flip = false;       // composed with r/z when the dominant index is -1
    std::string reason;
    double off_mode_mass = 0.0;   // l1 mass of non-dominant coefficients
    HadamardRadii probe_radii;    // radii of a probe series pushed through z -> alpha z
    bool radii_consistent = false;
};

/// Classifies an algebra automorphism of O(A_r) from its value on the
/// identity function (as a truncated Laurent series): accepted iff
/// Phi(id) = alpha z or alpha r / z with |alpha| = 1 within tol.  A
/// Hadamard-radii probe confirms the annulus (r,1) is preserved.
AnnulusClassification annulus_auto_classify(const TruncatedLaurent& phi_of_id, double r,
                                            double tol = 1e-9);

}  // namespace biholo
