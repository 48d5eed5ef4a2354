#pragma once

#include <array>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "biholo/domain.hpp"
#include "biholo/types.hpp"

namespace biholo {

namespace aut {

/// z -> e^{i theta} (z - a)/(1 - conj(a) z), |a| < 1.
struct DiskMobius {
    cplx a;
    double theta;
};

/// z -> e^{i theta} z, or (flip) z -> e^{i theta} r / z.
struct AnnulusRot {
    double theta;
    bool flip;
    double r;  // annulus parameter, needed by the flip
};

/// z -> U phi_a(z), phi_a the standard involution swapping 0 and a.
struct BallAut {
    Point a;
    Mat2 U;
};

/// w -> (lam^2 w1 + 2 lam e^{i th} w2 conj(b) + |b|^2 + i s,  lam e^{i th} w2 + b)
struct SiegelAff {
    double lambda;  // > 0
    double theta;
    cplx b;
    double s;
};

}  // namespace aut

/// Closed-form biholomorphic self-map of a catalog domain, with exact
/// inverse, complex Jacobian determinant, and closed parameter composition.
class Automorphism {
public:
    static Automorphism disk_mobius(cplx a, double theta);
    static Automorphism annulus_rotation(double r, double theta);
    static Automorphism annulus_flip(double r, double theta = 0.0);
    static Automorphism ball_aut(const Point& a, const Mat2& U);
    static Automorphism siegel_aff(double lambda, double theta, cplx b, double s);
    static Automorphism identity(const ModelDomain& d);

    const ModelDomain& domain() const { return domain_; }
    Point apply(const Point& z) const;
    cplx operator()(cplx z) const { return apply(Point(z))[0]; }  // planar convenience
    Automorphism inverse() const;
    /// Complex Jacobian determinant Jac_C F(z).
    cplx jacobian(const Point& z) const;

    /// a after b: apply(compose(a,b), z) == a.apply(b.apply(z)).
    static Automorphism compose(const Automorphism& a, const Automorphism& b);

    std::string descriptor() const;  // JSON {kind, params}
    static Automorphism from_descriptor(const std::string& json_text);

    const aut::DiskMobius* as_disk() const { return std::get_if<aut::DiskMobius>(&v_); }
    const aut::AnnulusRot* as_annulus() const { return std::get_if<aut::AnnulusRot>(&v_); }
    const aut::BallAut* as_ball() const { return std::get_if<aut::BallAut>(&v_); }
    const aut::SiegelAff* as_siegel() const { return std::get_if<aut::SiegelAff>(&v_); }

private:
    using V = std::variant<aut::DiskMobius, aut::AnnulusRot, aut::BallAut, aut::SiegelAff>;
    Automorphism(V v, ModelDomain d) : v_(std::move(v)), domain_(d) {}
    V v_;
    ModelDomain domain_;
};

struct OrbitReport {
    std::vector<Point> points;
    std::vector<double> boundary_distances;
    bool accumulates_at_boundary = false;
    Point x_estimate;
};

/// Orbit phi_j(P) with boundary-accumulation detection: the last
/// min(10, n) distances all below `threshold` and nonincreasing.
OrbitReport orbit(const ModelDomain& d, const std::vector<Automorphism>& auts, const Point& P,
                  double threshold = 1e-3);

}  // namespace biholo
