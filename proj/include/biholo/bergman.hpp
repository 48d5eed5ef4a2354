#pragma once

#include <string>
#include <utility>
#include <vector>

#include "biholo/automorphism.hpp"
#include "biholo/domain.hpp"
#include "biholo/lipschitz.hpp"
#include "biholo/types.hpp"

namespace biholo {

struct QuadratureSpec {
    int radial = 96;  // minimum Gauss-Legendre node count (raised with degree)
};

/// Bergman kernel of a catalog domain: either a closed form (disk, annulus,
/// bidisc, ball) or a numeric monomial expansion produced by
/// build_numeric_kernel.  eval() enforces that both arguments lie inside.
class KernelModel {
public:
    static KernelModel closed_form(const ModelDomain& d);

    const ModelDomain& domain() const { return domain_; }
    bool numeric() const { return numeric_; }
    int degree() const { return degree_; }
    int degree2() const { return degree2_; }
    /// Condition number of the column-norm-pivoted Gram matrix.  The Gram
    /// matrix is exactly diagonal here (see build_numeric_kernel), so the
    /// pivoted matrix is the identity and this is 1 whenever the build
    /// succeeded; it is kept as the contractual rejection quantity.
    double gram_condition() const { return gram_cond_; }
    /// Raw max/min ratio of the diagonal squared norms (diagnostic only:
    /// the diagonal entries are used independently, so a large spread does
    /// not degrade the evaluation).
    double norm2_ratio() const { return norm_ratio_; }

    cplx eval(const Point& z, const Point& zeta) const;
    double diagonal(const Point& z) const;  // K(z,z) > 0

    /// Truncation bound for the annulus closed form (O(|u|^201) tail) at the
    /// given pair; zero for the other closed forms and for numeric kernels
    /// (whose truncation is reported through the degree).
    double tail_bound(const Point& z, const Point& zeta) const;

    std::string descriptor() const;

    friend KernelModel build_numeric_kernel(const ModelDomain& d, int degree, int degree2,
                                            QuadratureSpec q);

private:
    explicit KernelModel(ModelDomain d) : domain_(std::move(d)) {}
    cplx eval_closed(const Point& z, const Point& zeta) const;
    cplx eval_numeric(const Point& z, const Point& zeta) const;

    ModelDomain domain_;
    bool numeric_ = false;
    int degree_ = 0;
    int degree2_ = -1;
    double gram_cond_ = 1.0;
    double norm_ratio_ = 1.0;
    // numeric data: exponent tuples with 1/norm^2 weights
    std::vector<int> exp1_, exp2_;
    std::vector<double> inv_norm2_;
    int max_e1_ = 0, max_e2_ = 0;
};

/// Monomial basis orthonormalized against the domain's L^2 inner product.
/// The circular symmetry of every catalog domain makes the Gram matrix
/// exactly diagonal (angular integrals of distinct monomials vanish in
/// closed form); radial factors are integrated by Gauss-Legendre.
/// degree2 >= 0 requests the anisotropic rectangle e1 <= degree,
/// e2 <= degree2 in place of total degree <= degree.
KernelModel build_numeric_kernel(const ModelDomain& d, int degree, int degree2 = -1,
                                 QuadratureSpec q = {});

struct MetricResult {
    int dim = 1;
    Mat2 g{};        // Hermitian metric g_{i jbar} = dd_i dd_jbar log K
    double radius;   // stencil circle radius used
};

MetricResult bergman_metric(const KernelModel& K, const Point& z);

/// Squared length |v|^2_g = sum g_{ij} v_i conj(v_j) (real).
double metric_length2(const MetricResult& m, const Point& v);

struct CurvatureResult {
    double value;
    double radius;  // stencil circle radius used
};

/// Holomorphic sectional curvature of the Bergman metric at z along v.
CurvatureResult holo_curvature(const KernelModel& K, const Point& z, const Point& v);

struct TransformResidual {
    double max_rel = 0.0;
    double mean_rel = 0.0;
    int pairs = 0;
};

/// Residual of K(z,zeta) = Jac F(z) K(Fz, Fzeta) conj(Jac F(zeta)) over pairs.
TransformResidual transformation_residual(const KernelModel& K, const Automorphism& F,
                                          const std::vector<PointPair>& pairs);

struct ExponentFit {
    double exponent = 0.0;   // K(z_delta, z_delta) ~ c * delta^{-exponent}
    double intercept = 0.0;
    double max_fit_dev = 0.0;  // max |log K - fit| over the samples
    std::vector<double> deltas;
    std::vector<double> log_diag;
};

/// Least-squares fit of log K(z_delta,z_delta) against -log delta along the
/// inner normal from boundary point X.
ExponentFit blowup_exponent(const KernelModel& K, const Point& X,
                            const std::vector<double>& deltas);

struct KlembeckPoint {
    double delta;
    double curvature;
    bool ok;  // false when the stencil could not be placed
};

struct KlembeckProfile {
    std::vector<KlembeckPoint> points;
    double target;     // limit value -2/(n+1) * (n+1)/... : -2 (n=1), -4/3 (n=2)
    bool improving;    // |curvature - target| strictly decreasing over ok points
};

/// Curvature along the inner normal from boundary point X at the given
/// deltas, compared against the strongly-pseudoconvex boundary limit.
KlembeckProfile klembeck_profile(const KernelModel& K, const Point& X, const Point& v,
                                 const std::vector<double>& deltas);

/// Inner unit normal (real direction) at boundary point X.
Point inner_normal(const ModelDomain& d, const Point& X);

}  // namespace biholo
