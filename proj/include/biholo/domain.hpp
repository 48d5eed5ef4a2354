#pragma once

#include <string>

#include "biholo/types.hpp"

namespace biholo {

enum class DomainKind { disk, annulus, bidisc, ball, ellipsoid, siegel };

std::string kind_name(DomainKind k);

/// Catalog model domain with defining function rho (rho < 0 inside) and a
/// boundary-distance estimate (exact for disk/annulus/bidisc/ball,
/// first-order |rho|/|grad rho| for ellipsoid and Siegel).
class ModelDomain {
public:
    static ModelDomain disk();
    static ModelDomain annulus(double r);           // {r < |z| < 1}, 0 < r < 1
    static ModelDomain bidisc();
    static ModelDomain ball();                      // unit ball in C^2
    static ModelDomain ellipsoid(int m);            // {|z1|^2 + |z2|^{2m} < 1}, m >= 1
    static ModelDomain siegel();                    // {Re w1 > |w2|^2}

    DomainKind kind() const { return kind_; }
    double annulus_r() const { return r_; }
    int ellipsoid_m() const { return m_; }
    int dim() const;
    bool bounded() const { return kind_ != DomainKind::siegel; }

    double rho(const Point& z) const;
    bool contains(const Point& z) const { return rho(z) < 0.0; }
    double boundary_distance(const Point& z) const;

    /// Complex gradient (d rho / d z_j).  Throws construction_error at
    /// non-smooth boundary corners (bidisc) where no single face is active.
    Point rho_gradient(const Point& z) const;
    /// Levi matrix d^2 rho / dz_j dzbar_k (two-variable kinds only).
    std::array<std::array<cplx, 2>, 2> rho_levi(const Point& z) const;
    /// Holomorphic Hessian d^2 rho / dz_j dz_k (two-variable kinds only).
    std::array<std::array<cplx, 2>, 2> rho_pure_hessian(const Point& z) const;

    std::string descriptor() const;  // JSON {kind, params}

    friend bool operator==(const ModelDomain& a, const ModelDomain& b) {
        return a.kind_ == b.kind_ && a.r_ == b.r_ && a.m_ == b.m_;
    }

private:
    ModelDomain(DomainKind k, double r, int m) : kind_(k), r_(r), m_(m) {}
    DomainKind kind_;
    double r_;
    int m_;
};

ModelDomain domain_from_descriptor(const std::string& json_text);

}  // namespace biholo
