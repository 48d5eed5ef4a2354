#pragma once

#include <limits>
#include <map>
#include <optional>
#include <utility>

#include "biholo/types.hpp"

namespace biholo {

struct HadamardRadii {
    double r_inner = 0.0;   // limsup |a_{-j}|^{1/j}
    double r_outer = 0.0;   // 1 / limsup |a_j|^{1/j}, may be +inf
    bool truncation_limited = true;
    int window = 0;
    bool inner_flagged = false;  // no negative indices stored
    bool outer_flagged = false;  // no positive indices stored
};

/// Finitely truncated Laurent series sum_{j=-M..N} a_j (z - center)^j.
/// Coefficients below kCoeffUnderflow in magnitude are dropped as exact zeros.
/// Every arithmetic result carries a truncation-error bound (an l^1 bound on
/// the discarded tail at |z - center| = 1).
class TruncatedLaurent {
public:
    static constexpr int kDefaultOrder = 64;

    TruncatedLaurent() : neg_order_(kDefaultOrder), pos_order_(kDefaultOrder) {}
    TruncatedLaurent(int neg_order, int pos_order, cplx center = 0.0);

    static TruncatedLaurent constant(cplx a, cplx center = 0.0);
    static TruncatedLaurent identity(cplx center = 0.0);  // a_1 = 1
    static TruncatedLaurent monomial(int j, cplx a = 1.0, cplx center = 0.0);

    cplx center() const { return center_; }
    int neg_order() const { return neg_order_; }
    int pos_order() const { return pos_order_; }
    double truncation_bound() const { return trunc_bound_; }
    const std::map<int, cplx>& coeffs() const { return coeffs_; }

    cplx coeff(int j) const;
    void set_coeff(int j, cplx a);
    bool has_negative_indices() const;

    /// Optional declared evaluation annulus; eval() enforces it when present.
    void declare_region(double r_inner, double r_outer);

    cplx eval(cplx z) const;

    friend TruncatedLaurent multiply(const TruncatedLaurent& s, const TruncatedLaurent& t);
    /// f(g(z)). Exact substitution for g = alpha*z; Horner for Taylor f with
    /// general g; negative-index f with general g is unsupported.
    friend TruncatedLaurent compose(const TruncatedLaurent& f, const TruncatedLaurent& g);

private:
    void add_trunc(double b) { trunc_bound_ += b; }
    double l1_norm() const;
    std::optional<cplx> as_alpha_z() const;

    std::map<int, cplx> coeffs_;
    cplx center_ = 0.0;
    int neg_order_;  // M >= 0: indices down to -M
    int pos_order_;  // N >= 0: indices up to N
    double trunc_bound_ = 0.0;
    double declared_inner_ = 0.0;
    double declared_outer_ = std::numeric_limits<double>::infinity();
    bool region_declared_ = false;
};

/// limsup estimated as max |a_j|^{1/j} over the last tail_window stored
/// indices on each side (design default window 16).
HadamardRadii hadamard_radii(const TruncatedLaurent& s, int tail_window = 16);

/// JSON form {center: [re, im], entries: [[j, re, im], ...]}.
std::string laurent_to_json(const TruncatedLaurent& s);
TruncatedLaurent laurent_from_json(const std::string& text);

/// Truncated two-variable Taylor series sum_{j+k<=D} a_{jk} z1^j z2^k.
class TruncatedTaylor2 {
public:
    static constexpr int kDefaultDegree = 16;

    explicit TruncatedTaylor2(int degree = kDefaultDegree);

    static TruncatedTaylor2 coordinate(int i, int degree = kDefaultDegree);
    static TruncatedTaylor2 constant(cplx a, int degree = kDefaultDegree);

    int degree() const { return degree_; }
    cplx coeff(int j, int k) const;
    void set_coeff(int j, int k, cplx a);
    const std::map<std::pair<int, int>, cplx>& coeffs() const { return coeffs_; }
    double truncation_bound() const { return trunc_bound_; }

    cplx eval(const Point& z) const;

    friend TruncatedTaylor2 multiply(const TruncatedTaylor2& s, const TruncatedTaylor2& t);

private:
    std::map<std::pair<int, int>, cplx> coeffs_;
    int degree_;
    double trunc_bound_ = 0.0;
};

}  // namespace biholo
