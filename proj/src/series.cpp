#include "biholo/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include "json.hpp"

namespace biholo {

namespace {
cplx ipow(cplx w, int n) {
    cplx r = 1.0;
    while (n > 0) {
        if (n & 1) r *= w;
        w *= w;
        n >>= 1;
    }
    return r;
}
}  // namespace

TruncatedLaurent::TruncatedLaurent(int neg_order, int pos_order, cplx center)
    : center_(center), neg_order_(neg_order), pos_order_(pos_order) {
    if (neg_order < 0 || pos_order < 0) throw usage_error("truncation orders must be nonnegative");
}

TruncatedLaurent TruncatedLaurent::constant(cplx a, cplx center) {
    TruncatedLaurent s(0, 0, center);
    s.set_coeff(0, a);
    return s;
}

TruncatedLaurent TruncatedLaurent::identity(cplx center) {
    TruncatedLaurent s(0, 1, center);
    s.set_coeff(1, 1.0);
    return s;
}

TruncatedLaurent TruncatedLaurent::monomial(int j, cplx a, cplx center) {
    TruncatedLaurent s(std::max(0, -j), std::max(0, j), center);
    s.set_coeff(j, a);
    return s;
}

cplx TruncatedLaurent::coeff(int j) const {
    auto it = coeffs_.find(j);
    return it == coeffs_.end() ? cplx(0.0) : it->second;
}

void TruncatedLaurent::set_coeff(int j, cplx a) {
    if (j < -neg_order_ || j > pos_order_)
        throw usage_error("coefficient index outside truncation window");
    if (std::abs(a) < kCoeffUnderflow)
        coeffs_.erase(j);
    else
        coeffs_[j] = a;
}

bool TruncatedLaurent::has_negative_indices() const {
    return !coeffs_.empty() && coeffs_.begin()->first < 0;
}

void TruncatedLaurent::declare_region(double r_inner, double r_outer) {
    if (!(r_inner >= 0) || !(r_outer > r_inner)) throw usage_error("bad evaluation region");
    declared_inner_ = r_inner;
    declared_outer_ = r_outer;
    region_declared_ = true;
}

cplx TruncatedLaurent::eval(cplx z) const {
    const double r = std::abs(z - center_);
    if (region_declared_ && (r < declared_inner_ || r > declared_outer_))
        throw eval_domain_error("point outside declared evaluation region");
    if (has_negative_indices() && r == 0.0)
        throw eval_domain_error("Laurent series with negative indices evaluated at its center");
    const cplx w = z - center_;

    // Horner over the (sparse) nonnegative indices, descending.
    cplx pos = 0.0;
    {
        bool started = false;
        int prev = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend() && it->first >= 0; ++it) {
            if (!started) {
                pos = it->second;
                prev = it->first;
                started = true;
            } else {
                pos = pos * ipow(w, prev - it->first) + it->second;
                prev = it->first;
            }
        }
        if (started) pos *= ipow(w, prev);
    }
    // Same in 1/w over the negative indices, deepest first.
    cplx neg = 0.0;
    if (has_negative_indices()) {
        const cplx iw = 1.0 / w;
        bool started = false;
        int prev = 0;
        for (auto it = coeffs_.begin(); it != coeffs_.end() && it->first < 0; ++it) {
            const int p = -it->first;
            if (!started) {
                neg = it->second;
                prev = p;
                started = true;
            } else {
                neg = neg * ipow(iw, prev - p) + it->second;
                prev = p;
            }
        }
        if (started) neg *= ipow(iw, prev);
    }
    return pos + neg;
}

double TruncatedLaurent::l1_norm() const {
    double s = 0;
    for (auto& [j, a] : coeffs_) s += std::abs(a);
    return s;
}

TruncatedLaurent multiply(const TruncatedLaurent& s, const TruncatedLaurent& t) {
    if (s.center_ != t.center_) throw usage_error("multiply: mismatched centers");
    const int M = s.neg_order_ + t.neg_order_;
    const int N = s.pos_order_ + t.pos_order_;
    TruncatedLaurent r(M, N, s.center_);
    double dropped = 0.0;
    std::map<int, cplx> acc;
    for (auto& [j, a] : s.coeffs_) {
        for (auto& [k, b] : t.coeffs_) {
            const int idx = j + k;
            const cplx term = a * b;
            if (idx < -M || idx > N)
                dropped += std::abs(term);
            else
                acc[idx] += term;
        }
    }
    for (auto& [j, a] : acc) r.set_coeff(j, a);
    // l^1 product bound at |z-center| = 1, plus propagated input bounds
    r.trunc_bound_ = dropped + s.trunc_bound_ * t.l1_norm() + t.trunc_bound_ * s.l1_norm() +
                     s.trunc_bound_ * t.trunc_bound_;
    return r;
}

std::optional<cplx> TruncatedLaurent::as_alpha_z() const {
    if (center_ != 0.0) return std::nullopt;
    if (coeffs_.size() != 1) return std::nullopt;
    const auto& [j, a] = *coeffs_.begin();
    return j == 1 ? std::optional<cplx>(a) : std::nullopt;
}

TruncatedLaurent compose(const TruncatedLaurent& f, const TruncatedLaurent& g) {
    if (auto alpha = g.as_alpha_z()) {
        // exact substitution: sum alpha^j a_j z^j, valid for any index sign
        TruncatedLaurent r(f.neg_order_, f.pos_order_, f.center_);
        for (auto& [j, a] : f.coeffs_) {
            const cplx aj = j >= 0 ? ipow(*alpha, j) : 1.0 / ipow(*alpha, -j);
            r.set_coeff(j, a * aj);
        }
        r.trunc_bound_ = f.trunc_bound_;
        return r;
    }
    if (f.has_negative_indices())
        throw unsupported_composition_error(
            "compose: negative-index outer series requires g of the form alpha*z");
    // Horner in the inner series: f(g) with f recentred, g - f.center as the
    // running factor.
    TruncatedLaurent gs = g;
    gs.set_coeff(0, g.coeff(0) - f.center_);
    TruncatedLaurent r = TruncatedLaurent::constant(0.0, g.center());
    bool started = false;
    for (int j = f.pos_order_; j >= 0; --j) {
        const cplx a = f.coeff(j);
        if (!started) {
            if (a == 0.0 && j > 0) continue;
            r = TruncatedLaurent::constant(a, g.center());
            started = true;
            continue;
        }
        r = multiply(r, gs);
        if (a != 0.0) {
            TruncatedLaurent widened(r.neg_order_, std::max(r.pos_order_, 0), r.center_);
            widened.coeffs_ = r.coeffs_;
            widened.trunc_bound_ = r.trunc_bound_;
            widened.set_coeff(0, r.coeff(0) + a);
            r = widened;
        }
    }
    r.trunc_bound_ += f.trunc_bound_;
    return r;
}

HadamardRadii hadamard_radii(const TruncatedLaurent& s, int tail_window) {
    if (tail_window < 2) throw usage_error("hadamard_radii: tail_window must be >= 2");
    HadamardRadii out;
    out.window = tail_window;
    double lim_pos = 0.0;
    int used = 0;
    for (auto it = s.coeffs().rbegin(); it != s.coeffs().rend() && used < tail_window; ++it) {
        if (it->first <= 0) break;
        lim_pos = std::max(lim_pos, std::pow(std::abs(it->second), 1.0 / it->first));
        ++used;
    }
    if (used == 0) {
        out.r_outer = std::numeric_limits<double>::infinity();
        out.outer_flagged = true;
    } else {
        out.r_outer = lim_pos > 0 ? 1.0 / lim_pos : std::numeric_limits<double>::infinity();
    }
    double lim_neg = 0.0;
    used = 0;
    for (auto it = s.coeffs().begin(); it != s.coeffs().end() && used < tail_window; ++it) {
        if (it->first >= 0) break;
        lim_neg = std::max(lim_neg, std::pow(std::abs(it->second), -1.0 / it->first));
        ++used;
    }
    if (used == 0) {
        out.r_inner = 0.0;
        out.inner_flagged = true;
    } else {
        out.r_inner = lim_neg;
    }
    out.truncation_limited = true;
    return out;
}

// ---------------------------------------------------------------------------

TruncatedTaylor2::TruncatedTaylor2(int degree) : degree_(degree) {
    if (degree < 0) throw usage_error("degree bound must be nonnegative");
}

TruncatedTaylor2 TruncatedTaylor2::coordinate(int i, int degree) {
    TruncatedTaylor2 s(degree);
    if (i == 0)
        s.set_coeff(1, 0, 1.0);
    else if (i == 1)
        s.set_coeff(0, 1, 1.0);
    else
        throw usage_error("coordinate index must be 0 or 1");
    return s;
}

TruncatedTaylor2 TruncatedTaylor2::constant(cplx a, int degree) {
    TruncatedTaylor2 s(degree);
    s.set_coeff(0, 0, a);
    return s;
}

cplx TruncatedTaylor2::coeff(int j, int k) const {
    auto it = coeffs_.find({j, k});
    return it == coeffs_.end() ? cplx(0.0) : it->second;
}

void TruncatedTaylor2::set_coeff(int j, int k, cplx a) {
    if (j < 0 || k < 0 || j + k > degree_)
        throw usage_error("multi-index outside degree bound");
    if (std::abs(a) < kCoeffUnderflow)
        coeffs_.erase({j, k});
    else
        coeffs_[{j, k}] = a;
}

cplx TruncatedTaylor2::eval(const Point& z) const {
    if (z.dim() != 2) throw usage_error("TruncatedTaylor2 expects a two-variable point");
    cplx s = 0.0;
    for (auto& [jk, a] : coeffs_)
        s += a * ipow(z[0], jk.first) * ipow(z[1], jk.second);
    return s;
}

TruncatedTaylor2 multiply(const TruncatedTaylor2& s, const TruncatedTaylor2& t) {
    TruncatedTaylor2 r(std::max(s.degree_, t.degree_));
    double dropped = 0.0;
    std::map<std::pair<int, int>, cplx> acc;
    for (auto& [jk, a] : s.coeffs_)
        for (auto& [lm, b] : t.coeffs_) {
            const int j = jk.first + lm.first, k = jk.second + lm.second;
            const cplx term = a * b;
            if (j + k > r.degree_)
                dropped += std::abs(term);
            else
                acc[{j, k}] += term;
        }
    for (auto& [jk, a] : acc) r.set_coeff(jk.first, jk.second, a);
    double s1 = 0, t1 = 0;
    for (auto& [jk, a] : s.coeffs_) s1 += std::abs(a);
    for (auto& [jk, a] : t.coeffs_) t1 += std::abs(a);
    r.trunc_bound_ =
        dropped + s.trunc_bound_ * t1 + t.trunc_bound_ * s1 + s.trunc_bound_ * t.trunc_bound_;
    return r;
}

std::string laurent_to_json(const TruncatedLaurent& s) {
    nlohmann::ordered_json j;
    j["center"] = {s.center().real(), s.center().imag()};
    auto entries = nlohmann::ordered_json::array();
    for (const auto& [k, a] : s.coeffs()) entries.push_back({k, a.real(), a.imag()});
    j["entries"] = entries;
    return j.dump();
}

TruncatedLaurent laurent_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw usage_error(std::string("bad series JSON: ") + e.what());
    }
    try {
        cplx center{0.0, 0.0};
        if (j.contains("center"))
            center = cplx{j["center"].at(0).get<double>(), j["center"].at(1).get<double>()};
        int min_j = 0, max_j = 0;
        for (const auto& e : j.at("entries")) {
            int k = e.at(0).get<int>();
            min_j = std::min(min_j, k);
            max_j = std::max(max_j, k);
        }
        TruncatedLaurent s(-min_j, max_j, center);
        for (const auto& e : j.at("entries"))
            s.set_coeff(e.at(0).get<int>(),
                        cplx{e.at(1).get<double>(), e.at(2).get<double>()});
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw usage_error(std::string("bad series JSON: ") + e.what());
    }
}

}  // namespace biholo
