#include "biholo/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace biholo {
namespace {

constexpr double kPi = 3.14159265358979323846;

Point mat_apply(const Mat2& B, const Point& w) {
    return Point{B[0][0] * w[0] + B[0][1] * w[1], B[1][0] * w[0] + B[1][1] * w[1]};
}

Point mat_adj_apply(const Mat2& B, const Point& z) {
    return Point{std::conj(B[0][0]) * z[0] + std::conj(B[1][0]) * z[1],
                 std::conj(B[0][1]) * z[0] + std::conj(B[1][1]) * z[1]};
}

}  // namespace

BoundaryFrame::BoundaryFrame(const ModelDomain& d, const Point& X) : domain_(d), X_(X) {
    if (d.dim() != 2) throw usage_error("boundary frames need a two-variable domain");
    if (std::abs(d.rho(X)) > 1e-9)
        throw construction_error("frame anchor is not on the boundary");

    Point nu = d.rho_gradient(X);  // may throw construction_error at corners
    grad_norm_ = nu.norm();
    if (!(grad_norm_ > 1e-12)) throw construction_error("vanishing boundary gradient");

    // columns: inward normal -conj(nu)/|nu| and complex tangent (-nu2, nu1)/|nu|
    B_[0][0] = -std::conj(nu[0]) / grad_norm_;
    B_[1][0] = -std::conj(nu[1]) / grad_norm_;
    B_[0][1] = -nu[1] / grad_norm_;
    B_[1][1] = nu[0] / grad_norm_;

    auto L = d.rho_levi(X);
    Point t{B_[0][1], B_[1][1]};
    cplx lt = 0.0;
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) lt += L[static_cast<size_t>(j)][static_cast<size_t>(k)] * t[j] * std::conj(t[k]);
    levi_tangent_ = lt.real();
    if (!(levi_tangent_ > 1e-12))
        throw construction_error("Levi form degenerate on the complex tangent: "
                                 "anchor is not strongly pseudoconvex");
    sigma_ = 2.0 * grad_norm_ / levi_tangent_;
    hess_ = d.rho_pure_hessian(X);
}

cplx BoundaryFrame::q_of(const Point& w) const {
    Point bw = mat_apply(B_, w);
    cplx q = 0.0;
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
            q += hess_[static_cast<size_t>(j)][static_cast<size_t>(k)] * bw[j] * bw[k];
    return q;
}

Point BoundaryFrame::to_frame(const Point& z) const { return mat_adj_apply(B_, z - X_); }

Point BoundaryFrame::from_frame(const Point& w) const { return X_ + mat_apply(B_, w); }

Point BoundaryFrame::to_normalized(const Point& z) const {
    Point w = to_frame(z);
    cplx W1 = sigma_ * (w[0] - q_of(w) / (2.0 * grad_norm_));
    return Point{W1, w[1]};
}

Point BoundaryFrame::from_normalized(const Point& W) const {
    // w1 = W1/sigma + q(w)/(2|nu|): contraction for small |w|
    Point w{W[0] / sigma_, W[1]};
    for (int it = 0; it < 20; ++it) {
        cplx next = W[0] / sigma_ + q_of(w) / (2.0 * grad_norm_);
        if (std::abs(next - w[0]) < 1e-16) { w[0] = next; break; }
        w[0] = next;
    }
    return from_frame(w);
}

Point DilationMap::apply(const Point& z) const {
    return Point{anchor[0] + (z[0] - anchor[0]) / delta,
                 anchor[1] + (z[1] - anchor[1]) / std::sqrt(delta)};
}

Point DilationMap::inverse(const Point& u) const {
    return Point{anchor[0] + delta * (u[0] - anchor[0]),
                 anchor[1] + std::sqrt(delta) * (u[1] - anchor[1])};
}

double DilationMap::jacobian() const { return std::pow(delta, -1.5); }

DilationMap dilation_map(const DilationStep& step) {
    if (!(step.delta > 0.0)) throw usage_error("dilation needs delta > 0");
    return DilationMap{step.anchor, step.delta};
}

ScaleReport scale_sequence(const ModelDomain& d, const Point& X,
                           const std::vector<double>& deltas, int samples_per_step,
                           std::uint64_t seed) {
    BoundaryFrame frame(d, X);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_real_distribution<double> u11(-1.0, 1.0);

    ScaleReport rep;
    for (double delta : deltas) {
        double dhat = frame.sigma() * delta;
        ScaleStep step{delta, 0.0, std::sqrt(dhat), 0};
        for (int i = 0; i < samples_per_step; ++i) {
            // tangential window |w2| <= sqrt(dhat), imaginary-normal |y| <= delta
            double ang = 2.0 * kPi * u01(rng);
            double mag = std::sqrt(dhat) * std::sqrt(u01(rng));
            cplx tau = mag * cplx{std::cos(ang), std::sin(ang)};
            double y = delta * u11(rng);

            // root-find the normal coordinate s with rho = 0
            auto f = [&](double s) {
                return d.rho(frame.from_frame(Point{cplx{s, y}, tau}));
            };
            double lo = -8.0 * delta, hi = 8.0 * delta;
            double flo = f(lo), fhi = f(hi);
            if (!(flo > 0.0 && fhi < 0.0)) continue;  // window missed the boundary sheet
            for (int it = 0; it < 80; ++it) {
                double mid = 0.5 * (lo + hi);
                (f(mid) > 0.0 ? lo : hi) = mid;
            }
            double s = 0.5 * (lo + hi);

            Point zb = frame.from_frame(Point{cplx{s, y}, tau});
            Point W = frame.to_normalized(zb);
            Point u = DilationMap{Point{cplx{0, 0}, cplx{0, 0}}, dhat}.apply(W);
            double dev = std::abs(u[0].real() - std::norm(u[1]));
            step.defect = std::max(step.defect, dev);
            step.samples++;
        }
        if (step.samples == 0)
            throw construction_error("no boundary samples found in the scaling window");
        rep.steps.push_back(step);
    }

    rep.decreasing = true;
    for (size_t i = 1; i < rep.steps.size(); ++i)
        if (rep.steps[i].defect > 1.1 * rep.steps[i - 1].defect) rep.decreasing = false;
    rep.final_defect = rep.steps.empty() ? 0.0 : rep.steps.back().defect;
    return rep;
}

Point cayley_ball_to_siegel(const Point& z) {
    cplx den = 1.0 + z[0];
    if (std::abs(den) < 1e-300) throw eval_domain_error("Cayley pole at z1 = -1");
    return Point{(1.0 - z[0]) / den, z[1] / den};
}

Point cayley_siegel_to_ball(const Point& w) {
    cplx den = 1.0 + w[0];
    if (std::abs(den) < 1e-300) throw eval_domain_error("Cayley pole at w1 = -1");
    return Point{(1.0 - w[0]) / den, 2.0 * w[1] / den};
}

}  // namespace biholo
