#include "biholo/limits.hpp"

#include <algorithm>
#include <cmath>

namespace biholo {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Spectral first derivative of a holomorphic map component on a small circle.
cplx circle_derivative(const std::function<cplx(cplx)>& f, cplx z0, double rho) {
    const int N = 32;
    cplx acc = 0.0;
    for (int i = 0; i < N; ++i) {
        double th = 2.0 * kPi * i / N;
        cplx e{std::cos(th), std::sin(th)};
        acc += f(z0 + rho * e) * std::conj(e);
    }
    return acc / (double)N / rho;
}

std::optional<Automorphism> fit_disk(const std::function<Point(const Point&)>& h,
                                     const std::vector<Point>& grid, double tol,
                                     double* residual) {
    Point origin{cplx{0.0, 0.0}};
    cplx A = h(origin)[0];
    if (std::abs(A) >= 1.0) return std::nullopt;
    cplx B = circle_derivative([&](cplx z) { return h(Point(z))[0]; }, 0.0, 0.1);
    cplx phase = B / (1.0 - std::norm(A));
    if (std::abs(std::abs(phase) - 1.0) > 0.1) return std::nullopt;
    phase /= std::abs(phase);
    double theta = std::arg(phase);
    cplx a = -A / phase;  // h(0) = -e^{i theta} a
    if (std::abs(a) >= 1.0) return std::nullopt;
    Automorphism cand = Automorphism::disk_mobius(a, theta);
    double res = 0.0;
    for (const Point& z : grid) res = std::max(res, dist(cand.apply(z), h(z)));
    if (residual) *residual = res;
    if (res > tol) return std::nullopt;
    return cand;
}

std::optional<Automorphism> fit_annulus(const ModelDomain& d,
                                        const std::function<Point(const Point&)>& h,
                                        const std::vector<Point>& grid, double tol,
                                        double* residual) {
    double r = d.annulus_r();
    cplx z0 = std::sqrt(r);
    cplx v = h(Point(z0))[0];
    std::optional<Automorphism> best;
    double best_res = 1e300;
    // rotation candidate
    cplx alpha = v / z0;
    if (std::abs(std::abs(alpha) - 1.0) < 0.1) {
        Automorphism cand = Automorphism::annulus_rotation(r, std::arg(alpha));
        double res = 0.0;
        for (const Point& z : grid) res = std::max(res, dist(cand.apply(z), h(z)));
        if (res < best_res) { best_res = res; best = cand; }
    }
    // flip candidate: h(z) = e^{i theta} r / z
    cplx ph = v * z0 / r;
    if (std::abs(std::abs(ph) - 1.0) < 0.1) {
        Automorphism cand = Automorphism::annulus_flip(r, std::arg(ph));
        double res = 0.0;
        for (const Point& z : grid) res = std::max(res, dist(cand.apply(z), h(z)));
        if (res < best_res) { best_res = res; best = cand; }
    }
    if (residual) *residual = best_res;
    if (!best || best_res > tol) return std::nullopt;
    return best;
}

std::optional<Automorphism> fit_ball(const std::function<Point(const Point&)>& h,
                                     const std::vector<Point>& grid, double tol,
                                     double* residual) {
    // Newton for the zero a of h; then h o phi_a is the unitary factor.
    Point z = grid.front();
    for (const Point& g : grid)
        if (h(g).norm() < h(z).norm()) z = g;
    const double fd = 1e-7;
    for (int it = 0; it < 40; ++it) {
        Point F = h(z);
        if (F.norm() < 1e-13) break;
        cplx J[2][2];
        for (int j = 0; j < 2; ++j) {
            Point zp = z;
            zp[j] += fd;
            Point Fp = h(zp);
            for (int i = 0; i < 2; ++i) J[i][j] = (Fp[i] - F[i]) / fd;
        }
        cplx det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
        if (std::abs(det) < 1e-14) return std::nullopt;
        cplx d0 = (J[1][1] * F[0] - J[0][1] * F[1]) / det;
        cplx d1 = (J[0][0] * F[1] - J[1][0] * F[0]) / det;
        z = Point{z[0] - d0, z[1] - d1};
        if (z.norm() >= 1.0) return std::nullopt;
    }
    Point a = z;
    if (h(a).norm() > 1e-8) return std::nullopt;

    // U = h o phi_a is linear: read columns at t * e_j
    Automorphism inv = Automorphism::ball_aut(a, Mat2{{{cplx{1, 0}, cplx{0, 0}},
                                                       {cplx{0, 0}, cplx{1, 0}}}});
    const double t = 0.3;
    Mat2 U;
    for (int j = 0; j < 2; ++j) {
        Point ej = j == 0 ? Point{cplx{t, 0}, cplx{0, 0}} : Point{cplx{0, 0}, cplx{t, 0}};
        Point col = h(inv.apply(ej));
        U[0][static_cast<size_t>(j)] = col[0] / t;
        U[1][static_cast<size_t>(j)] = col[1] / t;
    }
    // re-unitarize (Gram-Schmidt on columns)
    double n0 = std::sqrt(std::norm(U[0][0]) + std::norm(U[1][0]));
    if (n0 < 1e-12) return std::nullopt;
    U[0][0] /= n0;
    U[1][0] /= n0;
    cplx ip = U[0][1] * std::conj(U[0][0]) + U[1][1] * std::conj(U[1][0]);
    U[0][1] -= ip * U[0][0];
    U[1][1] -= ip * U[1][0];
    double n1 = std::sqrt(std::norm(U[0][1]) + std::norm(U[1][1]));
    if (n1 < 1e-12) return std::nullopt;
    U[0][1] /= n1;
    U[1][1] /= n1;

    Automorphism cand = Automorphism::ball_aut(a, U);
    double res = 0.0;
    for (const Point& g : grid) res = std::max(res, dist(cand.apply(g), h(g)));
    if (residual) *residual = res;
    if (res > tol) return std::nullopt;
    return cand;
}

std::optional<Automorphism> fit_siegel(const std::function<Point(const Point&)>& h,
                                       const std::vector<Point>& grid, double tol,
                                       double* residual) {
    Point P0{cplx{1, 0}, cplx{0, 0}}, P1{cplx{2, 0}, cplx{1, 0}};
    cplx b = h(P0)[1];
    cplx lin = h(P1)[1] - b;
    double lambda = std::abs(lin);
    if (!(lambda > 1e-12)) return std::nullopt;
    double theta = std::arg(lin);
    cplx first = h(P0)[0];  // lambda^2 * 1 + |b|^2 + i s
    double s = (first - lambda * lambda - std::norm(b)).imag();
    Automorphism cand = Automorphism::siegel_aff(lambda, theta, b, s);
    double res = 0.0;
    for (const Point& g : grid) res = std::max(res, dist(cand.apply(g), h(g)));
    if (residual) *residual = res;
    if (res > tol) return std::nullopt;
    return cand;
}

}  // namespace

std::string limit_verdict_name(LimitVerdict v) {
    switch (v) {
    case LimitVerdict::automorphism: return "automorphism";
    case LimitVerdict::constant: return "constant";
    case LimitVerdict::not_converged: return "not_converged";
    }
    return "not_converged";
}

std::optional<Automorphism> fit_automorphism(const ModelDomain& d,
                                             const std::function<Point(const Point&)>& h,
                                             const std::vector<Point>& grid, double tol,
                                             double* residual) {
    switch (d.kind()) {
    case DomainKind::disk: return fit_disk(h, grid, tol, residual);
    case DomainKind::annulus: return fit_annulus(d, h, grid, tol, residual);
    case DomainKind::ball: return fit_ball(h, grid, tol, residual);
    case DomainKind::siegel: return fit_siegel(h, grid, tol, residual);
    default:
        throw usage_error("no closed-form automorphism family for this domain kind");
    }
}

NormalLimitReport normal_limit_classify(const std::vector<Automorphism>& phis,
                                        const CompactExhaustion& exhaustion, double tol) {
    if (phis.size() < 20) throw usage_error("need at least twenty maps to classify a tail");
    NormalLimitReport rep;
    size_t n = phis.size();
    size_t tail_start = n - std::max<size_t>(2, n / 4);

    for (int k = 0; k < exhaustion.levels(); ++k) {
        const auto& grid = exhaustion.grid(k);
        double dev = 0.0;
        for (const Point& z : grid) {
            Point mean{cplx{0, 0}, cplx{0, 0}};
            if (exhaustion.domain().dim() == 1) mean = Point(cplx{0, 0});
            int cnt = 0;
            std::vector<Point> vals;
            for (size_t j = tail_start; j < n; ++j) {
                Point v = phis[j].apply(z);
                vals.push_back(v);
                mean = mean + v;
                cnt++;
            }
            mean = (1.0 / cnt) * mean;
            for (const Point& v : vals) dev = std::max(dev, dist(v, mean));
        }
        rep.level_cauchy.push_back(dev);
    }
    for (double dev : rep.level_cauchy)
        if (dev > tol) {
            rep.verdict = LimitVerdict::not_converged;
            rep.note = "tail is not Cauchy on some exhaustion level at tolerance";
            return rep;
        }

    auto hhat = [&](const Point& z) {
        Point mean = exhaustion.domain().dim() == 1 ? Point(cplx{0, 0})
                                                    : Point{cplx{0, 0}, cplx{0, 0}};
        int cnt = 0;
        for (size_t j = tail_start; j < n; ++j) {
            mean = mean + phis[j].apply(z);
            cnt++;
        }
        return (1.0 / cnt) * mean;
    };

    const auto& fine = exhaustion.grid(exhaustion.levels() - 1);
    double osc = 0.0;
    Point centroid = hhat(fine.front());
    for (const Point& z : fine) osc = std::max(osc, dist(hhat(z), centroid));
    if (osc <= std::max(tol, 10.0 * rep.level_cauchy.back())) {
        rep.verdict = LimitVerdict::constant;
        rep.limit_constant = centroid;
        rep.constant_boundary_rho = exhaustion.domain().rho(centroid);
        rep.note = "tail collapses to a constant";
        return rep;
    }

    auto fitted = fit_automorphism(exhaustion.domain(), hhat, fine,
                                   std::max(100.0 * tol, 1e-8), &rep.fit_residual);
    if (!fitted)
        throw recovery_error("converged tail is neither constant nor a closed-form "
                             "automorphism: dichotomy violated at tolerance");
    rep.verdict = LimitVerdict::automorphism;
    rep.limit_aut = fitted;
    rep.note = "tail converges to an automorphism";
    return rep;
}

RescalingCompositionReport rescaling_composition_check(
    const std::function<Point(const Point&)>& f, const std::vector<Automorphism>& phis,
    const CompactExhaustion& exhaustion, double tol) {
    if (phis.size() < 4) throw usage_error("need at least four maps");
    RescalingCompositionReport rep;
    size_t n = phis.size();
    size_t tail_start = n - std::max<size_t>(2, n / 4);
    const auto& fine = exhaustion.grid(exhaustion.levels() - 1);

    // hypothesis: f o phi_j tail converges on every level.  Finite data can
    // only see a trend, so accept either a tail within tol or consecutive
    // deviations that decay by a clear factor over the run.
    rep.tail_cauchy = 0.0;
    for (int k = 0; k < exhaustion.levels(); ++k) {
        for (const Point& z : exhaustion.grid(k)) {
            Point first = f(phis[tail_start].apply(z));
            for (size_t j = tail_start + 1; j < n; ++j)
                rep.tail_cauchy = std::max(rep.tail_cauchy, dist(f(phis[j].apply(z)), first));
        }
    }
    if (rep.tail_cauchy > tol) {
        std::vector<double> steps;
        const auto& fine0 = exhaustion.grid(exhaustion.levels() - 1);
        for (size_t j = 0; j + 1 < n; ++j) {
            double dmax = 0.0;
            for (const Point& z : fine0)
                dmax = std::max(dmax, dist(f(phis[j + 1].apply(z)), f(phis[j].apply(z))));
            steps.push_back(dmax);
        }
        bool decaying = steps.back() <= 0.05 * steps.front();
        for (size_t j = 0; j + 1 < steps.size(); ++j)
            if (steps[j + 1] > 1.2 * steps[j]) { decaying = false; break; }
        if (!decaying)
            throw recovery_error("composition check hypothesis failed: the f o phi_j "
                                 "tail is not Cauchy on the exhaustion at tolerance");
    }

    // limit g = tail average of f o phi_j; automorphism evidence test
    auto ghat = [&](const Point& z) {
        Point mean = exhaustion.domain().dim() == 1 ? Point(cplx{0, 0})
                                                    : Point{cplx{0, 0}, cplx{0, 0}};
        int cnt = 0;
        for (size_t j = tail_start; j < n; ++j) {
            mean = mean + f(phis[j].apply(z));
            cnt++;
        }
        return (1.0 / cnt) * mean;
    };
    std::vector<Point> gvals;
    for (const Point& z : fine) gvals.push_back(ghat(z));
    try {
        auto gfit = fit_automorphism(exhaustion.domain(), ghat, fine,
                                     std::max(100.0 * tol, 1e-8), &rep.g_fit_residual);
        rep.g_is_automorphism = gfit.has_value();
    } catch (const usage_error&) {
        rep.g_is_automorphism = false;  // no closed-form family for this domain kind
    }

    // h_k = f o phi_{k+1} o phi_k^{-1} on the grids; greedy clustering on the
    // fine grid picks the largest convergent subsequence
    std::vector<std::vector<Point>> hrows;
    std::vector<size_t> hidx;
    for (size_t k = 0; k + 1 < n; ++k) {
        Automorphism trans = Automorphism::compose(phis[k + 1], phis[k].inverse());
        std::vector<Point> row;
        bool ok = true;
        for (const Point& z : fine) {
            Point w = trans.apply(z);
            if (exhaustion.domain().rho(w) >= 0.0) { ok = false; break; }
            row.push_back(f(w));
        }
        if (!ok) continue;
        hrows.push_back(std::move(row));
        hidx.push_back(k);
    }
    if (hrows.empty())
        throw recovery_error("composition check: no h_k stays inside the domain on "
                             "the fine grid");
    auto row_dist = [&](const std::vector<Point>& a, const std::vector<Point>& b) {
        double dmax = 0.0;
        for (size_t g = 0; g < a.size(); ++g) dmax = std::max(dmax, dist(a[g], b[g]));
        return dmax;
    };
    double cluster_tol = std::max(10.0 * tol, 1e-9);
    size_t best_seed = 0, best_count = 0;
    for (size_t i = 0; i < hrows.size(); ++i) {
        size_t count = 0;
        for (size_t j = 0; j < hrows.size(); ++j)
            if (row_dist(hrows[i], hrows[j]) <= cluster_tol) count++;
        // prefer later seeds at equal size: tail subsequences
        if (count >= best_count) { best_count = count; best_seed = i; }
    }
    std::vector<size_t> members;
    for (size_t j = 0; j < hrows.size(); ++j)
        if (row_dist(hrows[best_seed], hrows[j]) <= cluster_tol) members.push_back(j);
    rep.h_cluster_size = static_cast<int>(members.size());
    for (size_t a = 0; a < members.size(); ++a)
        for (size_t b = a + 1; b < members.size(); ++b)
            rep.h_cluster_diameter =
                std::max(rep.h_cluster_diameter, row_dist(hrows[members[a]], hrows[members[b]]));

    // measured distance of the subsequential h limit to the identity, per level
    for (int k = 0; k < exhaustion.levels(); ++k) {
        const auto& grid = exhaustion.grid(k);
        double dev = 0.0;
        for (const Point& z : grid) {
            Point mean = exhaustion.domain().dim() == 1 ? Point(cplx{0, 0})
                                                        : Point{cplx{0, 0}, cplx{0, 0}};
            int cnt = 0;
            for (size_t m : members) {
                size_t kk = hidx[m];
                Automorphism trans = Automorphism::compose(phis[kk + 1], phis[kk].inverse());
                Point w = trans.apply(z);
                if (exhaustion.domain().rho(w) >= 0.0) continue;
                mean = mean + f(w);
                cnt++;
            }
            if (cnt == 0) continue;
            mean = (1.0 / cnt) * mean;
            dev = std::max(dev, dist(mean, z));
        }
        rep.h_level_dev.push_back(dev);
    }

    // grid evidence for f itself when g is an automorphism
    if (rep.g_is_automorphism) {
        rep.f_injective_on_grid = true;
        std::vector<Point> fvals;
        for (const Point& z : fine) fvals.push_back(f(z));
        for (size_t i = 0; i < fine.size() && rep.f_injective_on_grid; ++i)
            for (size_t j = i + 1; j < fine.size(); ++j)
                if (dist(fine[i], fine[j]) > 1e-3 && dist(fvals[i], fvals[j]) < tol) {
                    rep.f_injective_on_grid = false;
                    break;
                }
        for (const Point& w : gvals) {
            double mind = 1e300;
            for (const Point& v : fvals) mind = std::min(mind, dist(v, w));
            rep.f_surjectivity_gap = std::max(rep.f_surjectivity_gap, mind);
        }
    }

    double fine_dev = rep.h_level_dev.empty() ? 0.0 : rep.h_level_dev.back();
    rep.note = fine_dev <= cluster_tol
                   ? "measured subsequential h limit agrees with the identity on the grids"
                   : "measured subsequential h limit differs from the identity on the grids; "
                     "the limit can differ from the identity by an automorphism and is "
                     "reported as measured, not asserted";
    return rep;
}

}  // namespace biholo
