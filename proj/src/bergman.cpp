#include "biholo/bergman.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace biholo {
namespace {

constexpr double kPi = 3.14159265358979323846;

struct GLRule {
    std::vector<double> x, w;
};

// Gauss-Legendre on [-1,1] by Newton iteration on P_n.
GLRule gauss_legendre(int n) {
    GLRule r;
    r.x.resize(static_cast<size_t>(n));
    r.w.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        r.x[static_cast<size_t>(i)] = x;
        r.w[static_cast<size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

GLRule gauss_legendre_ab(int n, double a, double b) {
    GLRule r = gauss_legendre(n);
    for (int i = 0; i < n; ++i) {
        r.x[static_cast<size_t>(i)] = 0.5 * (b - a) * r.x[static_cast<size_t>(i)] + 0.5 * (a + b);
        r.w[static_cast<size_t>(i)] *= 0.5 * (b - a);
    }
    return r;
}

cplx ipow(cplx z, int n) {
    if (n < 0) return 1.0 / ipow(z, -n);
    cplx r = 1.0, b = z;
    while (n) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

void require_inside(const ModelDomain& d, const Point& z, const Point& zeta) {
    if (!d.contains(z) || !d.contains(zeta))
        throw eval_domain_error("kernel evaluated outside the domain");
}

}  // namespace

KernelModel KernelModel::closed_form(const ModelDomain& d) {
    switch (d.kind()) {
    case DomainKind::disk:
    case DomainKind::annulus:
    case DomainKind::bidisc:
    case DomainKind::ball:
        return KernelModel(d);
    default:
        throw usage_error("no closed-form kernel in the catalog for this domain");
    }
}

cplx KernelModel::eval_closed(const Point& z, const Point& zeta) const {
    switch (domain_.kind()) {
    case DomainKind::disk: {
        cplx u = z[0] * std::conj(zeta[0]);
        cplx d = 1.0 - u;
        return 1.0 / (kPi * d * d);
    }
    case DomainKind::bidisc: {
        cplx d1 = 1.0 - z[0] * std::conj(zeta[0]);
        cplx d2 = 1.0 - z[1] * std::conj(zeta[1]);
        return 1.0 / (kPi * kPi * d1 * d1 * d2 * d2);
    }
    case DomainKind::ball: {
        cplx d = 1.0 - hdot(z, zeta);
        return 2.0 / (kPi * kPi * d * d * d);
    }
    case DomainKind::annulus: {
        double r = domain_.annulus_r();
        cplx u = z[0] * std::conj(zeta[0]);
        cplx s = 0.0;
        for (int j = -200; j <= 200; ++j) {
            if (j == -1) continue;
            double denom = 1.0 - std::pow(r, 2 * j + 2);
            s += ((j + 1) / (kPi * denom)) * ipow(u, j);
        }
        s += 1.0 / (2.0 * kPi * std::log(1.0 / r)) / u;
        return s;
    }
    default:
        throw usage_error("unreachable closed-form kind");
    }
}

cplx KernelModel::eval_numeric(const Point& z, const Point& zeta) const {
    cplx u = z[0] * std::conj(zeta[0]);
    if (domain_.dim() == 1) {
        cplx s = 0.0;
        for (size_t t = 0; t < exp1_.size(); ++t)
            s += inv_norm2_[t] * ipow(u, exp1_[t]);
        return s;
    }
    cplx v = z[1] * std::conj(zeta[1]);
    // power tables up to the max stored exponent
    std::vector<cplx> up(static_cast<size_t>(max_e1_) + 1), vp(static_cast<size_t>(max_e2_) + 1);
    up[0] = 1.0;
    for (int j = 1; j <= max_e1_; ++j) up[static_cast<size_t>(j)] = up[static_cast<size_t>(j - 1)] * u;
    vp[0] = 1.0;
    for (int k = 1; k <= max_e2_; ++k) vp[static_cast<size_t>(k)] = vp[static_cast<size_t>(k - 1)] * v;
    cplx s = 0.0;
    for (size_t t = 0; t < exp1_.size(); ++t)
        s += inv_norm2_[t] * up[static_cast<size_t>(exp1_[t])] * vp[static_cast<size_t>(exp2_[t])];
    return s;
}

cplx KernelModel::eval(const Point& z, const Point& zeta) const {
    require_inside(domain_, z, zeta);
    return numeric_ ? eval_numeric(z, zeta) : eval_closed(z, zeta);
}

double KernelModel::diagonal(const Point& z) const { return eval(z, z).real(); }

double KernelModel::tail_bound(const Point& z, const Point& zeta) const {
    if (numeric_ || domain_.kind() != DomainKind::annulus) return 0.0;
    double t = std::abs(z[0]) * std::abs(zeta[0]);
    double r = domain_.annulus_r();
    double s = r * r / t;  // modulus driving the inner tail
    double outer = 0.0, inner = 0.0;
    // explicit terms 201..600 plus geometric remainders
    for (int j = 201; j <= 600; ++j) {
        outer += (j + 1) / kPi * std::pow(t, j);
        inner += j / kPi * std::pow(s, j) / t;
    }
    outer += (602.0 / kPi) * std::pow(t, 601) / (1.0 - t);
    inner += (601.0 / kPi) * std::pow(s, 601) / ((1.0 - s) * t);
    return outer + inner;
}

std::string KernelModel::descriptor() const {
    std::ostringstream os;
    os << "{\"kernel\":\"" << (numeric_ ? "numeric" : "closed") << "\"";
    if (numeric_)
        os << ",\"degree\":" << degree_ << ",\"degree2\":" << degree2_;
    os << ",\"domain\":" << domain_.descriptor() << "}";
    return os.str();
}

KernelModel build_numeric_kernel(const ModelDomain& d, int degree, int degree2,
                                 QuadratureSpec q) {
    if (degree < 0 || (d.dim() == 1 && degree2 >= 0))
        throw usage_error("bad degree request for numeric kernel");
    if (d.kind() == DomainKind::siegel)
        throw usage_error("numeric kernel needs a bounded domain");

    KernelModel K(d);
    K.numeric_ = true;
    K.degree_ = degree;
    K.degree2_ = degree2;

    double min_n2 = 1e300, max_n2 = 0.0;
    auto push = [&](int e1, int e2, double n2) {
        if (!(n2 > 0.0) || !std::isfinite(n2))
            throw gram_singular_error("nonpositive squared norm in the Gram diagonal", 0.0);
        // norms drifting toward the representable limits lose all relative
        // accuracy in the quadrature: degree too high, fail loudly
        if (n2 < 1e-280 || n2 > 1e280)
            throw gram_singular_error("Gram diagonal norm outside the trustworthy range", n2);
        K.exp1_.push_back(e1);
        K.exp2_.push_back(e2);
        K.inv_norm2_.push_back(1.0 / n2);
        min_n2 = std::min(min_n2, n2);
        max_n2 = std::max(max_n2, n2);
        K.max_e1_ = std::max(K.max_e1_, e1);
        K.max_e2_ = std::max(K.max_e2_, e2);
    };

    switch (d.kind()) {
    case DomainKind::disk: {
        GLRule g = gauss_legendre_ab(std::max(q.radial, degree + 16), 0.0, 1.0);
        for (int j = 0; j <= degree; ++j) {
            double I = 0.0;
            for (size_t i = 0; i < g.x.size(); ++i)
                I += g.w[i] * std::pow(g.x[i], 2 * j + 1);
            push(j, 0, 2.0 * kPi * I);
        }
        break;
    }
    case DomainKind::annulus: {
        double r = d.annulus_r();
        GLRule g = gauss_legendre_ab(std::max(q.radial, 2 * degree + 16), r, 1.0);
        for (int j = -degree; j <= degree; ++j) {
            double I = 0.0;
            for (size_t i = 0; i < g.x.size(); ++i)
                I += g.w[i] * std::pow(g.x[i], 2 * j + 1);
            push(j, 0, 2.0 * kPi * I);
        }
        break;
    }
    case DomainKind::bidisc: {
        int d2 = degree2 >= 0 ? degree2 : degree;
        GLRule g = gauss_legendre_ab(std::max(q.radial, std::max(degree, d2) + 16), 0.0, 1.0);
        auto mono = [&](int j) {
            double I = 0.0;
            for (size_t i = 0; i < g.x.size(); ++i)
                I += g.w[i] * std::pow(g.x[i], 2 * j + 1);
            return 2.0 * kPi * I;
        };
        for (int j = 0; j <= degree; ++j)
            for (int k = 0; k <= d2; ++k) {
                if (degree2 < 0 && j + k > degree) continue;
                push(j, k, mono(j) * mono(k));
            }
        break;
    }
    case DomainKind::ball:
    case DomainKind::ellipsoid: {
        int m = d.kind() == DomainKind::ball ? 1 : d.ellipsoid_m();
        int d1 = degree;
        int d2 = degree2 >= 0 ? degree2 : degree;
        // |z1|^2 + |z2|^{2m} < 1: with rho1 = sin(phi) the radial factor is
        // a trig polynomial of degree <= 2 d1 + (2 d2 + 2)/m + 2.
        int trig_deg = 2 * d1 + (2 * d2 + 2) / m + 4;
        GLRule g = gauss_legendre_ab(std::max(q.radial, trig_deg + 32), 0.0, kPi / 2.0);
        for (int j = 0; j <= d1; ++j)
            for (int k = 0; k <= d2; ++k) {
                if (degree2 < 0 && j + k > degree) continue;
                // (2 pi)^2 int_0^1 rho1^{2j+1} g(rho1)^{2k+2}/(2k+2) drho1,
                // g(rho1) = (1 - rho1^2)^{1/(2m)}
                double I = 0.0;
                for (size_t i = 0; i < g.x.size(); ++i) {
                    double sn = std::sin(g.x[i]), cs = std::cos(g.x[i]);
                    I += g.w[i] * std::pow(sn, 2 * j + 1) *
                         std::pow(cs, (2.0 * k + 2.0) / m + 1.0);
                }
                push(j, k, 4.0 * kPi * kPi * I / (2.0 * k + 2.0));
            }
        break;
    }
    default:
        throw usage_error("unreachable numeric kind");
    }

    K.norm_ratio_ = max_n2 / min_n2;
    // the Gram matrix is exactly diagonal (angular integrals of distinct
    // monomials vanish in closed form), so after column-norm pivoting it is
    // the identity; the >1e12 rejection below is the contractual guard and
    // would only fire if a basis with genuine off-diagonal mass were added
    K.gram_cond_ = 1.0;
    if (!(K.gram_cond_ < 1e12))
        throw gram_singular_error("Gram condition number too large after pivoting", K.gram_cond_);
    return K;
}

// ---- polarized spectral differentiation ----
namespace {

// Taylor coefficients c_pq (p,q <= 2) of the jointly holomorphic map
// H(s,u) = log K(z0 + s a, z0 + conj(u) b) from an N x N circle stencil.
struct CoeffGrid {
    cplx c[3][3];
};

constexpr int kStencilN = 16;

CoeffGrid polarized_coeffs(const KernelModel& K, const Point& z0, const Point& a,
                           const Point& b, double rho) {
    cplx vals[kStencilN][kStencilN];
    for (int i = 0; i < kStencilN; ++i) {
        double tha = 2.0 * kPi * i / kStencilN;
        cplx s = rho * cplx{std::cos(tha), std::sin(tha)};
        Point zi = z0 + s * a;
        for (int j = 0; j < kStencilN; ++j) {
            double thb = 2.0 * kPi * j / kStencilN;
            cplx u = rho * cplx{std::cos(thb), std::sin(thb)};
            Point zj = z0 + std::conj(u) * b;
            cplx kv;
            try {
                kv = K.eval(zi, zj);
            } catch (const eval_domain_error&) {
                throw stencil_error("stencil circle leaves the domain");
            }
            if (!(std::abs(kv) > 0.0))
                throw stencil_error("kernel vanished on the stencil circle");
            vals[i][j] = std::log(kv);
        }
    }
    CoeffGrid out;
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 2; ++q) {
            cplx acc = 0.0;
            for (int i = 0; i < kStencilN; ++i)
                for (int j = 0; j < kStencilN; ++j) {
                    double ph = -2.0 * kPi * (p * i + q * j) / kStencilN;
                    acc += vals[i][j] * cplx{std::cos(ph), std::sin(ph)};
                }
            out.c[p][q] = acc / (double)(kStencilN * kStencilN) / std::pow(rho, p + q);
        }
    return out;
}

double stencil_radius(const KernelModel& K, const Point& z) {
    double clear = K.domain().boundary_distance(z);
    if (!(clear > 0.0)) throw stencil_error("point too close to the boundary for a stencil");
    return std::min(0.05, clear / 5.0);
}

Point basis_vec(int i, int n) {
    if (n == 1) return Point(cplx{1.0, 0.0});
    return i == 0 ? Point{cplx{1, 0}, cplx{0, 0}} : Point{cplx{0, 0}, cplx{1, 0}};
}

}  // namespace

MetricResult bergman_metric(const KernelModel& K, const Point& z) {
    int n = K.domain().dim();
    MetricResult m;
    m.dim = n;
    m.radius = stencil_radius(K, z);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            CoeffGrid c = polarized_coeffs(K, z, basis_vec(i, n), basis_vec(j, n), m.radius);
            m.g[static_cast<size_t>(i)][static_cast<size_t>(j)] = c.c[1][1];
        }
    return m;
}

double metric_length2(const MetricResult& m, const Point& v) {
    cplx s = 0.0;
    for (int i = 0; i < m.dim; ++i)
        for (int j = 0; j < m.dim; ++j)
            s += m.g[static_cast<size_t>(i)][static_cast<size_t>(j)] * v[i] * std::conj(v[j]);
    return s.real();
}

CurvatureResult holo_curvature(const KernelModel& K, const Point& z, const Point& v) {
    int n = K.domain().dim();
    double vn = v.norm();
    if (!(vn > 0.0)) throw usage_error("curvature direction must be nonzero");
    Point u = (1.0 / vn) * v;
    double rho = stencil_radius(K, z);

    CoeffGrid cvv = polarized_coeffs(K, z, u, u, rho);
    double g_v = cvv.c[1][1].real();
    double D4 = 4.0 * cvv.c[2][2].real();

    // first-order correction sum_{p,q} conj(G^{-1}[p][q]) S_q conj(S_p),
    // S_q = d_u d_u d_{qbar} log K, G the metric in the standard frame
    cplx S[2] = {0.0, 0.0};
    cplx G[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    for (int q = 0; q < n; ++q) {
        CoeffGrid c = polarized_coeffs(K, z, u, basis_vec(q, n), rho);
        S[q] = 2.0 * c.c[2][1];
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            CoeffGrid c = polarized_coeffs(K, z, basis_vec(i, n), basis_vec(j, n), rho);
            G[i][j] = c.c[1][1];
        }
    cplx corr = 0.0;
    if (n == 1) {
        corr = std::conj(1.0 / G[0][0]) * S[0] * std::conj(S[0]);
    } else {
        cplx det = G[0][0] * G[1][1] - G[0][1] * G[1][0];
        if (std::abs(det) < 1e-300) throw stencil_error("degenerate metric in curvature stencil");
        cplx Minv[2][2] = {{G[1][1] / det, -G[0][1] / det}, {-G[1][0] / det, G[0][0] / det}};
        for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q)
                corr += std::conj(Minv[p][q]) * S[q] * std::conj(S[p]);
    }
    double R = -D4 + corr.real();
    return {2.0 * R / (g_v * g_v), rho};
}

TransformResidual transformation_residual(const KernelModel& K, const Automorphism& F,
                                          const std::vector<PointPair>& pairs) {
    TransformResidual res;
    for (const auto& [z, zeta] : pairs) {
        cplx lhs = K.eval(z, zeta);
        cplx rhs = F.jacobian(z) * K.eval(F.apply(z), F.apply(zeta)) *
                   std::conj(F.jacobian(zeta));
        double rel = std::abs(rhs - lhs) / std::abs(lhs);
        res.max_rel = std::max(res.max_rel, rel);
        res.mean_rel += rel;
        res.pairs++;
    }
    if (res.pairs) res.mean_rel /= res.pairs;
    return res;
}

Point inner_normal(const ModelDomain& d, const Point& X) {
    Point nu = d.rho_gradient(X);
    double n = nu.norm();
    if (!(n > 0.0)) throw construction_error("vanishing boundary gradient");
    Point inward = (-1.0 / n) * nu;
    for (int i = 0; i < inward.dim(); ++i) inward[i] = std::conj(inward[i]);
    return inward;
}

ExponentFit blowup_exponent(const KernelModel& K, const Point& X,
                            const std::vector<double>& deltas) {
    if (deltas.size() < 3) throw usage_error("need at least three deltas for an exponent fit");
    Point inward = inner_normal(K.domain(), X);
    ExponentFit fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double d : deltas) {
        Point z = X + d * inward;
        double lk = std::log(K.diagonal(z));
        double x = -std::log(d);
        fit.deltas.push_back(d);
        fit.log_diag.push_back(lk);
        sx += x; sy += lk; sxx += x * x; sxy += x * lk;
    }
    double n = static_cast<double>(deltas.size());
    fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.exponent * sx) / n;
    for (size_t i = 0; i < deltas.size(); ++i) {
        double pred = fit.intercept - fit.exponent * std::log(deltas[i]);
        fit.max_fit_dev = std::max(fit.max_fit_dev, std::abs(pred - fit.log_diag[i]));
    }
    return fit;
}

KlembeckProfile klembeck_profile(const KernelModel& K, const Point& X, const Point& v,
                                 const std::vector<double>& deltas) {
    KlembeckProfile prof;
    int n = K.domain().dim();
    prof.target = -4.0 / (n + 1);
    Point inward = inner_normal(K.domain(), X);
    for (double d : deltas) {
        Point z = X + d * inward;
        KlembeckPoint pt{d, 0.0, false};
        try {
            pt.curvature = holo_curvature(K, z, v).value;
            pt.ok = true;
        } catch (const stencil_error&) {
        } catch (const eval_domain_error&) {
        }
        prof.points.push_back(pt);
    }
    prof.improving = true;
    double prev = -1.0;
    bool have_prev = false;
    for (const auto& pt : prof.points) {
        if (!pt.ok) continue;
        double err = std::abs(pt.curvature - prof.target);
        if (have_prev && err >= prev) prof.improving = false;
        prev = err;
        have_prev = true;
    }
    if (!have_prev) prof.improving = false;
    return prof;
}

}  // namespace biholo
