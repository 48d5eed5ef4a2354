#include "biholo/automorphism.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace biholo {

using json = nlohmann::json;
using namespace aut;

namespace {

constexpr double kUnitaryTol = 1e-10;

cplx eith(double t) { return std::polar(1.0, t); }

Mat2 mat_mul(const Mat2& A, const Mat2& B) {
    Mat2 C{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) C[i][j] = A[i][0] * B[0][j] + A[i][1] * B[1][j];
    return C;
}

Mat2 adjoint(const Mat2& A) {
    return {{{std::conj(A[0][0]), std::conj(A[1][0])}, {std::conj(A[0][1]), std::conj(A[1][1])}}};
}

Point mat_apply(const Mat2& A, const Point& z) {
    return {A[0][0] * z[0] + A[0][1] * z[1], A[1][0] * z[0] + A[1][1] * z[1]};
}

cplx mat_det(const Mat2& A) { return A[0][0] * A[1][1] - A[0][1] * A[1][0]; }

bool is_unitary(const Mat2& U) {
    const Mat2 P = mat_mul(adjoint(U), U);
    return std::abs(P[0][0] - 1.0) < kUnitaryTol && std::abs(P[1][1] - 1.0) < kUnitaryTol &&
           std::abs(P[0][1]) < kUnitaryTol && std::abs(P[1][0]) < kUnitaryTol;
}

// phi_a(z) = (a - P_a z - s Q_a z) / (1 - <z,a>), an involution of the ball.
struct BallInvolution {
    Point a;
    Mat2 A;  // P_a + s_a Q_a

    explicit BallInvolution(const Point& a_) : a(a_) {
        const double na2 = a.norm2();
        const double s = std::sqrt(1.0 - na2);
        Mat2 P{};
        if (na2 > 0) {
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) P[i][j] = a[i] * std::conj(a[j]) / na2;
        }
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) A[i][j] = P[i][j] + s * ((i == j ? 1.0 : 0.0) - P[i][j]);
    }
    Point apply(const Point& z) const {
        const cplx d = 1.0 - hdot(z, a);
        const Point Az = mat_apply(A, z);
        return {(a[0] - Az[0]) / d, (a[1] - Az[1]) / d};
    }
    // d/dz_j of component i: (-A_ij d + (a - Az)_i conj(a_j)) / d^2
    Mat2 jacobian_matrix(const Point& z) const {
        const cplx d = 1.0 - hdot(z, a);
        const Point Az = mat_apply(A, z);
        Mat2 J{};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                J[i][j] = (-A[i][j] * d + (a[i] - Az[i]) * std::conj(a[j])) / (d * d);
        return J;
    }
};

}  // namespace

Automorphism Automorphism::disk_mobius(cplx a, double theta) {
    if (std::abs(a) >= 1.0) throw construction_error("disk Mobius requires |a| < 1");
    return {DiskMobius{a, theta}, ModelDomain::disk()};
}

Automorphism Automorphism::annulus_rotation(double r, double theta) {
    return {AnnulusRot{theta, false, r}, ModelDomain::annulus(r)};
}

Automorphism Automorphism::annulus_flip(double r, double theta) {
    return {AnnulusRot{theta, true, r}, ModelDomain::annulus(r)};
}

Automorphism Automorphism::ball_aut(const Point& a, const Mat2& U) {
    if (a.dim() != 2 || a.norm() >= 1.0) throw construction_error("ball automorphism requires a in the open ball");
    if (!is_unitary(U)) throw construction_error("ball automorphism requires a unitary matrix");
    return {BallAut{a, U}, ModelDomain::ball()};
}

Automorphism Automorphism::siegel_aff(double lambda, double theta, cplx b, double s) {
    if (!(lambda > 0.0)) throw construction_error("Siegel dilation requires lambda > 0");
    return {SiegelAff{lambda, theta, b, s}, ModelDomain::siegel()};
}

Automorphism Automorphism::identity(const ModelDomain& d) {
    switch (d.kind()) {
        case DomainKind::disk: return disk_mobius(0.0, 0.0);
        case DomainKind::annulus: return annulus_rotation(d.annulus_r(), 0.0);
        case DomainKind::ball: return ball_aut(Point(0.0, 0.0), Mat2{{{1.0, 0.0}, {0.0, 1.0}}});
        case DomainKind::siegel: return siegel_aff(1.0, 0.0, 0.0, 0.0);
        default: throw usage_error("no automorphism catalog for this domain kind");
    }
}

Point Automorphism::apply(const Point& z) const {
    if (auto* m = as_disk()) {
        return Point(eith(m->theta) * (z[0] - m->a) / (1.0 - std::conj(m->a) * z[0]));
    }
    if (auto* m = as_annulus()) {
        if (m->flip) return Point(eith(m->theta) * m->r / z[0]);
        return Point(eith(m->theta) * z[0]);
    }
    if (auto* m = as_ball()) {
        return mat_apply(m->U, BallInvolution(m->a).apply(z));
    }
    auto* m = as_siegel();
    const cplx rot = m->lambda * eith(m->theta);
    return {m->lambda * m->lambda * z[0] + 2.0 * rot * z[1] * std::conj(m->b) +
                std::norm(m->b) + cplx(0.0, m->s),
            rot * z[1] + m->b};
}

Automorphism Automorphism::inverse() const {
    if (auto* m = as_disk()) return disk_mobius(-eith(m->theta) * m->a, -m->theta);
    if (auto* m = as_annulus()) {
        if (m->flip) return annulus_flip(m->r, m->theta);
        return annulus_rotation(m->r, -m->theta);
    }
    if (auto* m = as_ball()) {
        // (U phi_a)^{-1} = phi_a U^* = U^* phi_{U a}
        return ball_aut(mat_apply(m->U, m->a), adjoint(m->U));
    }
    auto* m = as_siegel();
    const double li = 1.0 / m->lambda;
    const cplx bi = -li * std::conj(eith(m->theta)) * m->b;
    return siegel_aff(li, -m->theta, bi, -m->s * li * li);
}

cplx Automorphism::jacobian(const Point& z) const {
    if (auto* m = as_disk()) {
        const cplx d = 1.0 - std::conj(m->a) * z[0];
        return eith(m->theta) * (1.0 - std::norm(m->a)) / (d * d);
    }
    if (auto* m = as_annulus()) {
        if (m->flip) return -eith(m->theta) * m->r / (z[0] * z[0]);
        return eith(m->theta);
    }
    if (auto* m = as_ball()) {
        return mat_det(m->U) * mat_det(BallInvolution(m->a).jacobian_matrix(z));
    }
    auto* m = as_siegel();
    return m->lambda * m->lambda * m->lambda * eith(m->theta);
}

Automorphism Automorphism::compose(const Automorphism& a, const Automorphism& b) {
    if (!(a.domain_ == b.domain_)) throw usage_error("compose_aut: mismatched domains");
    if (auto* ma = a.as_disk()) {
        auto* mb = b.as_disk();
        // Moebius matrices: [e^{i t}, -e^{i t} a; -conj(a), 1]
        const Mat2 Ma{{{eith(ma->theta), -eith(ma->theta) * ma->a}, {-std::conj(ma->a), 1.0}}};
        const Mat2 Mb{{{eith(mb->theta), -eith(mb->theta) * mb->a}, {-std::conj(mb->a), 1.0}}};
        const Mat2 M = mat_mul(Ma, Mb);
        // extract (a, theta): zero at a0 = -M12/M11; derivative fixes the phase
        const cplx a0 = -M[0][1] / M[0][0];
        const cplx den = M[1][0] * a0 + M[1][1];
        const cplx phase = mat_det(M) / (den * den) * (1.0 - std::norm(a0));
        return disk_mobius(a0, std::arg(phase));
    }
    if (auto* ma = a.as_annulus()) {
        auto* mb = b.as_annulus();
        if (!ma->flip && !mb->flip) return annulus_rotation(ma->r, ma->theta + mb->theta);
        if (ma->flip && !mb->flip) return annulus_flip(ma->r, ma->theta - mb->theta);
        if (!ma->flip && mb->flip) return annulus_flip(ma->r, ma->theta + mb->theta);
        return annulus_rotation(ma->r, ma->theta - mb->theta);
    }
    if (a.as_ball()) {
        // F = a o b = U' phi_{a'} with a' = F^{-1}(0); U' = F o phi_{a'} is
        // linear (Cartan), so columns come from evaluating at scaled basis vectors.
        const Automorphism ainv = a.inverse(), binv = b.inverse();
        const Point a0 = binv.apply(ainv.apply(Point(0.0, 0.0)));
        const BallInvolution inv(a0);
        auto F = [&](const Point& z) { return a.apply(b.apply(z)); };
        Mat2 U{};
        for (int j = 0; j < 2; ++j) {
            Point e(j == 0 ? 0.5 : 0.0, j == 1 ? 0.5 : 0.0);
            const Point col = F(inv.apply(e));
            U[0][j] = 2.0 * col[0];
            U[1][j] = 2.0 * col[1];
        }
        // Gram-Schmidt to kill roundoff drift before the unitarity gate
        double n0 = std::sqrt(std::norm(U[0][0]) + std::norm(U[1][0]));
        U[0][0] /= n0;
        U[1][0] /= n0;
        const cplx ip = U[0][1] * std::conj(U[0][0]) + U[1][1] * std::conj(U[1][0]);
        U[0][1] -= ip * U[0][0];
        U[1][1] -= ip * U[1][0];
        double n1 = std::sqrt(std::norm(U[0][1]) + std::norm(U[1][1]));
        U[0][1] /= n1;
        U[1][1] /= n1;
        return ball_aut(a0, U);
    }
    auto* ma = a.as_siegel();
    auto* mb = b.as_siegel();
    const double lam = ma->lambda * mb->lambda;
    const double th = ma->theta + mb->theta;
    const cplx rot_a = ma->lambda * eith(ma->theta);
    const cplx bc = rot_a * mb->b + ma->b;
    const double sc = ma->lambda * ma->lambda * mb->s +
                      2.0 * ma->lambda * std::imag(eith(ma->theta) * mb->b * std::conj(ma->b)) +
                      ma->s;
    return siegel_aff(lam, th, bc, sc);
}

std::string Automorphism::descriptor() const {
    json j;
    if (auto* m = as_disk()) {
        j["kind"] = "disk_mobius";
        j["a"] = {m->a.real(), m->a.imag()};
        j["theta"] = m->theta;
    } else if (auto* m = as_annulus()) {
        j["kind"] = m->flip ? "annulus_flip" : "annulus_rotation";
        j["theta"] = m->theta;
        j["r"] = m->r;
    } else if (auto* m = as_ball()) {
        j["kind"] = "ball";
        j["a"] = {m->a[0].real(), m->a[0].imag(), m->a[1].real(), m->a[1].imag()};
        json U = json::array();
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k) U.push_back({m->U[i][k].real(), m->U[i][k].imag()});
        j["U"] = U;
    } else if (auto* m = as_siegel()) {
        j["kind"] = "siegel_affine";
        j["lambda"] = m->lambda;
        j["theta"] = m->theta;
        j["b"] = {m->b.real(), m->b.imag()};
        j["s"] = m->s;
    }
    return j.dump();
}

Automorphism Automorphism::from_descriptor(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw usage_error(std::string("bad automorphism descriptor: ") + e.what());
    }
    std::string kind = j.value("kind", "");
    try {
        if (kind == "disk_mobius") {
            auto a = j.at("a");
            return disk_mobius(cplx{a.at(0).get<double>(), a.at(1).get<double>()},
                               j.at("theta").get<double>());
        }
        if (kind == "annulus_rotation")
            return annulus_rotation(j.at("r").get<double>(), j.at("theta").get<double>());
        if (kind == "annulus_flip")
            return annulus_flip(j.at("r").get<double>(), j.at("theta").get<double>());
        if (kind == "ball") {
            auto a = j.at("a");
            Point pa{cplx{a.at(0).get<double>(), a.at(1).get<double>()},
                     cplx{a.at(2).get<double>(), a.at(3).get<double>()}};
            auto Uj = j.at("U");
            Mat2 U;
            for (int i = 0; i < 2; ++i)
                for (int k = 0; k < 2; ++k) {
                    auto e = Uj.at(static_cast<size_t>(2 * i + k));
                    U[static_cast<size_t>(i)][static_cast<size_t>(k)] =
                        cplx{e.at(0).get<double>(), e.at(1).get<double>()};
                }
            return ball_aut(pa, U);
        }
        if (kind == "siegel_affine") {
            auto b = j.at("b");
            return siegel_aff(j.at("lambda").get<double>(), j.at("theta").get<double>(),
                              cplx{b.at(0).get<double>(), b.at(1).get<double>()},
                              j.at("s").get<double>());
        }
    } catch (const json::exception& e) {
        throw usage_error(std::string("bad automorphism descriptor: ") + e.what());
    }
    throw usage_error("unknown automorphism kind in descriptor: " + kind);
}

OrbitReport orbit(const ModelDomain& d, const std::vector<Automorphism>& auts, const Point& P,
                  double threshold) {
    if (auts.empty()) throw usage_error("orbit: empty automorphism sequence");
    if (!d.contains(P)) throw usage_error("orbit: base point not in domain");
    OrbitReport rep;
    for (auto& a : auts) {
        const Point q = a.apply(P);
        rep.points.push_back(q);
        rep.boundary_distances.push_back(d.boundary_distance(q));
    }
    const size_t n = rep.points.size();
    const size_t tail = std::min<size_t>(10, n);
    bool acc = true;
    for (size_t i = n - tail; i < n; ++i) {
        if (rep.boundary_distances[i] > threshold) acc = false;
        if (i > n - tail && rep.boundary_distances[i] > rep.boundary_distances[i - 1]) acc = false;
    }
    rep.accumulates_at_boundary = acc;
    rep.x_estimate = rep.points.back();
    return rep;
}

}  // namespace biholo
