#include "biholo/holo_algebra.hpp"

#include <algorithm>
#include <cmath>

namespace biholo {
namespace {

HoloFunc coord(int i) {
    return [i](const Point& z) { return z[i]; };
}

}  // namespace

std::vector<HoloFunc> standard_test_set(const ModelDomain& d) {
    std::vector<HoloFunc> fs;
    fs.push_back([](const Point&) { return cplx(1.0); });
    if (d.dim() == 1) {
        // 1, z, z^2, three linear shifts, one pole outside the closure
        fs.push_back(coord(0));
        fs.push_back([](const Point& z) { return z[0] * z[0]; });
        for (cplx c : {cplx{0.1, 0.0}, cplx{0.2, 0.1}, cplx{-0.3, 0.0}})
            fs.push_back([c](const Point& z) { return z[0] - c; });
        fs.push_back([](const Point& z) { return 1.0 / (z[0] - 2.0); });
    } else {
        // coordinate functions and degree <= 2 monomials
        fs.push_back(coord(0));
        fs.push_back(coord(1));
        fs.push_back([](const Point& z) { return z[0] * z[0]; });
        fs.push_back([](const Point& z) { return z[0] * z[1]; });
        fs.push_back([](const Point& z) { return z[1] * z[1]; });
    }
    return fs;
}

HomCheckReport is_unital_hom(const HomAction& phi, const std::vector<HoloFunc>& test_set,
                             int grid_size, double tol, std::uint64_t seed) {
    HomCheckReport rep;
    rep.grid_size = grid_size;
    rep.tol = tol;
    auto grid = PairSampler::interior_points(phi.target, grid_size, seed);

    auto sup_diff = [&](const HoloFunc& a, const HoloFunc& b) {
        double m = 0.0;
        for (const Point& w : grid) m = std::max(m, std::abs(a(w) - b(w)));
        return m;
    };

    HoloFunc one = [](const Point&) { return cplx(1.0); };
    rep.unit_residual = sup_diff(phi.act(one), one);

    for (size_t i = 0; i < test_set.size(); ++i) {
        for (size_t j = i; j < test_set.size(); ++j) {
            const HoloFunc &f = test_set[i], &g = test_set[j];
            HoloFunc sum = [&f, &g](const Point& z) { return f(z) + g(z); };
            HoloFunc prod = [&f, &g](const Point& z) { return f(z) * g(z); };
            HoloFunc pf = phi.act(f), pg = phi.act(g), ps = phi.act(sum), pp = phi.act(prod);
            rep.additive_residual = std::max(
                rep.additive_residual,
                sup_diff(ps, [&](const Point& w) { return pf(w) + pg(w); }));
            rep.multiplicative_residual = std::max(
                rep.multiplicative_residual,
                sup_diff(pp, [&](const Point& w) { return pf(w) * pg(w); }));
        }
    }
    rep.ok = rep.unit_residual <= tol && rep.additive_residual <= tol &&
             rep.multiplicative_residual <= tol;
    return rep;
}

HomCheckReport is_unital_hom(const CharacterAction& chi, const std::vector<HoloFunc>& test_set,
                             double tol) {
    HomCheckReport rep;
    rep.grid_size = 1;
    rep.tol = tol;
    HoloFunc one = [](const Point&) { return cplx(1.0); };
    rep.unit_residual = std::abs(chi.act(one) - 1.0);
    for (size_t i = 0; i < test_set.size(); ++i) {
        for (size_t j = i; j < test_set.size(); ++j) {
            const HoloFunc &f = test_set[i], &g = test_set[j];
            cplx cf = chi.act(f), cg = chi.act(g);
            cplx cs = chi.act([&f, &g](const Point& z) { return f(z) + g(z); });
            cplx cp = chi.act([&f, &g](const Point& z) { return f(z) * g(z); });
            rep.additive_residual = std::max(rep.additive_residual, std::abs(cs - cf - cg));
            rep.multiplicative_residual =
                std::max(rep.multiplicative_residual, std::abs(cp - cf * cg));
        }
    }
    rep.ok = rep.unit_residual <= tol && rep.additive_residual <= tol &&
             rep.multiplicative_residual <= tol;
    return rep;
}

CharacterLocation character_locate(const CharacterAction& chi,
                                   const std::vector<HoloFunc>& test_set, double tol) {
    CharacterLocation loc;
    int n = chi.domain.dim();
    if (n == 1)
        loc.c = Point(chi.act(coord(0)));
    else
        loc.c = Point(chi.act(coord(0)), chi.act(coord(1)));

    if (!chi.domain.contains(loc.c))
        throw unit_obstruction_error(
            "candidate evaluation point lies outside the domain: coordinate functions minus "
            "their chi-values have no common interior zero");
    loc.boundary_distance = chi.domain.boundary_distance(loc.c);

    for (const HoloFunc& f : test_set)
        loc.residual_max = std::max(loc.residual_max, std::abs(chi.act(f) - f(loc.c)));
    if (loc.residual_max > tol)
        throw recovery_error("character is not point evaluation at the located point");
    return loc;
}

RecoveredMap bers_recover(const HomAction& phi, const std::vector<HoloFunc>& test_set,
                          int grid_size, double tol, std::uint64_t seed,
                          const std::function<Point(const Point&)>* candidate_inverse) {
    RecoveredMap out;
    int n = phi.source.dim();
    if (phi.target.dim() != n)
        throw usage_error("source/target dimension mismatch");

    // Phi applied to each coordinate determines h componentwise.
    std::vector<HoloFunc> comp;
    for (int i = 0; i < n; ++i) comp.push_back(phi.act(coord(i)));
    ModelDomain source = phi.source;
    out.h = [comp, n, source](const Point& w) {
        Point z = (n == 1) ? Point(comp[0](w)) : Point(comp[0](w), comp[1](w));
        return z;
    };

    out.grid = PairSampler::interior_points(phi.target, grid_size, seed);
    // mirror the grid through the origin where the domain allows it so that
    // even maps (z and -z colliding) are caught by the injectivity scan
    if (phi.target.kind() != DomainKind::siegel) {
        size_t base = out.grid.size();
        for (size_t i = 0; i < base; ++i) {
            Point neg = -1.0 * out.grid[i];
            if (phi.target.contains(neg)) out.grid.push_back(neg);
        }
    }
    for (const Point& w : out.grid) {
        Point z = out.h(w);
        if (!phi.source.contains(z))
            throw recovery_error("recovered map leaves the source domain on the grid");
        out.values.push_back(z);
    }

    for (const HoloFunc& f : test_set) {
        HoloFunc pf = phi.act(f);
        for (size_t g = 0; g < out.grid.size(); ++g)
            out.residual_max =
                std::max(out.residual_max, std::abs(pf(out.grid[g]) - f(out.values[g])));
    }
    if (out.residual_max > tol)
        throw recovery_error("homomorphism does not factor as composition within tolerance");

    out.injective_on_grid = true;
    for (size_t i = 0; i < out.values.size() && out.injective_on_grid; ++i)
        for (size_t j = i + 1; j < out.values.size(); ++j) {
            double sep = dist(out.grid[i], out.grid[j]);
            if (sep > 1e-6 && dist(out.values[i], out.values[j]) < tol) {
                out.injective_on_grid = false;
                break;
            }
        }

    if (candidate_inverse) {
        auto src_grid = PairSampler::interior_points(phi.source, grid_size, seed + 1);
        for (const Point& z : src_grid) {
            Point w = (*candidate_inverse)(z);
            if (!phi.target.contains(w))
                throw recovery_error("candidate inverse leaves the target domain");
            out.inverse_residual = std::max(out.inverse_residual, dist(out.h(w), z));
        }
        for (const Point& w : out.grid)
            out.inverse_residual =
                std::max(out.inverse_residual, dist((*candidate_inverse)(out.h(w)), w));
        out.inverse_certified = out.inverse_residual <= tol;
    }
    return out;
}

AnnulusClassification annulus_auto_classify(const TruncatedLaurent& phi_of_id, double r,
                                            double tol) {
    if (!(r > 0.0 && r < 1.0)) throw usage_error("annulus parameter must satisfy 0 < r < 1");
    AnnulusClassification cl;

    // Dominant stored coefficient.
    int dom = 0;
    double dom_mag = 0.0;
    for (const auto& [j, a] : phi_of_id.coeffs()) {
        if (std::abs(a) > dom_mag) { dom_mag = std::abs(a); dom = j; }
    }
    if (dom_mag <= tol) {
        cl.reason = "image of the identity is numerically zero; not an automorphism";
        return cl;
    }
    for (const auto& [j, a] : phi_of_id.coeffs())
        if (j != dom) cl.off_mode_mass += std::abs(a);

    if (dom != 1 && dom != -1) {
        cl.reason = "image of the identity is dominated by the wrong power; the induced map "
                    "is not a bijection of the annulus";
        return cl;
    }
    if (cl.off_mode_mass > tol) {
        cl.reason = "image of the identity carries extra Laurent modes beyond tolerance";
        return cl;
    }

    cplx c = phi_of_id.coeff(dom);
    cl.flip = (dom == -1);
    cl.alpha = cl.flip ? c / r : c;  // flip form: alpha r / z
    if (std::abs(std::abs(cl.alpha) - 1.0) > tol) {
        cl.reason = "monomial coefficient has non-unit modulus; the induced map moves the "
                    "annulus boundary";
        // fall through: still run the radii probe for evidence
    }

    // Hadamard probe: a series with radii exactly (r, 1) pushed through
    // z -> alpha z (resp. the flip) must keep its radii near (r, 1).
    TruncatedLaurent probe(40, 40);
    for (int j = 0; j <= 40; ++j) probe.set_coeff(j, 1.0);
    for (int j = 1; j <= 40; ++j) probe.set_coeff(-j, std::pow(r, j));
    TruncatedLaurent pushed(40, 40);
    if (!cl.flip) {
        pushed = compose(probe, TruncatedLaurent::monomial(1, cl.alpha));
    } else {
        // probe(alpha r / z): index j picks up (alpha r)^j z^{-j}
        for (const auto& [j, a] : probe.coeffs())
            pushed.set_coeff(-j, a * std::pow(cl.alpha * r, j));
    }
    cl.probe_radii = hadamard_radii(pushed);
    double est_tol = 5e-2 + 10.0 * tol;  // root-test estimator accuracy at window 16
    cl.radii_consistent = std::abs(cl.probe_radii.r_inner - r) <= est_tol &&
                          std::abs(cl.probe_radii.r_outer - 1.0) <= est_tol;

    if (cl.reason.empty()) {
        if (!cl.radii_consistent) {
            cl.reason = "radii probe moved the annulus despite unit modulus";
            return cl;
        }
        cl.accepted = true;
        cl.reason = cl.flip ? "flip composed with a rotation" : "rotation";
    }
    return cl;
}

}  // namespace biholo
