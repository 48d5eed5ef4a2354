#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "biholo/limits.hpp"
#include "doctest.h"

using namespace biholo;

namespace {

std::vector<Automorphism> mobius_param_converge(int n) {
    // a_j -> 0.5, theta_j -> 0 geometrically: limit is a genuine automorphism
    std::vector<Automorphism> fam;
    for (int j = 1; j <= n; ++j)
        fam.push_back(Automorphism::disk_mobius(cplx{0.5 - std::pow(2.0, -j), 0.0},
                                                0.25 * std::pow(2.0, -j)));
    return fam;
}

std::vector<Automorphism> boundary_drift(int n) {
    // a_j -> 1 along the real axis: phi_{a_j} collapses to the constant -1
    std::vector<Automorphism> fam;
    for (int j = 1; j <= n; ++j)
        fam.push_back(Automorphism::disk_mobius(cplx{1.0 - std::pow(2.0, -j), 0.0}, 0.0));
    return fam;
}

}  // namespace

TEST_CASE("parameter-convergent Mobius family has an automorphism limit") {
    CompactExhaustion ex(ModelDomain::disk(), 4, 0.2, 256, 3);
    auto rep = normal_limit_classify(mobius_param_converge(40), ex, 1e-6);
    CHECK(rep.verdict == LimitVerdict::automorphism);
    REQUIRE(rep.limit_aut.has_value());
    // recovered parameters match the limit map phi_{0.5}
    Automorphism target = Automorphism::disk_mobius(cplx{0.5, 0.0}, 0.0);
    for (const Point& z : ex.grid(ex.levels() - 1))
        CHECK(dist(rep.limit_aut->apply(z), target.apply(z)) <= 1e-6);
    CHECK(rep.fit_residual <= 1e-6);
}

TEST_CASE("boundary drift collapses to a boundary constant") {
    CompactExhaustion ex(ModelDomain::disk(), 4, 0.2, 256, 3);
    auto rep = normal_limit_classify(boundary_drift(40), ex, 1e-6);
    CHECK(rep.verdict == LimitVerdict::constant);
    CHECK(std::abs(rep.limit_constant[0] - cplx{-1.0, 0.0}) <= 1e-6);
    CHECK(std::abs(rep.constant_boundary_rho) <= 1e-5);
}

TEST_CASE("alternating family does not converge") {
    CompactExhaustion ex(ModelDomain::disk(), 4, 0.2, 256, 3);
    std::vector<Automorphism> fam;
    for (int j = 0; j < 40; ++j)
        fam.push_back(Automorphism::disk_mobius(cplx{j % 2 ? 0.4 : -0.4, 0.0}, 0.0));
    auto rep = normal_limit_classify(fam, ex, 1e-6);
    CHECK(rep.verdict == LimitVerdict::not_converged);
    CHECK(!rep.level_cauchy.empty());
    CHECK(rep.level_cauchy.back() > 1e-6);
}

TEST_CASE("short sequences are refused") {
    CompactExhaustion ex(ModelDomain::disk(), 4, 0.2, 256, 3);
    CHECK_THROWS_AS(normal_limit_classify(mobius_param_converge(19), ex, 1e-6),
                    usage_error);
}

TEST_CASE("direct automorphism fitting across catalog kinds") {
    CompactExhaustion exd(ModelDomain::disk(), 3, 0.2, 128, 5);
    Automorphism m = Automorphism::disk_mobius(cplx{0.3, -0.2}, 0.7);
    double res = 1e300;
    auto fit = fit_automorphism(ModelDomain::disk(),
                                [&](const Point& z) { return m.apply(z); },
                                exd.grid(exd.levels() - 1), 1e-8, &res);
    REQUIRE(fit.has_value());
    CHECK(res <= 1e-8);

    ModelDomain ann = ModelDomain::annulus(0.5);
    CompactExhaustion exa(ann, 3, 0.1, 128, 5);
    Automorphism fl = Automorphism::annulus_flip(0.5, 1.1);
    auto fita = fit_automorphism(ann, [&](const Point& z) { return fl.apply(z); },
                                 exa.grid(exa.levels() - 1), 1e-8);
    REQUIRE(fita.has_value());
    for (const Point& z : exa.grid(0))
        CHECK(dist(fita->apply(z), fl.apply(z)) <= 1e-8);

    ModelDomain ball = ModelDomain::ball();
    CompactExhaustion exb(ball, 3, 0.2, 128, 5);
    Mat2 U{{{cplx{0.6, 0}, cplx{-0.8, 0}}, {cplx{0.8, 0}, cplx{0.6, 0}}}};
    Automorphism ba = Automorphism::ball_aut(Point{cplx{0.2, 0.1}, cplx{-0.1, 0}}, U);
    auto fitb = fit_automorphism(ball, [&](const Point& z) { return ba.apply(z); },
                                 exb.grid(exb.levels() - 1), 1e-6);
    REQUIRE(fitb.has_value());
    for (const Point& z : exb.grid(0))
        CHECK(dist(fitb->apply(z), ba.apply(z)) <= 1e-6);

    // a non-automorphism is rejected rather than force-fitted
    auto bad = fit_automorphism(ModelDomain::disk(),
                                [](const Point& z) { return Point(z[0] * z[0]); },
                                exd.grid(exd.levels() - 1), 1e-8);
    CHECK(!bad.has_value());

    CHECK_THROWS_AS(fit_automorphism(ModelDomain::bidisc(),
                                     [](const Point& z) { return z; },
                                     exb.grid(0), 1e-8),
                    usage_error);
}

TEST_CASE("composition check accepts a fast-converging rescaling family") {
    CompactExhaustion ex(ModelDomain::disk(), 4, 0.2, 256, 3);
    // rotations with geometrically decaying angles; f is a fixed automorphism
    std::vector<Automorphism> fam;
    for (int j = 1; j <= 24; ++j)
        fam.push_back(Automorphism::disk_mobius(cplx{0, 0}, std::pow(2.0, -j)));
    Automorphism f0 = Automorphism::disk_mobius(cplx{0.2, 0.1}, 0.3);
    auto f = [&](const Point& z) { return f0.apply(z); };

    auto rep = rescaling_composition_check(f, fam, ex, 1e-6);
    CHECK(rep.g_is_automorphism);
    CHECK(rep.g_fit_residual <= 1e-5);
    CHECK(rep.f_injective_on_grid);
    CHECK(rep.f_surjectivity_gap < 0.2);
    CHECK(rep.h_cluster_size >= 3);
    // phi_{k+1} o phi_k^{-1} -> id, so the h_k cluster converges to f itself;
    // its reported distance from the identity must match sup |f - id|
    REQUIRE(!rep.h_level_dev.empty());
    double fdev = 0.0;
    for (const Point& z : ex.grid(ex.levels() - 1))
        fdev = std::max(fdev, dist(f0.apply(z), z));
    CHECK(std::abs(rep.h_level_dev.back() - fdev) <= 1e-2);
    CHECK(!rep.note.empty());
}

TEST_CASE("composition check with identity f measures h at the identity") {
    CompactExhaustion ex(ModelDomain::disk(), 4, 0.2, 256, 3);
    std::vector<Automorphism> fam;
    for (int j = 1; j <= 24; ++j)
        fam.push_back(Automorphism::disk_mobius(cplx{0.3 - 0.3 * std::pow(2.0, -j), 0.0}, 0.0));
    auto rep = rescaling_composition_check([](const Point& z) { return z; }, fam, ex, 1e-6);
    CHECK(rep.g_is_automorphism);
    CHECK(rep.h_cluster_size >= 3);
    for (double dev : rep.h_level_dev) CHECK(dev <= 1e-2);
}

TEST_CASE("composition check rejects a non-convergent hypothesis") {
    CompactExhaustion ex(ModelDomain::disk(), 4, 0.2, 256, 3);
    std::vector<Automorphism> fam;
    for (int j = 0; j < 24; ++j)
        fam.push_back(Automorphism::disk_mobius(cplx{j % 2 ? 0.4 : -0.4, 0.0}, 0.0));
    CHECK_THROWS_AS(rescaling_composition_check([](const Point& z) { return z; }, fam, ex,
                                                1e-6),
                    recovery_error);
}
