#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "biholo/domain.hpp"
#include "doctest.h"

using namespace biholo;

TEST_CASE("membership and boundary distance") {
    ModelDomain disk = ModelDomain::disk();
    CHECK(disk.contains(Point(cplx{0, 0})));
    CHECK(disk.boundary_distance(Point(cplx{0, 0})) == doctest::Approx(1.0));

    ModelDomain ann = ModelDomain::annulus(0.5);
    CHECK_FALSE(ann.contains(Point(cplx{0.25, 0})));  // inside the hole
    CHECK(ann.contains(Point(cplx{0.7, 0})));
    CHECK(ann.boundary_distance(Point(cplx{0.7, 0})) == doctest::Approx(0.2));

    ModelDomain ball = ModelDomain::ball();
    Point z{cplx{0.6, 0}, cplx{0.8 * 0.99, 0}};
    double nrm = std::sqrt(0.36 + 0.627264);
    CHECK(std::abs(ball.boundary_distance(z) - (1.0 - nrm)) <= 1e-12);

    ModelDomain bidisc = ModelDomain::bidisc();
    Point w{cplx{0.9, 0}, cplx{0.3, 0}};
    CHECK(bidisc.contains(w));
    CHECK(bidisc.boundary_distance(w) == doctest::Approx(0.1));

    ModelDomain sie = ModelDomain::siegel();
    CHECK(sie.contains(Point{cplx{1.0, 0.3}, cplx{0.5, 0}}));
    CHECK_FALSE(sie.contains(Point{cplx{0.2, 0}, cplx{0.5, 0}}));
    CHECK_FALSE(sie.bounded());
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(ModelDomain::annulus(0.0), construction_error);
    CHECK_THROWS_AS(ModelDomain::annulus(1.0), construction_error);
    CHECK_THROWS_AS(ModelDomain::ellipsoid(0), construction_error);
}

TEST_CASE("rho sign convention on a boundary scan") {
    for (const ModelDomain& d :
         {ModelDomain::disk(), ModelDomain::annulus(0.3), ModelDomain::bidisc(),
          ModelDomain::ball(), ModelDomain::ellipsoid(2), ModelDomain::siegel()}) {
        // inner points
        Point in = d.dim() == 1
                       ? Point(cplx{d.kind() == DomainKind::annulus ? 0.6 : 0.1, 0.0})
                       : (d.kind() == DomainKind::siegel ? Point{cplx{1.0, 0}, cplx{0.2, 0}}
                                                         : Point{cplx{0.2, 0}, cplx{0.1, 0}});
        CHECK(d.rho(in) < 0.0);
        CHECK(d.boundary_distance(in) > 0.0);
    }
    // on-boundary values vanish
    CHECK(std::abs(ModelDomain::disk().rho(Point(cplx{1.0, 0.0}))) <= 1e-15);
    CHECK(std::abs(ModelDomain::ball().rho(Point{cplx{0.6, 0}, cplx{0.8, 0}})) <= 1e-15);
    CHECK(std::abs(ModelDomain::siegel().rho(Point{cplx{0.25, 0}, cplx{0.5, 0}})) <= 1e-15);
}

TEST_CASE("gradient, levi, and the bidisc corner") {
    ModelDomain ball = ModelDomain::ball();
    Point z{cplx{0.3, 0.1}, cplx{-0.2, 0.4}};
    Point g = ball.rho_gradient(z);
    CHECK(std::abs(g[0] - std::conj(z[0])) <= 1e-14);
    CHECK(std::abs(g[1] - std::conj(z[1])) <= 1e-14);
    auto L = ball.rho_levi(z);
    CHECK(std::abs(L[0][0] - 1.0) <= 1e-14);
    CHECK(std::abs(L[0][1]) <= 1e-14);
    CHECK(std::abs(L[1][1] - 1.0) <= 1e-14);

    ModelDomain bidisc = ModelDomain::bidisc();
    // near the corner both faces are active: no single smooth face
    CHECK_THROWS_AS(bidisc.rho_gradient(Point{cplx{0.95, 0}, cplx{0.95, 0}}),
                    construction_error);

    ModelDomain e2 = ModelDomain::ellipsoid(2);
    Point w{cplx{0.1, 0}, cplx{0.5, 0}};
    auto L2 = e2.rho_levi(w);
    CHECK(std::abs(L2[1][1] - 4.0 * std::norm(w[1])) <= 1e-12);

    ModelDomain sie = ModelDomain::siegel();
    auto Ls = sie.rho_levi(Point{cplx{1, 0}, cplx{0.2, 0.1}});
    CHECK(std::abs(Ls[1][1] - 1.0) <= 1e-14);
    auto Hs = sie.rho_pure_hessian(Point{cplx{1, 0}, cplx{0.2, 0.1}});
    CHECK(std::abs(Hs[0][0]) + std::abs(Hs[0][1]) + std::abs(Hs[1][1]) <= 1e-14);
}

TEST_CASE("descriptor round trip") {
    for (const ModelDomain& d : {ModelDomain::disk(), ModelDomain::annulus(0.37),
                                 ModelDomain::bidisc(), ModelDomain::ball(),
                                 ModelDomain::ellipsoid(3), ModelDomain::siegel()}) {
        ModelDomain back = domain_from_descriptor(d.descriptor());
        CHECK(back == d);
    }
    CHECK_THROWS_AS(domain_from_descriptor("{\"kind\":\"torus\"}"), construction_error);
}
