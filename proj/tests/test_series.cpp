#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "biholo/series.hpp"
#include "doctest.h"

using namespace biholo;

TEST_CASE("eval basics") {
    TruncatedLaurent c = TruncatedLaurent::constant(1.0);
    CHECK(std::abs(c.eval(cplx{0.7, -0.2}) - 1.0) == 0.0);

    TruncatedLaurent id = TruncatedLaurent::identity();
    cplx z{0.3, 0.1};
    CHECK(std::abs(id.eval(z) - z) == 0.0);

    TruncatedLaurent ones(0, 50);
    for (int j = 0; j <= 50; ++j) ones.set_coeff(j, 1.0);
    double oracle = (1.0 - std::pow(0.5, 51)) / 0.5;
    CHECK(std::abs(ones.eval(0.5) - oracle) <= 1e-12);
    CHECK(std::abs(ones.eval(0.5) - 2.0) <= 1e-12);
}

TEST_CASE("declared region is enforced") {
    TruncatedLaurent s(5, 5);
    s.set_coeff(-1, 1.0);
    s.declare_region(0.5, 2.0);
    CHECK_NOTHROW(s.eval(1.0));
    CHECK_THROWS_AS(s.eval(cplx{0.1, 0.0}), eval_domain_error);
    CHECK_THROWS_AS(s.eval(cplx{3.0, 0.0}), eval_domain_error);
}

TEST_CASE("multiply") {
    TruncatedLaurent one = TruncatedLaurent::constant(1.0);
    TruncatedLaurent t(0, 8);
    for (int j = 0; j <= 8; ++j) t.set_coeff(j, cplx(1.0 / (j + 1), 0.1 * j));
    TruncatedLaurent p = multiply(one, t);
    for (int j = 0; j <= 8; ++j) CHECK(std::abs(p.coeff(j) - t.coeff(j)) <= 1e-15);

    TruncatedLaurent z = TruncatedLaurent::identity();
    TruncatedLaurent z2 = multiply(z, z);
    CHECK(std::abs(z2.coeff(2) - 1.0) == 0.0);
    CHECK(std::abs(z2.coeff(1)) == 0.0);

    // telescoping: (sum_{j<=10} z^j)(1 - z) = 1 - z^11
    TruncatedLaurent s(0, 10);
    for (int j = 0; j <= 10; ++j) s.set_coeff(j, 1.0);
    TruncatedLaurent lin(0, 1);
    lin.set_coeff(0, 1.0);
    lin.set_coeff(1, -1.0);
    TruncatedLaurent tel = multiply(s, lin);
    CHECK(std::abs(tel.coeff(0) - 1.0) <= 1e-15);
    for (int j = 1; j <= 10; ++j) CHECK(std::abs(tel.coeff(j)) <= 1e-15);
    CHECK(std::abs(tel.coeff(11) + 1.0) <= 1e-15);

    TruncatedLaurent off(0, 2, cplx{1.0, 0.0});
    CHECK_THROWS_AS(multiply(s, off), usage_error);
}

TEST_CASE("multiply commutative and associative within bound") {
    TruncatedLaurent a(2, 6), b(1, 4), c(0, 3);
    for (int j = -2; j <= 6; ++j) a.set_coeff(j, cplx(std::cos(j), std::sin(2 * j)) * 0.3);
    for (int j = -1; j <= 4; ++j) b.set_coeff(j, cplx(0.2 * j, -0.1) );
    for (int j = 0; j <= 3; ++j) c.set_coeff(j, cplx(1.0 / (1 + j), 0.05));

    TruncatedLaurent ab = multiply(a, b), ba = multiply(b, a);
    double bound = std::max(ab.truncation_bound(), ba.truncation_bound()) + 1e-12;
    for (int j = -3; j <= 10; ++j) CHECK(std::abs(ab.coeff(j) - ba.coeff(j)) <= bound);

    TruncatedLaurent l = multiply(multiply(a, b), c), r = multiply(a, multiply(b, c));
    double bound2 = l.truncation_bound() + r.truncation_bound() + 1e-12;
    // compare on an evaluation grid inside the common annulus
    for (double x : {0.7, 0.9, 1.1}) {
        for (int k = 0; k < 8; ++k) {
            double th = 2.0 * 3.14159265358979323846 * k / 8;
            cplx z = x * cplx{std::cos(th), std::sin(th)};
            CHECK(std::abs(l.eval(z) - r.eval(z)) <= bound2 * 4.0);
        }
    }
}

TEST_CASE("compose") {
    TruncatedLaurent f(0, 7);
    for (int j = 0; j <= 7; ++j) f.set_coeff(j, cplx(0.3 * j + 1, -0.2));
    TruncatedLaurent id = TruncatedLaurent::identity();
    TruncatedLaurent fid = compose(f, id);
    for (int j = 0; j <= 7; ++j) CHECK(std::abs(fid.coeff(j) - f.coeff(j)) == 0.0);

    // f = sum a_j z^j on [-5,5], g = alpha z: exact coefficient map a_j -> alpha^j a_j
    TruncatedLaurent lf(5, 5);
    for (int j = -5; j <= 5; ++j) lf.set_coeff(j, cplx(1.0 + 0.1 * j, 0.05 * j));
    cplx alpha{0.6, 0.8};
    TruncatedLaurent g(0, 1);
    g.set_coeff(1, alpha);
    TruncatedLaurent fg = compose(lf, g);
    for (int j = -5; j <= 5; ++j)
        CHECK(std::abs(fg.coeff(j) - std::pow(alpha, j) * lf.coeff(j)) <= 1e-14);

    // binomial: z^2 o (z+1) = z^2 + 2z + 1
    TruncatedLaurent sq = TruncatedLaurent::monomial(2);
    TruncatedLaurent shift(0, 1);
    shift.set_coeff(0, 1.0);
    shift.set_coeff(1, 1.0);
    TruncatedLaurent bin = compose(sq, shift);
    CHECK(std::abs(bin.coeff(0) - 1.0) <= 1e-15);
    CHECK(std::abs(bin.coeff(1) - 2.0) <= 1e-15);
    CHECK(std::abs(bin.coeff(2) - 1.0) <= 1e-15);

    // negative-index f with a non-linear g has no truncated representation
    TruncatedLaurent neg = TruncatedLaurent::monomial(-1);
    CHECK_THROWS_AS(compose(neg, shift), unsupported_composition_error);
}

TEST_CASE("hadamard radii") {
    TruncatedLaurent ones(0, 40);
    for (int j = 0; j <= 40; ++j) ones.set_coeff(j, 1.0);
    HadamardRadii h1 = hadamard_radii(ones);
    CHECK(h1.r_outer == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(h1.inner_flagged);
    CHECK(h1.r_inner == 0.0);
    CHECK(h1.truncation_limited);
    CHECK(h1.window == 16);

    TruncatedLaurent s(40, 40);
    for (int j = 0; j <= 40; ++j) s.set_coeff(j, std::pow(2.0, -j));
    for (int j = 1; j <= 40; ++j) s.set_coeff(-j, std::pow(4.0, -j));
    HadamardRadii h2 = hadamard_radii(s);
    CHECK(h2.r_inner == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(h2.r_outer == doctest::Approx(2.0).epsilon(1e-9));

    TruncatedLaurent g(0, 1);
    g.set_coeff(1, 2.0);
    HadamardRadii h3 = hadamard_radii(compose(s, g));
    CHECK(h3.r_inner == doctest::Approx(0.125).epsilon(1e-9));
    CHECK(h3.r_outer == doctest::Approx(1.0).epsilon(1e-9));

    // |alpha| = 1 leaves both radii alone
    TruncatedLaurent rot(0, 1);
    rot.set_coeff(1, cplx{std::cos(0.7), std::sin(0.7)});
    HadamardRadii h4 = hadamard_radii(compose(s, rot));
    CHECK(h4.r_inner == doctest::Approx(h2.r_inner).epsilon(1e-9));
    CHECK(h4.r_outer == doctest::Approx(h2.r_outer).epsilon(1e-9));

    CHECK_THROWS_AS(hadamard_radii(ones, 1), usage_error);
}

TEST_CASE("json round trip") {
    TruncatedLaurent s(3, 4, cplx{0.1, -0.2});
    s.set_coeff(-3, cplx{0.5, 0.25});
    s.set_coeff(0, 1.0);
    s.set_coeff(4, cplx{-2.0, 1.0});
    TruncatedLaurent t = laurent_from_json(laurent_to_json(s));
    CHECK(std::abs(t.center() - s.center()) == 0.0);
    for (int j = -3; j <= 4; ++j) CHECK(std::abs(t.coeff(j) - s.coeff(j)) == 0.0);
    CHECK_THROWS_AS(laurent_from_json("{not json"), usage_error);
}

TEST_CASE("two-variable taylor") {
    TruncatedTaylor2 z1 = TruncatedTaylor2::coordinate(0, 4);
    TruncatedTaylor2 z2 = TruncatedTaylor2::coordinate(1, 4);
    TruncatedTaylor2 p = multiply(z1, z2);
    CHECK(std::abs(p.coeff(1, 1) - 1.0) == 0.0);
    Point z{cplx{0.3, 0.0}, cplx{0.0, 0.5}};
    CHECK(std::abs(p.eval(z) - z[0] * z[1]) <= 1e-15);

    TruncatedTaylor2 q = multiply(p, p);  // z1^2 z2^2, degree 4 keeps it
    CHECK(std::abs(q.coeff(2, 2) - 1.0) == 0.0);
}
