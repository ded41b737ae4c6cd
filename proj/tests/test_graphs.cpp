#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hkinv/graphs.hpp"

using namespace hkinv;

namespace {

GraphVector gv(GenId id) { return GraphVector::generator(id); }

GraphVector theta_power(unsigned e) { return gv(gen::Theta).pow(e); }

// The four expansion displays of <Omega^2, (1+l)^n>, written out term by term.
GraphVector expected_wheeling(unsigned n) {
    Rational i12(1, 12), i144(1, 144), i1728(1, 1728), i20736(1, 20736);
    GraphVector one{Rational(1)};
    GraphVector t = gv(gen::Theta), t2 = gv(gen::Theta2), t4 = gv(gen::Theta4), xi = gv(gen::Xi);
    switch (n) {
        case 1:
            return one + i12 * t;
        case 2:
            return one + Rational(2) * i12 * t + i144 * (t * t + t2);
        case 3:
            return one + Rational(3) * i12 * t + Rational(3) * i144 * (t * t + t2) +
                   i1728 * (t * t * t + Rational(3) * t * t2);
        case 4:
            return one + Rational(4) * i12 * t + Rational(6) * i144 * (t * t + t2) +
                   Rational(4) * i1728 * (t * t * t + Rational(3) * t * t2) +
                   i20736 * (t.pow(4) + Rational(6) * t * t * t2 + Rational(3) * t2 * t2 +
                             Rational(144, 25) * xi - Rational(162, 25) * t4);
        default:
            throw std::logic_error("unexpected n");
    }
}

}  // namespace

TEST_CASE("modified Bernoulli numbers from the sinh generating series") {
    const auto& b = modified_bernoulli();
    CHECK(b[1] == Rational(1, 48));
    CHECK(b[2] == Rational(-1, 5760));
    CHECK(b[3] == Rational(1, 362880));
    CHECK(b[4] == Rational(-1, 19353600));
}

TEST_CASE("mandatory gluing identities") {
    CHECK(glue(wheel(2), strut()) == Rational(2) * gv(gen::Theta));
    CHECK(glue(wheel(2), wheel(2)) == Rational(2) * gv(gen::Theta2));
    CHECK(glue(wheel(4), strut_power(2)) == Rational(20) * gv(gen::Theta2));
    CHECK(glue(wheel_product({2, 2}), strut_power(2)) ==
          Rational(8) * theta_power(2) + Rational(16) * gv(gen::Theta2));
}

TEST_CASE("six-vertex gluings land in the Theta3 sector with exact counts") {
    GraphVector t3 = gv(gen::Theta3);
    CHECK(glue(wheel(6), strut_power(3)) == Rational(420) * t3);
    CHECK(glue(wheel_product({2, 4}), strut_power(3)) ==
          Rational(120) * gv(gen::Theta) * gv(gen::Theta2) + Rational(480) * t3);
    CHECK(glue(wheel_product({2, 2, 2}), strut_power(3)) ==
          Rational(48) * theta_power(3) +
          Rational(288) * gv(gen::Theta) * gv(gen::Theta2) + Rational(384) * t3);
}

TEST_CASE("glue is symmetric and zero on mismatched leg counts") {
    CHECK(glue(wheel(2), strut()) == glue(strut(), wheel(2)));
    CHECK(glue(wheel(4), strut_power(2)) == glue(strut_power(2), wheel(4)));
    CHECK(glue(wheel_product({2, 4}), strut_power(3)) ==
          glue(strut_power(3), wheel_product({2, 4})));
    CHECK(glue(wheel(2), wheel(4)).is_zero());
    CHECK(glue(wheel(2), strut_power(2)).is_zero());
}

TEST_CASE("wheeling expansions of Omega^2 match the four displays") {
    for (unsigned n = 1; n <= 4; ++n) CHECK(wheeling_expansion(n) == expected_wheeling(n));
    CHECK_THROWS_AS(wheeling_expansion(5), Unsupported);
    CHECK_THROWS_AS(wheeling_expansion(0), Unsupported);
}

TEST_CASE("Wheeling Theorem: <Omega, (1+l)^n> = <Omega, 1+l>^n") {
    GraphVector line = GraphVector{Rational(1)} + Rational(1, 24) * gv(gen::Theta);
    for (unsigned n = 1; n <= 4; ++n) CHECK(wheeling_expansion(n, 1) == line.pow(n));
}

TEST_CASE("both quartic gluing identities hold against the catalog") {
    auto s = sawon_identities();
    CHECK(s.residual_w4w4.is_zero());
    CHECK(s.residual_w8.is_zero());
    CHECK(s.w4w4_lhs == Rational(24) * gv(gen::Xi) + Rational(48) * gv(gen::Theta4) +
                            Rational(25, 4) * gv(gen::Theta2).pow(2));
    CHECK(s.w8_lhs == Rational(7) * gv(gen::Xi) + Rational(287, 8) * gv(gen::Theta4));
}

TEST_CASE("gluings above eight vertices are rejected") {
    CHECK_THROWS_AS(glue(wheel(8), wheel(8)), UnreducibleGraph);
    CHECK_THROWS_AS(glue(wheel_product({6, 4}), wheel_product({8, 2})), UnreducibleGraph);
}

TEST_CASE("pure strut circles have no catalog class") {
    CHECK_THROWS_AS(glue(strut(), strut()), UnreducibleGraph);
}

TEST_CASE("b_gamma values on the fourfold table") {
    FujikiTable k3;
    k3.n = 2;
    k3.entries[ChernMonomial::unit()] = Rational(3);
    k3.entries[ChernMonomial::c(2)] = Rational(30);
    k3.entries[ChernMonomial::c(2, 2)] = Rational(828);
    k3.entries[ChernMonomial::c(4)] = Rational(324);

    CHECK(b_gamma({gen::Theta}, 2, k3) == Rational(60));
    CHECK(b_gamma({gen::Theta2}, 2, k3) == Rational(-144));
    // Multiplicativity, and the -48(n+1) prediction at n = 2.
    CHECK(b_gamma({gen::Theta, gen::Theta}, 2, k3) == Rational(3600));
    CHECK(b_gamma({gen::Theta2}, 2, k3) == Rational(-48) * Rational(3));
    CHECK_THROWS_AS(b_gamma({gen::Theta4}, 2, k3), UnknownGamma);
    CHECK_THROWS_AS(b_gamma({gen::Xi}, 2, k3), UnknownGamma);
}

TEST_CASE("rr_from_b reconstructs the fourfold RR polynomial") {
    RRPoly p = rr_from_b(2, Rational(3), Rational(60), Rational(-144));
    CHECK(p == rr_k3n(2));

    // b_Theta2 = 0 collapses the quadratic to a double root at -b_Theta/12.
    RRPoly dbl = rr_from_b(2, Rational(24), Rational(36), Rational(0));
    Poly q = dbl.as_poly();
    CHECK(q(Rational(-3)) == Rational(0));
    auto dm = Poly::divmod(q, Poly::from_roots({Rational(-3), Rational(-3)}));
    CHECK(dm.rem.is_zero());

    CHECK_THROWS_AS(rr_from_b(5, Rational(1), Rational(1), Rational(-1)), Unsupported);
}

TEST_CASE("rr_from_b at n=3: arithmetic root ladder with step sqrt(-3 bT2)/12") {
    // Choose b_Theta2 = -27/25... pick values making the discriminant a square:
    // -3 bT2 = 144 d^2 gives step d; take d = 2, bT = 48 -> roots 2, 4, 6.
    Rational bT(48), bT2(-192);
    RRPoly p = rr_from_b(3, Rational(720), bT, bT2);
    Poly expect = Poly::from_roots({Rational(-2), Rational(-4), Rational(-6)});
    CHECK(p.as_poly() == expect);
    // And the middle root is -bT/12.
    CHECK(p.as_poly()(Rational(-4)) == Rational(0));
}

TEST_CASE("rr_from_b at n=4 factors into the two displayed quadratics") {
    // -3/5 bT2 = 144 e^2 with e = 1: bT2 = -240; inner roots step 2e = 2.
    // -27/5 bT2 = 1296 = 144 * 9: outer roots step 6.
    Rational bT(96), bT2(-240);
    RRPoly p = rr_from_b(4, Rational(40320), bT, bT2);
    Poly expect = Poly::from_roots({Rational(-7), Rational(-9), Rational(-5), Rational(-11)});
    CHECK(p.as_poly() == expect);
}

TEST_CASE("rr_from_b reproduces the n=3 and n=4 family polynomials") {
    // Six-dimensional data (OG6 / Kum3 profile): b_Theta = 48, b_Theta2 = -192.
    FujikiTable og6 = degree4_from_rr(rr_kumn(3));
    Rational bT3 = b_gamma({gen::Theta}, 3, og6);
    Rational bT23 = b_gamma({gen::Theta2}, 3, og6);
    CHECK(bT3 == Rational(48));
    CHECK(bT23 == Rational(-192));
    CHECK(rr_from_b(3, og6.C1(), bT3, bT23) == rr_kumn(3));

    // Eight-dimensional data (Hilbert scheme of 4 points): the two displayed
    // quadratics split the root ladder -4, -6, -8, -10 as {-6,-8} and {-4,-10}.
    FujikiTable k34 = degree4_from_rr(rr_k3n(4));
    Rational bT4 = b_gamma({gen::Theta}, 4, k34);
    Rational bT24 = b_gamma({gen::Theta2}, 4, k34);
    CHECK(bT4 == Rational(84));
    CHECK(bT24 == Rational(-240));
    CHECK(rr_from_b(4, k34.C1(), bT4, bT24) == rr_k3n(4));
}

TEST_CASE("wheeling coefficients against b_gamma: the n=2 RR identity") {
    // RR(q) = C1/4! (q^2 + (2/12) bT q + (bT^2 + bT2)/144) must equal the
    // polynomial assembled from the n=2 wheeling display with Theta -> bT,
    // Theta2 -> bT2 (multiplicative on monomials).
    FujikiTable kum;
    kum.n = 2;
    kum.entries[ChernMonomial::unit()] = Rational(9);
    kum.entries[ChernMonomial::c(2)] = Rational(54);
    kum.entries[ChernMonomial::c(2, 2)] = Rational(756);
    kum.entries[ChernMonomial::c(4)] = Rational(108);
    Rational bT = b_gamma({gen::Theta}, 2, kum);
    Rational bT2 = b_gamma({gen::Theta2}, 2, kum);
    CHECK(rr_from_b(2, Rational(9), bT, bT2) == rr_kumn(2));
}
