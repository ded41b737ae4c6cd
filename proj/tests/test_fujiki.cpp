#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hkinv/fujiki.hpp"

using namespace hkinv;

namespace {

FujikiTable table_k3_2() {
    FujikiTable t;
    t.n = 2;
    t.b2 = 23;
    t.entries[ChernMonomial::unit()] = Rational(3);
    t.entries[ChernMonomial::c(2)] = Rational(30);
    t.entries[ChernMonomial::c(2, 2)] = Rational(828);
    t.entries[ChernMonomial::c(4)] = Rational(324);
    return t;
}

FujikiTable table_og6_deg4() {
    FujikiTable t;
    t.n = 3;
    t.b2 = 8;
    t.entries[ChernMonomial::unit()] = Rational(60);
    t.entries[ChernMonomial::c(2)] = Rational(288);
    t.entries[ChernMonomial::c(2, 2)] = Rational(1920);
    t.entries[ChernMonomial::c(4)] = Rational(480);
    return t;
}

}  // namespace

TEST_CASE("rr_k3n: binomial expansion binom(q/2+n+1, n)") {
    RRPoly p2 = rr_k3n(2);
    CHECK(p2.coeffs == std::vector<Rational>{Rational(1, 8), Rational(5, 4), Rational(3)});

    // A_1 = (n+3) / (2^n (n-1)!) in general; n = 3.
    RRPoly p3 = rr_k3n(3);
    CHECK(p3.A(0) == Rational(1, 48));
    CHECK(p3.A(1) == Rational(6, 16));
    CHECK(p3.A(3) == Rational(4));

    RRPoly p5 = rr_k3n(5);
    CHECK(p5.A(0) == Rational(1, 3840));
    CHECK(p5.A(1) == Rational(1, 96));
    CHECK(p5.A(2) == Rational(31, 192));
    CHECK(p5.A(5) == Rational(6));

    // Constant coefficient: chi(O) = n + 1; binomial oracle at q = 0.
    for (unsigned n = 2; n <= 8; ++n) {
        CHECK(rr_k3n(n).A(n) == Rational(n + 1));
        CHECK(rr_k3n(n)(Rational(0)) == Rational(n + 1));
    }
    CHECK_THROWS_AS(rr_k3n(1), InvalidInput);
}

TEST_CASE("rr_kumn: (n+1) binom(q/2+n, n)") {
    RRPoly p2 = rr_kumn(2);
    CHECK(p2.coeffs == std::vector<Rational>{Rational(3, 8), Rational(9, 4), Rational(3)});

    // A_1 = (n+1)^2 / (2^n (n-1)!); n = 3 gives 1.
    CHECK(rr_kumn(3).A(1) == Rational(1));
    for (unsigned n = 2; n <= 8; ++n) CHECK(rr_kumn(n).A(n) == Rational(n + 1));
}

TEST_CASE("even-integer root ladders of the two smooth families") {
    for (unsigned n = 2; n <= 8; ++n) {
        auto rk = even_integer_roots(rr_k3n(n).as_poly());
        REQUIRE(rk.size() == n);
        for (unsigned i = 0; i < n; ++i) CHECK(rk[i] == Rational(-2ll * (n + 1 - i)));
        auto ru = even_integer_roots(rr_kumn(n).as_poly());
        REQUIRE(ru.size() == n);
        for (unsigned i = 0; i < n; ++i) CHECK(ru[i] == Rational(-2ll * (n - i)));
    }
}

TEST_CASE("rr_scale: (1/m) p(mq)") {
    RRPoly m3 = rr_scale(rr_k3n(2), 3);
    CHECK(m3.coeffs == std::vector<Rational>{Rational(3, 8), Rational(5, 4), Rational(1)});
    RRPoly m11 = rr_scale(rr_k3n(2), 11);
    CHECK(m11.coeffs == std::vector<Rational>{Rational(11, 8), Rational(5, 4), Rational(3, 11)});
    CHECK(rr_scale(rr_k3n(4), 1) == rr_k3n(4));
}

TEST_CASE("degree4_from_rr reproduces the two fourfold rows") {
    FujikiTable k3 = degree4_from_rr(rr_k3n(2));
    CHECK(k3.C1() == Rational(3));
    CHECK(k3.at(ChernMonomial::c(2)) == Rational(30));
    CHECK(k3.at(ChernMonomial::c(2, 2)) == Rational(828));
    CHECK(k3.at(ChernMonomial::c(4)) == Rational(324));

    FujikiTable kum = degree4_from_rr(rr_kumn(2));
    CHECK(kum.C1() == Rational(9));
    CHECK(kum.at(ChernMonomial::c(2)) == Rational(54));
    CHECK(kum.at(ChernMonomial::c(2, 2)) == Rational(756));
    CHECK(kum.at(ChernMonomial::c(4)) == Rational(108));

    FujikiTable og10 = degree4_from_rr(rr_k3n(5));
    CHECK(og10.C1() == Rational(945));
    CHECK(og10.at(ChernMonomial::c(2)) == Rational(5040));
    CHECK(og10.at(ChernMonomial::c(2, 2)) == Rational(32400));
    CHECK(og10.at(ChernMonomial::c(4)) == Rational(13500));
}

TEST_CASE("degree4_from_rr round-trips to the RR prefix") {
    for (unsigned n = 2; n <= 8; ++n) {
        for (const RRPoly& p : {rr_k3n(n), rr_kumn(n)}) {
            auto prefix = rr_prefix_from_degree4(degree4_from_rr(p));
            CHECK(prefix[0] == p.A(0));
            CHECK(prefix[1] == p.A(1));
            CHECK(prefix[2] == p.A(2));
        }
    }
}

TEST_CASE("degree-4 round trip on randomized RR prefixes") {
    std::mt19937_64 rng(4242);
    for (int i = 0; i < 200; ++i) {
        unsigned n = 2 + static_cast<unsigned>(rng() % 7);
        Rational a0(static_cast<long long>(rng() % 40) + 1, static_cast<long long>(rng() % 9) + 1);
        Rational a1(static_cast<long long>(rng() % 81) - 40, static_cast<long long>(rng() % 9) + 1);
        Rational a2(static_cast<long long>(rng() % 81) - 40, static_cast<long long>(rng() % 9) + 1);
        std::vector<Rational> coeffs(n + 1);
        coeffs[0] = a0;
        coeffs[1] = a1;
        coeffs[2] = a2;
        auto prefix = rr_prefix_from_degree4(degree4_from_rr(RRPoly(n, std::move(coeffs))));
        CHECK(prefix[0] == a0);
        CHECK(prefix[1] == a1);
        CHECK(prefix[2] == a2);
    }
}

TEST_CASE("fujiki_q_mult and fujiki_q_power") {
    // n=5, b=24: C(q) = (32/9) * 945 = 3360, and (3/2) C(q) = C(c2).
    CHECK(fujiki_q_mult(Rational(945), 0, 5, 24) == Rational(3360));
    CHECK(Rational(3, 2) * Rational(3360) == Rational(5040));

    // n=3, b=8: C(q) = (12/5) * 60 = 144, and 2 * 144 = C(c2) = 288.
    CHECK(fujiki_q_mult(Rational(60), 0, 3, 8) == Rational(144));

    // Factor-one case: b2 = 1 makes the numerator equal the denominator.
    CHECK(fujiki_q_mult(Rational(7), 1, 4, 1) == Rational(7));
    CHECK(fujiki_q_mult(Rational(7), 0, 2, 1) == Rational(7));

    CHECK(fujiki_q_power(2, 5, 24, Rational(945)) == Rational(14400));
    CHECK(Rational(15, 16) * Rational(14400) == Rational(13500));
    CHECK(fujiki_q_power(3, 3, 8, Rational(60)) == Rational(3840));
    CHECK(fujiki_q_power(0, 5, 24, Rational(945)) == Rational(945));
    CHECK(fujiki_q_power(5, 5, 24, Rational(945)) == Rational(16773120));

    CHECK_THROWS_AS(fujiki_q_mult(Rational(1), 5, 5, 24), DegreeOverflow);
    CHECK_THROWS_AS(fujiki_q_power(6, 5, 24, Rational(945)), DegreeOverflow);
}

TEST_CASE("eval_fujiki_integral") {
    CHECK(eval_fujiki_integral(Rational(288), Rational(2), 3, 1) == Rational(1152));
    CHECK(eval_fujiki_integral(Rational(77), Rational(0), 3, 1) == Rational(0));
    CHECK(eval_fujiki_integral(Rational(3), Rational(2), 2, 0) == Rational(12));
}

TEST_CASE("hitchin_sawon_check residuals") {
    CHECK(hitchin_sawon_check(table_k3_2()) == Rational(0));
    CHECK(hitchin_sawon_check(table_og6_deg4()) == Rational(0));
    for (unsigned n = 2; n <= 8; ++n) {
        CHECK(hitchin_sawon_check(degree4_from_rr(rr_k3n(n))) == Rational(0));
        CHECK(hitchin_sawon_check(degree4_from_rr(rr_kumn(n))) == Rational(0));
    }
    FujikiTable perturbed = table_k3_2();
    perturbed.entries[ChernMonomial::c(4)] += Rational(1);
    CHECK(hitchin_sawon_check(perturbed) == Rational(-4));
}

TEST_CASE("rr_half: factorized half-Todd polynomial") {
    // K3^[2]-type data: r = 5/4, C(td^{1/2}_4) = 25/32.
    CHECK(rr_half_r(2, Rational(3), Rational(30)) == Rational(5, 4));
    RRPoly h = rr_half(2, Rational(3), Rational(30));
    CHECK(h.A(0) == Rational(1, 8));
    CHECK(h.A(2) == Rational(25, 32));
    CHECK(sqrt_todd_constant(2, 2, Rational(3), Rational(30)) == Rational(25, 32));
    // Independent route: 7*828/5760 - 324/1440 via the genus expansion.
    CHECK(evaluate(sqrt_todd_component(2), table_k3_2()) == Rational(25, 32));

    // OG6 profile: r = 1.
    CHECK(rr_half_r(3, Rational(60), Rational(288)) == Rational(1));

    CHECK_THROWS_AS(rr_half(1, Rational(1), Rational(1)), InvalidInput);
}

TEST_CASE("evaluate on tables") {
    CHECK(evaluate(todd_component(2), table_k3_2()) == Rational(3));
    CHECK(evaluate(chern_character(1), table_og6_deg4()) == Rational(-288));
    FujikiTable incomplete;
    incomplete.n = 2;
    incomplete.entries[ChernMonomial::unit()] = Rational(3);
    CHECK_THROWS_AS(evaluate(todd_component(2), incomplete), MissingMonomial);
}

TEST_CASE("c2_verbitsky_check equality cases") {
    auto rep = c2_verbitsky_check(table_k3_2(), 23);
    CHECK(rep.lhs == Rational(828));
    CHECK(rep.rhs == Rational(828));
    CHECK(rep.is_in_verbitsky);

    auto og10 = c2_verbitsky_check(degree4_from_rr(rr_k3n(5)), 24);
    CHECK(og10.is_in_verbitsky);

    // Strictness for the higher Hilbert schemes at their actual b2 = 23.
    auto k3n4 = c2_verbitsky_check(degree4_from_rr(rr_k3n(4)), 23);
    CHECK(!k3n4.is_in_verbitsky);
    CHECK(k3n4.lhs > k3n4.rhs);

    // An inconsistent table (C(c2^2) too small) is rejected.
    FujikiTable bad = table_k3_2();
    bad.entries[ChernMonomial::c(2, 2)] = Rational(827);
    CHECK_THROWS_AS(c2_verbitsky_check(bad, 23), InequalityViolated);
}

TEST_CASE("b2_bound_from_rr") {
    for (unsigned n = 2; n <= 8; ++n) {
        auto rep = b2_bound_from_rr(rr_k3n(n));
        REQUIRE(rep.condition_holds);
        CHECK(*rep.bound == Rational(n) + Rational(17) + Rational(12) / Rational(n + 1));
        auto repk = b2_bound_from_rr(rr_kumn(n));
        REQUIRE(repk.condition_holds);
        CHECK(*repk.bound == Rational(n + 5));
    }
    RRPoly nikulin(2, {Rational(1, 4), Rational(3, 2), Rational(17, 8)});
    auto rep = b2_bound_from_rr(nikulin);
    REQUIRE(rep.condition_holds);
    CHECK(*rep.bound == Rational(16));
}

TEST_CASE("b2_bound_from_mu") {
    auto k4 = b2_bound_from_mu(2, Rational(16, 3));
    REQUIRE(k4.condition_holds);
    CHECK(*k4.bound == Rational(8));

    auto k3p = b2_bound_from_mu(2, Rational(540, 100));
    REQUIRE(k3p.condition_holds);
    CHECK(*k3p.bound == Rational(135, 17));

    auto boundary = b2_bound_from_mu(2, Rational(2));
    CHECK(!boundary.condition_holds);
    CHECK(!boundary.bound.has_value());
}

TEST_CASE("b2_bound_from_mu is strictly decreasing in mu") {
    Rational prev;
    bool first = true;
    for (long long i = 1; i <= 40; ++i) {
        Rational mu = Rational(2) + Rational(i, 7);
        auto rep = b2_bound_from_mu(2, mu);
        REQUIRE(rep.condition_holds);
        if (!first) CHECK(*rep.bound < prev);
        prev = *rep.bound;
        first = false;
    }
}

TEST_CASE("dispersion_bound") {
    CHECK(dispersion_bound({Rational(4), Rational(6)}, 2) == Rational(23));
    CHECK(dispersion_bound({Rational(2), Rational(4)}, 2) == Rational(7));
    // Homogeneity under lambda -> t lambda.
    for (long long t = 1; t <= 5; ++t)
        CHECK(dispersion_bound({Rational(4 * t), Rational(6 * t)}, 2) == Rational(23));
    CHECK_THROWS_AS(dispersion_bound({Rational(3), Rational(3)}, 2), AllRootsEqual);
    CHECK_THROWS_AS(dispersion_bound({Rational(-1), Rational(2)}, 2), InvalidInput);
}

TEST_CASE("dispersion_bound agrees with b2_bound_from_rr on split polynomials") {
    std::vector<std::vector<Rational>> root_sets = {
        {Rational(4), Rational(6)},
        {Rational(2), Rational(4)},
        {Rational(1), Rational(2), Rational(7)},
        {Rational(3, 2), Rational(5, 2), Rational(9, 2), Rational(11, 2)},
    };
    for (const auto& lambdas : root_sets) {
        unsigned n = static_cast<unsigned>(lambdas.size());
        Poly p = Poly::from_roots(lambdas, Rational(1, 7));
        // p has roots -lambda_i; coefficients of q^{n-i} are A_i.
        std::vector<Rational> a(n + 1);
        for (unsigned i = 0; i <= n; ++i) a[i] = p.coeff(n - i);
        auto rep = b2_bound_from_rr(RRPoly(n, std::move(a)));
        REQUIRE(rep.condition_holds);
        CHECK(*rep.bound == dispersion_bound(lambdas, n));
    }
}

TEST_CASE("bound invariance under rr_scale") {
    for (unsigned m : {1u, 2u, 3u, 7u, 11u}) {
        auto base = b2_bound_from_rr(rr_k3n(2));
        auto scaled = b2_bound_from_rr(rr_scale(rr_k3n(2), m));
        CHECK(*base.bound == *scaled.bound);
    }
}

TEST_CASE("positivity_report") {
    auto a = positivity_report(table_k3_2(), 23);
    CHECK(a.c2sq_positive);
    CHECK(a.c4_positive_guaranteed);
    auto b = positivity_report(table_k3_2(), 4);
    CHECK(b.c2sq_positive);
    CHECK(!b.c4_positive_guaranteed);
    auto c = positivity_report(table_og6_deg4(), 3);
    CHECK(!c.c4_positive_guaranteed);
}

TEST_CASE("small_fujiki") {
    CHECK(small_fujiki(2, Rational(3)) == Rational(1));
    CHECK(small_fujiki(3, Rational(60)) == Rational(4));
    CHECK(small_fujiki(5, Rational(945)) == Rational(1));
}

TEST_CASE("ch4_constant") {
    CHECK(ch4_constant(table_k3_2()) == Rational(15));
    CHECK(ch4_constant(degree4_from_rr(rr_k3n(5))) == Rational(450));
    FujikiTable boundary = table_k3_2();
    boundary.entries[ChernMonomial::c(2, 2)] = Rational(648);
    CHECK(ch4_constant(boundary) == Rational(0));
}
