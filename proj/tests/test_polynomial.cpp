#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hkinv/polynomial.hpp"

using namespace hkinv;

namespace {

// Independent oracle: binom(q/2 + c, 2) expanded by hand as a product of the
// two linear factors, evaluated directly.
Rational binom_half_eval(long long c, const Rational& q) {
    Rational t = q / Rational(2) + Rational(c);
    return t * (t - Rational(1)) / Rational(2);
}

Poly random_poly(std::mt19937_64& rng, int max_deg) {
    std::vector<Rational> c(static_cast<std::size_t>(rng() % (max_deg + 1)) + 1);
    for (auto& x : c)
        x = Rational(static_cast<long long>(rng() % 21) - 10, static_cast<long long>(rng() % 6) + 1);
    return Poly(std::move(c));
}

}  // namespace

TEST_CASE("poly_eval: exact Horner evaluation") {
    // q^2/8 + 5q/4 + 3 = binom(q/2+3, 2); value frozen from the oracle.
    Poly p({Rational(3), Rational(5, 4), Rational(1, 8)});
    CHECK(binom_half_eval(3, Rational(2)) == Rational(6));
    CHECK(p(Rational(2)) == Rational(6));

    CHECK(Poly()(Rational(17, 3)) == Rational(0));  // zero polynomial

    // Nikulin-orbifold RR polynomial at q = 0.
    Poly nikulin({Rational(17, 8), Rational(3, 2), Rational(1, 4)});
    CHECK(nikulin(Rational(0)) == Rational(17, 8));
}

TEST_CASE("degree convention: zero polynomial reports -1") {
    CHECK(Poly().degree() == -1);
    CHECK(Poly(Rational(5)).degree() == 0);
    CHECK(Poly({Rational(0), Rational(0)}).degree() == -1);  // trailing zeros trimmed
}

TEST_CASE("even_integer_roots on binomial RR shapes") {
    // binom(q/2+3, 2) has roots q/2+3 in {0, 1}, i.e. q in {-6, -4}.
    Poly k3 = Poly::from_roots({Rational(-4), Rational(-6)}, Rational(1, 8));
    CHECK(even_integer_roots(k3) == std::vector<Rational>{Rational(-6), Rational(-4)});

    // 3 binom(q/2+2, 2): roots -4, -2.
    Poly kum = Poly::from_roots({Rational(-2), Rational(-4)}, Rational(3, 8));
    CHECK(even_integer_roots(kum) == std::vector<Rational>{Rational(-4), Rational(-2)});

    Poly no_roots({Rational(1), Rational(0), Rational(1)});  // q^2 + 1
    CHECK(even_integer_roots(no_roots).empty());

    CHECK_THROWS_AS(even_integer_roots(Poly()), InvalidInput);
}

TEST_CASE("even_integer_roots reports multiplicity and even zero roots") {
    Poly p = Poly::from_roots({Rational(-2), Rational(-2), Rational(0), Rational(3)});
    auto roots = even_integer_roots(p);
    CHECK(roots == std::vector<Rational>{Rational(-2), Rational(-2), Rational(0)});
}

TEST_CASE("division round trip: (p*d)/d == p") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 300; ++i) {
        Poly p = random_poly(rng, 6);
        Poly d = random_poly(rng, 4);
        if (d.is_zero()) continue;
        auto dm = Poly::divmod(p * d, d);
        CHECK(dm.rem.is_zero());
        CHECK(dm.quot == p);
    }
}

TEST_CASE("divmod identity a = q*b + r with deg r < deg b") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 300; ++i) {
        Poly a = random_poly(rng, 7);
        Poly b = random_poly(rng, 3);
        if (b.is_zero()) continue;
        auto dm = Poly::divmod(a, b);
        CHECK(dm.quot * b + dm.rem == a);
        CHECK(dm.rem.degree() < b.degree());
    }
}

TEST_CASE("substitute_scaled: p(s q)") {
    Poly p({Rational(3), Rational(5, 4), Rational(1, 8)});
    Poly scaled = p.substitute_scaled(Rational(3));
    CHECK(scaled(Rational(2)) == p(Rational(6)));
}
