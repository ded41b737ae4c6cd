#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hkinv/rational.hpp"

using namespace hkinv;

TEST_CASE("BigInt arithmetic round trips through strings") {
    BigInt a("123456789012345678901234567890");
    CHECK(a.to_string() == "123456789012345678901234567890");
    CHECK((-a).to_string() == "-123456789012345678901234567890");
    CHECK((a - a).to_string() == "0");
    CHECK((a + a).to_string() == "246913578024691357802469135780");
}

TEST_CASE("BigInt divmod is exact, truncating toward zero") {
    BigInt a(1000000007ll), b(97);
    auto dm = BigInt::divmod(a, b);
    CHECK(dm.quot * b + dm.rem == a);
    CHECK(BigInt::divmod(BigInt(-7), BigInt(2)).quot == BigInt(-3));
    CHECK(BigInt::divmod(BigInt(-7), BigInt(2)).rem == BigInt(-1));
    CHECK_THROWS_AS(BigInt::divmod(a, BigInt(0)), InvalidInput);
}

TEST_CASE("BigInt divmod against 64-bit arithmetic on random inputs") {
    std::mt19937_64 rng(12345);
    for (int i = 0; i < 2000; ++i) {
        long long x = static_cast<long long>(rng() % 2000000000000ll) - 1000000000000ll;
        long long y = static_cast<long long>(rng() % 999983) + 1;
        auto dm = BigInt::divmod(BigInt(x), BigInt(y));
        CHECK(dm.quot == BigInt(x / y));
        CHECK(dm.rem == BigInt(x % y));
        CHECK(BigInt::gcd(BigInt(x), BigInt(y)) == BigInt(std::gcd(x, y)));
    }
}

TEST_CASE("BigInt multi-limb division satisfies a = q*b + r with |r| < |b|") {
    BigInt a("123456789012345678901234567890123456789");
    BigInt b("987654321987654321");
    auto dm = BigInt::divmod(a, b);
    CHECK(dm.quot * b + dm.rem == a);
    CHECK(dm.rem.abs() < b.abs());
    CHECK(dm.quot == BigInt("124999998748437501153"));  // frozen from an independent bignum
    BigInt c = a * b;
    CHECK(c / b == a);
    CHECK((c + BigInt(17)) % b == BigInt(17));
}

TEST_CASE("BigInt integer square root") {
    CHECK(BigInt(0).isqrt() == BigInt(0));
    CHECK(BigInt(1).isqrt() == BigInt(1));
    CHECK(BigInt(1296).isqrt() == BigInt(36));
    CHECK(BigInt(1295).isqrt() == BigInt(35));
    BigInt big = BigInt("123456789123456789").pow(2);
    CHECK(big.isqrt() == BigInt("123456789123456789"));
    CHECK(big.is_perfect_square());
    CHECK(!(big + BigInt(1)).is_perfect_square());
}

TEST_CASE("Rational is always reduced with positive denominator") {
    Rational r(6, -8);
    CHECK(r.num() == BigInt(-3));
    CHECK(r.den() == BigInt(4));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK_THROWS_AS(Rational(1, 0), InvalidInput);
}

TEST_CASE("Rational arithmetic is exact") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(Rational(7, 5760) * Rational(828) - Rational(324, 1440) * Rational(1, 2) ==
          Rational(828 * 7, 5760) - Rational(324, 2880));
}

TEST_CASE("Rational string format p/q round trips") {
    CHECK(Rational::parse("135/17").to_string() == "135/17");
    CHECK(Rational::parse("-3/9").to_string() == "-1/3");
    CHECK(Rational::parse("42").to_string() == "42");
    CHECK(Rational::parse("42") == Rational(42));
    std::mt19937_64 rng(99);
    for (int i = 0; i < 500; ++i) {
        Rational r(static_cast<long long>(rng() % 20001) - 10000,
                   static_cast<long long>(rng() % 999) + 1);
        CHECK(Rational::parse(r.to_string()) == r);
    }
}

TEST_CASE("Rational exact square roots") {
    CHECK(Rational(1296).sqrt_exact() == Rational(36));
    CHECK(Rational(25, 16).sqrt_exact() == Rational(5, 4));
    CHECK(!Rational(2).sqrt_exact().has_value());
    CHECK(!Rational(-4).sqrt_exact().has_value());
    CHECK(!Rational(676, 3).sqrt_exact().has_value());
}

TEST_CASE("Rational ordering, floor and ceil") {
    CHECK(Rational(135, 17) < Rational(8));
    CHECK(Rational(135, 17).floor() == BigInt(7));
    CHECK(Rational(135, 17).ceil() == BigInt(8));
    CHECK(Rational(-7, 2).floor() == BigInt(-4));
    CHECK(Rational(-7, 2).ceil() == BigInt(-3));
}
