#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include "hkinv/bigint.hpp"
#include "hkinv/error.hpp"

namespace hkinv {

// Exact rational number, always reduced, denominator > 0.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    // Parses "p", "-p" or "p/q".
    static Rational parse(std::string_view s) {
        auto slash = s.find('/');
        if (slash == std::string_view::npos) return Rational(BigInt(s));
        return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_ == BigInt(1); }
    int sign() const { return num_.sign(); }

    friend Rational operator-(Rational a) {
        a.num_ = -a.num_;
        return a;
    }
    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw InvalidInput("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ <=> b.num_ * a.den_;
    }

    Rational abs() const { return Rational(num_.abs(), den_); }

    Rational pow(int e) const {
        if (e >= 0) return Rational(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
        if (is_zero()) throw InvalidInput("Rational: negative power of zero");
        return Rational(den_.pow(static_cast<unsigned>(-e)), num_.pow(static_cast<unsigned>(-e)));
    }

    // Exact square root when it exists (both parts of the reduced fraction square).
    std::optional<Rational> sqrt_exact() const {
        if (sign() < 0) return std::nullopt;
        BigInt rn = num_.isqrt(), rd = den_.isqrt();
        if (rn * rn == num_ && rd * rd == den_) return Rational(rn, rd);
        return std::nullopt;
    }

    // Smallest integer >= value.
    BigInt ceil() const {
        auto dm = BigInt::divmod(num_, den_);
        if (!dm.rem.is_zero() && num_.sign() > 0) return dm.quot + BigInt(1);
        return dm.quot;
    }
    // Largest integer <= value.
    BigInt floor() const {
        auto dm = BigInt::divmod(num_, den_);
        if (!dm.rem.is_zero() && num_.sign() < 0) return dm.quot - BigInt(1);
        return dm.quot;
    }

    double to_double() const { return num_.to_double() / den_.to_double(); }

    // "p/q", or just "p" when the denominator is 1.
    std::string to_string() const {
        std::string s = num_.to_string();
        if (!is_integer()) s += "/" + den_.to_string();
        return s;
    }

  private:
    BigInt num_, den_;

    void normalize() {
        if (den_.is_zero()) throw InvalidInput("Rational: zero denominator");
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_.is_zero()) {
            den_ = BigInt(1);
            return;
        }
        BigInt g = BigInt::gcd(num_, den_);
        num_ = num_ / g;
        den_ = den_ / g;
    }
};

inline Rational rat_factorial(unsigned n) { return Rational(factorial(n)); }

inline Rational rat_binomial(unsigned n, unsigned k) { return Rational(binomial(n, k)); }

}  // namespace hkinv
