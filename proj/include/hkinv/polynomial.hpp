#pragma once

#include <map>
#include <string>
#include <vector>

#include "hkinv/rational.hpp"

namespace hkinv {

// Univariate polynomial over Rational, coefficient i = degree i.
// Trailing zeros are trimmed; the zero polynomial has an empty coefficient
// vector and degree() reports -1 (standing in for degree -infinity).
class Poly {
  public:
    Poly() = default;
    Poly(Rational c) : c_{std::move(c)} { trim(); }
    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly monomial(unsigned deg, Rational coeff = Rational(1)) {
        std::vector<Rational> c(deg + 1);
        c[deg] = std::move(coeff);
        return Poly(std::move(c));
    }

    static Poly from_roots(const std::vector<Rational>& roots, const Rational& lead = Rational(1)) {
        Poly p(lead);
        for (const auto& r : roots) p = p * Poly({-r, Rational(1)});
        return p;
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }

    Rational coeff(unsigned i) const { return i < c_.size() ? c_[i] : Rational(0); }

    Rational operator()(const Rational& x) const {
        Rational acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
        return Poly(std::move(c));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(c));
    }
    friend Poly operator*(const Rational& s, const Poly& p) {
        std::vector<Rational> c = p.c_;
        for (auto& x : c) x *= s;
        return Poly(std::move(c));
    }

    struct DivMod;
    static DivMod divmod(const Poly& a, const Poly& b);
    friend Poly operator/(const Poly& a, const Poly& b);

    // p(s*x): coefficient i picks up s^i.
    Poly substitute_scaled(const Rational& s) const {
        std::vector<Rational> c = c_;
        Rational f(1);
        for (auto& x : c) {
            x *= f;
            f *= s;
        }
        return Poly(std::move(c));
    }

    std::string to_string(const std::string& var = "q") const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += c_[i].to_string();
            if (i > 0) s += "*" + var;
            if (i > 1) s += "^" + std::to_string(i);
        }
        return s;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  private:
    std::vector<Rational> c_;

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
};

struct Poly::DivMod {
    Poly quot, rem;
};

inline Poly::DivMod Poly::divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw InvalidInput("Poly: division by zero polynomial");
    DivMod out;
    out.rem = a;
    if (a.degree() < b.degree()) return out;
    std::vector<Rational> q(a.degree() - b.degree() + 1);
    while (!out.rem.is_zero() && out.rem.degree() >= b.degree()) {
        unsigned shift = out.rem.degree() - b.degree();
        Rational f = out.rem.c_.back() / b.c_.back();
        q[shift] = f;
        Poly sub = f * b;
        std::vector<Rational> shifted(shift, Rational(0));
        shifted.insert(shifted.end(), sub.c_.begin(), sub.c_.end());
        out.rem = out.rem - Poly(std::move(shifted));
    }
    out.quot = Poly(std::move(q));
    return out;
}

inline Poly operator/(const Poly& a, const Poly& b) { return Poly::divmod(a, b).quot; }

namespace detail {

// All positive divisors of |n|, via trial division.  Values in this library
// factor smoothly; a residual cofactor above the sieve bound is treated as
// prime, which can only ever drop divisors larger than any root we search.
inline std::vector<BigInt> positive_divisors(BigInt n) {
    n = n.abs();
    std::vector<std::pair<BigInt, unsigned>> fac;
    for (long long p = 2; p <= 1000000; p = (p == 2 ? 3 : p + 2)) {
        BigInt bp(p);
        if (bp * bp > n) break;
        unsigned e = 0;
        for (;;) {
            auto dm = BigInt::divmod(n, bp);
            if (!dm.rem.is_zero()) break;
            n = dm.quot;
            ++e;
        }
        if (e) fac.emplace_back(bp, e);
    }
    if (n > BigInt(1)) fac.emplace_back(n, 1);
    std::vector<BigInt> divs{BigInt(1)};
    for (const auto& [p, e] : fac) {
        std::size_t base = divs.size();
        BigInt pk(1);
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
        }
    }
    return divs;
}

}  // namespace detail

// All even integer roots of p, with multiplicity, in increasing order.
// Candidates are the even divisors of the trailing coefficient of the
// denominator-cleared polynomial (rational root theorem), each confirmed by
// exact division.
inline std::vector<Rational> even_integer_roots(const Poly& p) {
    if (p.is_zero()) throw InvalidInput("even_integer_roots: zero polynomial");
    std::vector<Rational> roots;
    Poly work = p;
    // Factor out x^k first; 0 is an even root.
    while (work.coeff(0).is_zero() && work.degree() > 0) {
        roots.push_back(Rational(0));
        work = work / Poly::monomial(1);
    }
    if (work.degree() < 1) {
        std::sort(roots.begin(), roots.end());
        return roots;
    }
    // Clear denominators so integer-root candidates divide the constant term.
    BigInt lcm(1);
    for (const auto& c : work.coeffs())
        if (!c.is_zero()) lcm = lcm / BigInt::gcd(lcm, c.den()) * c.den();
    std::vector<Rational> ic = work.coeffs();
    for (auto& c : ic) c *= Rational(lcm);
    BigInt constant = ic.front().num();
    for (const auto& d : detail::positive_divisors(constant)) {
        if (d.is_odd()) continue;
        for (int s : {1, -1}) {
            Rational r(s == 1 ? d : -d);
            while (!work.is_zero() && work.degree() > 0 && work(r).is_zero()) {
                roots.push_back(r);
                work = work / Poly({-r, Rational(1)});
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace hkinv
