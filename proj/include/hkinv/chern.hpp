#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "hkinv/rational.hpp"

namespace hkinv {

// Monomial in even Chern classes, c_2^{e2} c_4^{e4} ..., stored as sorted
// (index, exponent) pairs with even indices >= 2.  The empty monomial is the
// unit class 1.  weight() is the cohomological half-degree sum(index * exp).
class ChernMonomial {
  public:
    ChernMonomial() = default;

    // From {index, exponent} pairs, e.g. {{2,2},{4,1}} = c2^2 c4.
    ChernMonomial(std::initializer_list<std::pair<unsigned, unsigned>> factors) {
        for (auto [i, e] : factors) mul_by(i, e);
    }

    static ChernMonomial c(unsigned index, unsigned exp = 1) {
        ChernMonomial m;
        m.mul_by(index, exp);
        return m;
    }

    static ChernMonomial unit() { return {}; }

    void mul_by(unsigned index, unsigned exp) {
        if (exp == 0) return;
        if (index < 2 || index % 2 != 0)
            throw InvalidInput("ChernMonomial: only even Chern classes c2, c4, ... are allowed");
        for (auto& [i, e] : factors_)
            if (i == index) {
                e += exp;
                return;
            }
        factors_.emplace_back(index, exp);
        std::sort(factors_.begin(), factors_.end());
    }

    friend ChernMonomial operator*(const ChernMonomial& a, const ChernMonomial& b) {
        ChernMonomial r = a;
        for (auto [i, e] : b.factors_) r.mul_by(i, e);
        return r;
    }

    unsigned weight() const {
        unsigned w = 0;
        for (auto [i, e] : factors_) w += i * e;
        return w;
    }

    bool is_unit() const { return factors_.empty(); }
    const std::vector<std::pair<unsigned, unsigned>>& factors() const { return factors_; }

    friend bool operator==(const ChernMonomial&, const ChernMonomial&) = default;
    friend auto operator<=>(const ChernMonomial& a, const ChernMonomial& b) {
        if (a.weight() != b.weight()) return a.weight() <=> b.weight();
        return a.factors_ <=> b.factors_;
    }

    // "1", "c2", "c2^2.c4", ...
    std::string to_string() const {
        if (factors_.empty()) return "1";
        std::string s;
        for (auto [i, e] : factors_) {
            if (!s.empty()) s += ".";
            s += "c" + std::to_string(i);
            if (e > 1) s += "^" + std::to_string(e);
        }
        return s;
    }

    static ChernMonomial parse(const std::string& s) {
        ChernMonomial m;
        if (s == "1") return m;
        std::size_t pos = 0;
        while (pos < s.size()) {
            std::size_t end = s.find('.', pos);
            if (end == std::string::npos) end = s.size();
            std::string part = s.substr(pos, end - pos);
            if (part.empty() || part[0] != 'c')
                throw InvalidInput("ChernMonomial: cannot parse '" + s + "'");
            std::size_t caret = part.find('^');
            unsigned index = static_cast<unsigned>(std::stoul(part.substr(1, caret - 1)));
            unsigned exp = caret == std::string::npos
                               ? 1u
                               : static_cast<unsigned>(std::stoul(part.substr(caret + 1)));
            m.mul_by(index, exp);
            pos = end + 1;
        }
        return m;
    }

  private:
    std::vector<std::pair<unsigned, unsigned>> factors_;
};

// Finite rational combination of Chern monomials.  Zero coefficients are
// never stored.  Used for universal characteristic-class expansions, so the
// interesting values are weight-homogeneous, but sums of mixed weight are
// allowed as intermediates.
class ChernPolynomial {
  public:
    ChernPolynomial() = default;
    ChernPolynomial(Rational constant) {
        if (!constant.is_zero()) terms_[ChernMonomial::unit()] = std::move(constant);
    }

    static ChernPolynomial term(ChernMonomial m, Rational coeff) {
        ChernPolynomial p;
        if (!coeff.is_zero()) p.terms_[std::move(m)] = std::move(coeff);
        return p;
    }

    const std::map<ChernMonomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coeff(const ChernMonomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const ChernMonomial& m, const Rational& coeff) {
        if (coeff.is_zero()) return;
        auto [it, fresh] = terms_.emplace(m, coeff);
        if (!fresh) {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend ChernPolynomial operator+(const ChernPolynomial& a, const ChernPolynomial& b) {
        ChernPolynomial r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend ChernPolynomial operator-(const ChernPolynomial& a, const ChernPolynomial& b) {
        ChernPolynomial r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    friend ChernPolynomial operator*(const Rational& s, const ChernPolynomial& p) {
        ChernPolynomial r;
        if (s.is_zero()) return r;
        for (const auto& [m, c] : p.terms_) r.terms_[m] = s * c;
        return r;
    }
    friend ChernPolynomial operator*(const ChernPolynomial& a, const ChernPolynomial& b) {
        ChernPolynomial r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }

    // True when every stored monomial has the given weight.
    bool is_homogeneous_of_weight(unsigned w) const {
        for (const auto& [m, c] : terms_)
            if (m.weight() != w) return false;
        return true;
    }

    friend bool operator==(const ChernPolynomial&, const ChernPolynomial&) = default;

    // One line per term: "coeff * monomial".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            if (!s.empty()) s += "\n";
            s += c.to_string() + " * " + m.to_string();
        }
        return s;
    }

  private:
    std::map<ChernMonomial, Rational> terms_;
};

}  // namespace hkinv
