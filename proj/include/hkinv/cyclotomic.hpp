#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <vector>

#include "hkinv/polynomial.hpp"

namespace hkinv {

// Raised when a requested determinant factor prod(1 - zeta^{j*w_i}) vanishes,
// i.e. some j*w_i is divisible by the order.
struct VanishingDeterminant : InvalidInput {
    using InvalidInput::InvalidInput;
};

// Raised by rational_part on an element with nonzero higher coordinates.
struct NotRational : InvalidInput {
    using InvalidInput::InvalidInput;
};

inline unsigned euler_phi(unsigned m) {
    unsigned result = m;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

// m-th cyclotomic polynomial, computed as (x^m - 1) / prod_{d|m, d<m} Phi_d.
inline const Poly& cyclotomic_polynomial(unsigned m) {
    static std::map<unsigned, Poly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    std::function<const Poly&(unsigned)> get = [&](unsigned k) -> const Poly& {
        auto hit = cache.find(k);
        if (hit != cache.end()) return hit->second;
        std::vector<Rational> xk(k + 1);
        xk[0] = Rational(-1);
        xk[k] = Rational(1);
        Poly num(std::move(xk));
        for (unsigned d = 1; d < k; ++d)
            if (k % d == 0) num = num / get(d);
        return cache.emplace(k, std::move(num)).first->second;
    };
    return get(m);
}

// Element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^{phi(m)-1}
// modulo Phi_m.  Immutable after construction.
class CycloElem {
  public:
    explicit CycloElem(unsigned m, Poly value = Poly()) : m_(m) {
        reduced_ = Poly::divmod(std::move(value), cyclotomic_polynomial(m)).rem;
    }

    static CycloElem constant(unsigned m, Rational r) { return CycloElem(m, Poly(std::move(r))); }

    // zeta_m^k for any integer exponent k.
    static CycloElem zeta_power(unsigned m, long long k) {
        long long e = k % static_cast<long long>(m);
        if (e < 0) e += m;
        return CycloElem(m, Poly::monomial(static_cast<unsigned>(e)));
    }

    unsigned order() const { return m_; }
    const Poly& value() const { return reduced_; }
    bool is_zero() const { return reduced_.is_zero(); }

    std::vector<Rational> coords() const {
        std::vector<Rational> v(euler_phi(m_));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = reduced_.coeff(static_cast<unsigned>(i));
        return v;
    }

    friend CycloElem operator+(const CycloElem& a, const CycloElem& b) {
        a.check_same(b);
        return CycloElem(a.m_, a.reduced_ + b.reduced_);
    }
    friend CycloElem operator-(const CycloElem& a, const CycloElem& b) {
        a.check_same(b);
        return CycloElem(a.m_, a.reduced_ - b.reduced_);
    }
    friend CycloElem operator*(const CycloElem& a, const CycloElem& b) {
        a.check_same(b);
        return CycloElem(a.m_, a.reduced_ * b.reduced_);
    }

    // Inverse via the extended Euclid algorithm in Q[x]; Phi_m is irreducible
    // over Q, so every nonzero element is invertible.
    CycloElem inverse() const {
        if (is_zero()) throw InvalidInput("CycloElem: inverse of zero");
        Poly r0 = cyclotomic_polynomial(m_), r1 = reduced_;
        Poly s0, s1{Rational(1)};
        while (!r1.is_zero()) {
            auto dm = Poly::divmod(r0, r1);
            Poly r2 = dm.rem;
            Poly s2 = s0 - dm.quot * s1;
            r0 = r1;
            r1 = r2;
            s0 = s1;
            s1 = s2;
        }
        // r0 = gcd (a nonzero constant), s0 its Bezout cofactor for reduced_.
        return CycloElem(m_, (Rational(1) / r0.coeff(0)) * s0);
    }

    friend bool operator==(const CycloElem& a, const CycloElem& b) {
        return a.m_ == b.m_ && a.reduced_ == b.reduced_;
    }

  private:
    unsigned m_;
    Poly reduced_;

    void check_same(const CycloElem& o) const {
        if (m_ != o.m_) throw InvalidInput("CycloElem: mixed cyclotomic orders");
    }
};

// prod_i (1 - zeta_m^{j*w_i}), the determinant det(Id - g^j) of the diagonal
// action with weights w_i.  Throws VanishingDeterminant if a factor is zero.
inline CycloElem cyclo_det_factor(unsigned m, const std::vector<unsigned>& weights, unsigned j) {
    if (m < 2 || j < 1 || j >= m) throw InvalidInput("cyclo_det_factor: need 1 <= j <= m-1");
    CycloElem acc = CycloElem::constant(m, Rational(1));
    for (unsigned w : weights) {
        if (w >= m) throw InvalidInput("cyclo_det_factor: weight out of range");
        if ((static_cast<unsigned long long>(j) * w) % m == 0)
            throw VanishingDeterminant("cyclo_det_factor: zeta^(j*w) = 1 at j=" + std::to_string(j));
        acc = acc * (CycloElem::constant(m, Rational(1)) - CycloElem::zeta_power(m, static_cast<long long>(j) * w));
    }
    return acc;
}

// The rational value of an element whose higher power-basis coordinates vanish.
inline Rational rational_part(const CycloElem& x) {
    if (x.value().degree() > 0)
        throw NotRational("rational_part: element has nonzero zeta coordinates");
    return x.value().coeff(0);
}

}  // namespace hkinv
