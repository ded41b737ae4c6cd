#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "hkinv/error.hpp"

namespace hkinv {

// Sign-magnitude arbitrary-precision integer on 32-bit limbs (little endian).
// Magnitudes in this library stay small (a few hundred bits), so schoolbook
// multiplication and bitwise long division are entirely adequate.
class BigInt {
  public:
    BigInt() = default;

    BigInt(long long v) {
        if (v < 0) { neg_ = true; }
        unsigned long long m = neg_ ? ~static_cast<unsigned long long>(v) + 1ull
                                    : static_cast<unsigned long long>(v);
        while (m) {
            limbs_.push_back(static_cast<std::uint32_t>(m & 0xffffffffull));
            m >>= 32;
        }
    }

    explicit BigInt(std::string_view s) {
        bool neg = false;
        std::size_t i = 0;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            neg = s[i] == '-';
            ++i;
        }
        if (i == s.size()) throw InvalidInput("BigInt: empty numeral");
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9')
                throw InvalidInput("BigInt: bad digit in '" + std::string(s) + "'");
            mul_small_add(10, static_cast<std::uint32_t>(s[i] - '0'));
        }
        neg_ = neg && !limbs_.empty();
    }

    bool is_zero() const { return limbs_.empty(); }
    bool is_negative() const { return neg_; }
    int sign() const { return limbs_.empty() ? 0 : (neg_ ? -1 : 1); }
    bool is_odd() const { return !limbs_.empty() && (limbs_[0] & 1u); }

    std::size_t bit_length() const {
        if (limbs_.empty()) return 0;
        std::uint32_t top = limbs_.back();
        std::size_t b = (limbs_.size() - 1) * 32;
        while (top) { ++b; top >>= 1; }
        return b;
    }

    // Value clamped into a long long; callers must know the range fits.
    long long to_ll() const {
        unsigned long long m = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) m = (m << 32) | limbs_[i];
        long long v = static_cast<long long>(m);
        return neg_ ? -v : v;
    }

    double to_double() const {
        double m = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) m = m * 4294967296.0 + limbs_[i];
        return neg_ ? -m : m;
    }

    friend BigInt operator-(BigInt a) {
        if (!a.limbs_.empty()) a.neg_ = !a.neg_;
        return a;
    }

    BigInt abs() const {
        BigInt r = *this;
        r.neg_ = false;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.neg_ == b.neg_) {
            BigInt r;
            r.limbs_ = add_mag(a.limbs_, b.limbs_);
            r.neg_ = a.neg_ && !r.limbs_.empty();
            return r;
        }
        int c = cmp_mag(a.limbs_, b.limbs_);
        if (c == 0) return BigInt{};
        BigInt r;
        if (c > 0) {
            r.limbs_ = sub_mag(a.limbs_, b.limbs_);
            r.neg_ = a.neg_;
        } else {
            r.limbs_ = sub_mag(b.limbs_, a.limbs_);
            r.neg_ = b.neg_;
        }
        return r;
    }

    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        BigInt r;
        if (a.is_zero() || b.is_zero()) return r;
        r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
        for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
                std::uint64_t cur = static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                                    r.limbs_[i + j] + carry;
                r.limbs_[i + j] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
            }
            r.limbs_[i + b.limbs_.size()] = static_cast<std::uint32_t>(carry);
        }
        r.trim();
        r.neg_ = (a.neg_ != b.neg_) && !r.limbs_.empty();
        return r;
    }

    // Truncated quotient and remainder; remainder carries the dividend's sign.
    struct DivMod;
    static DivMod divmod(const BigInt& a, const BigInt& b);

    friend BigInt operator/(const BigInt& a, const BigInt& b);
    friend BigInt operator%(const BigInt& a, const BigInt& b);

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.neg_ == b.neg_ && a.limbs_ == b.limbs_;
    }
    friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
        if (a.sign() != b.sign()) return a.sign() <=> b.sign();
        int c = cmp_mag(a.limbs_, b.limbs_);
        if (a.neg_) c = -c;
        return c <=> 0;
    }

    static BigInt gcd(BigInt a, BigInt b) {
        // Binary gcd; avoids long division in the rational-reduction hot path.
        a.neg_ = b.neg_ = false;
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        unsigned shift = 0;
        while (!a.is_odd() && !b.is_odd()) {
            a.shr1();
            b.shr1();
            ++shift;
        }
        while (!a.is_odd()) a.shr1();
        while (!b.is_zero()) {
            while (!b.is_odd()) b.shr1();
            if (cmp_mag(a.limbs_, b.limbs_) > 0) std::swap(a.limbs_, b.limbs_);
            b.limbs_ = sub_mag(b.limbs_, a.limbs_);
        }
        while (shift--) a.shl1();
        return a;
    }

    BigInt pow(unsigned e) const {
        BigInt r(1), base = *this;
        while (e) {
            if (e & 1u) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    // Floor of the square root of a non-negative value (digit-by-digit, base 4).
    BigInt isqrt() const {
        if (neg_) throw InvalidInput("BigInt: isqrt of negative value");
        if (is_zero()) return BigInt{};
        BigInt res, rem;
        std::size_t nb = bit_length();
        if (nb % 2) ++nb;
        for (std::size_t i = nb; i >= 2; i -= 2) {
            rem.shl1();
            rem.shl1();
            std::uint32_t two = (bit(i - 1) ? 2u : 0u) | (bit(i - 2) ? 1u : 0u);
            if (two) rem.set_low_bits(two);
            BigInt trial = res;
            trial.shl1();
            trial.shl1();
            trial.set_low_bits(1);  // 4*res + 1
            res.shl1();
            if (cmp_mag(rem.limbs_, trial.limbs_) >= 0) {
                rem.limbs_ = sub_mag(rem.limbs_, trial.limbs_);
                res.set_low_bits(1);
            }
        }
        res.trim();
        return res;
    }

    bool is_perfect_square() const {
        if (neg_) return false;
        BigInt r = isqrt();
        return r * r == *this;
    }

    std::string to_string() const {
        if (limbs_.empty()) return "0";
        std::vector<std::uint32_t> chunks;  // base 1e9 digits, little endian
        BigInt t = abs();
        while (!t.is_zero()) chunks.push_back(t.div_small(1000000000u));
        std::string s = neg_ ? "-" : "";
        s += std::to_string(chunks.back());
        for (std::size_t i = chunks.size() - 1; i-- > 0;) {
            std::string d = std::to_string(chunks[i]);
            s += std::string(9 - d.size(), '0') + d;
        }
        return s;
    }

  private:
    std::vector<std::uint32_t> limbs_;
    bool neg_ = false;

    bool bit(std::size_t i) const {
        std::size_t l = i / 32;
        return l < limbs_.size() && ((limbs_[l] >> (i % 32)) & 1u);
    }

    void set_low_bits(std::uint32_t mask) {
        if (limbs_.empty()) limbs_.push_back(mask);
        else limbs_[0] |= mask;
    }

    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
        if (limbs_.empty()) neg_ = false;
    }

    void shl1() {
        std::uint32_t carry = 0;
        for (auto& l : limbs_) {
            std::uint32_t nc = l >> 31;
            l = (l << 1) | carry;
            carry = nc;
        }
        if (carry) limbs_.push_back(carry);
    }

    void shr1() {
        std::uint32_t carry = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) {
            std::uint32_t nc = limbs_[i] & 1u;
            limbs_[i] = (limbs_[i] >> 1) | (carry << 31);
            carry = nc;
        }
        trim();
    }

    void mul_small_add(std::uint32_t m, std::uint32_t a) {
        std::uint64_t carry = a;
        for (auto& l : limbs_) {
            std::uint64_t cur = static_cast<std::uint64_t>(l) * m + carry;
            l = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        while (carry) {
            limbs_.push_back(static_cast<std::uint32_t>(carry));
            carry >>= 32;
        }
    }

    // Divides magnitude in place by a small divisor, returns the remainder.
    std::uint32_t div_small(std::uint32_t d) {
        std::uint64_t rem = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | limbs_[i];
            limbs_[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        trim();
        return static_cast<std::uint32_t>(rem);
    }

    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }

    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        const auto& big = a.size() >= b.size() ? a : b;
        const auto& small = a.size() >= b.size() ? b : a;
        std::vector<std::uint32_t> r = big;
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            std::uint64_t cur = carry + r[i] + (i < small.size() ? small[i] : 0u);
            r[i] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
            if (!carry && i >= small.size()) break;
        }
        if (carry) r.push_back(static_cast<std::uint32_t>(carry));
        return r;
    }

    // Requires |a| >= |b|.
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r = a;
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            std::int64_t cur = static_cast<std::int64_t>(r[i]) - borrow -
                               (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
            borrow = cur < 0;
            if (cur < 0) cur += (1ll << 32);
            r[i] = static_cast<std::uint32_t>(cur);
            if (!borrow && i >= b.size()) break;
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
};

struct BigInt::DivMod {
    BigInt quot, rem;
};

inline BigInt::DivMod BigInt::divmod(const BigInt& a, const BigInt& b) {
    if (b.is_zero()) throw InvalidInput("BigInt: division by zero");
    DivMod out;
    if (cmp_mag(a.limbs_, b.limbs_) < 0) {
        out.rem = a;
        return out;
    }
    // Bitwise long division on magnitudes.
    BigInt q, r;
    std::size_t nbits = a.bit_length();
    q.limbs_.assign((nbits + 31) / 32, 0);
    for (std::size_t i = nbits; i-- > 0;) {
        r.shl1();
        if (a.bit(i)) r.set_low_bits(1);
        if (cmp_mag(r.limbs_, b.limbs_) >= 0) {
            r.limbs_ = sub_mag(r.limbs_, b.limbs_);
            q.limbs_[i / 32] |= (1u << (i % 32));
        }
    }
    q.trim();
    r.trim();
    q.neg_ = (a.neg_ != b.neg_) && !q.limbs_.empty();
    r.neg_ = a.neg_ && !r.limbs_.empty();
    out.quot = q;
    out.rem = r;
    return out;
}

inline BigInt operator/(const BigInt& a, const BigInt& b) { return BigInt::divmod(a, b).quot; }
inline BigInt operator%(const BigInt& a, const BigInt& b) { return BigInt::divmod(a, b).rem; }

inline BigInt factorial(unsigned n) {
    BigInt r(1);
    for (unsigned i = 2; i <= n; ++i) r *= BigInt(i);
    return r;
}

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return BigInt(0);
    k = std::min(k, n - k);
    BigInt num(1), den(1);
    for (unsigned i = 0; i < k; ++i) {
        num *= BigInt(n - i);
        den *= BigInt(i + 1);
    }
    return num / den;
}

}  // namespace hkinv
