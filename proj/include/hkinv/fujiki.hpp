#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hkinv/genus.hpp"
#include "hkinv/polynomial.hpp"

namespace hkinv {

// A monomial required by an evaluation is absent from the table.
struct MissingMonomial : InvalidInput {
    using InvalidInput::InvalidInput;
};
// q-power multiplication requested past the top degree.
struct DegreeOverflow : InvalidInput {
    using InvalidInput::InvalidInput;
};
// The Verbitsky projection inequality fails: the input data is inconsistent.
struct InequalityViolated : VerificationFailure {
    using VerificationFailure::VerificationFailure;
};
// Dispersion bound degenerates when all roots coincide (Cauchy-Schwarz equality).
struct AllRootsEqual : InvalidInput {
    using InvalidInput::InvalidInput;
};

// Riemann-Roch polynomial of a 2n-dimensional target:
//   RR(q) = A_0 q^n + A_1 q^{n-1} + ... + A_n,
// where A_i = C(td_{2n-2i}) / (2(n-i))!.  For smooth targets A_n = n + 1.
struct RRPoly {
    unsigned n = 0;
    std::vector<Rational> coeffs;  // A_0 ... A_n

    RRPoly() = default;
    RRPoly(unsigned half_dim, std::vector<Rational> a) : n(half_dim), coeffs(std::move(a)) {
        if (coeffs.size() != n + 1) throw InvalidInput("RRPoly: need exactly n+1 coefficients");
        if (!(coeffs[0] > Rational(0))) throw InvalidInput("RRPoly: leading coefficient must be positive");
    }

    const Rational& A(unsigned i) const { return coeffs.at(i); }

    Poly as_poly() const {
        std::vector<Rational> c(n + 1);
        for (unsigned i = 0; i <= n; ++i) c[n - i] = coeffs[i];
        return Poly(std::move(c));
    }

    Rational operator()(const Rational& q) const { return as_poly()(q); }

    friend bool operator==(const RRPoly&, const RRPoly&) = default;
};

// Generalized Fujiki constants C(c_lambda) indexed by Chern monomials; the
// unit monomial holds the Fujiki constant C(1).  b2 is carried when known.
struct FujikiTable {
    unsigned n = 0;
    std::optional<unsigned> b2;
    std::map<ChernMonomial, Rational> entries;

    const Rational& at(const ChernMonomial& m) const {
        auto it = entries.find(m);
        if (it == entries.end())
            throw MissingMonomial("FujikiTable: no entry for " + m.to_string());
        return it->second;
    }

    Rational C1() const { return at(ChernMonomial::unit()); }

    bool complete_to_weight(unsigned w) const {
        // Every monomial of weight <= w must be present.  Monomials are
        // multisets of even indices >= 2, i.e. partitions into even parts.
        std::vector<ChernMonomial> todo{ChernMonomial::unit()};
        for (std::size_t i = 0; i < todo.size(); ++i) {
            if (!entries.count(todo[i])) return false;
            unsigned last = todo[i].factors().empty() ? kMaxGenusWeight
                                                      : todo[i].factors().front().first;
            for (unsigned idx = 2; idx <= last && todo[i].weight() + idx <= w; idx += 2)
                todo.push_back(todo[i] * ChernMonomial::c(idx));
        }
        return true;
    }

    void require_weight(unsigned w, const char* who) const {
        if (!complete_to_weight(w))
            throw MissingMonomial(std::string(who) + ": table is not complete to weight " +
                                  std::to_string(w));
    }
};

// Linear extension of C(.) to polynomials in Chern classes.
inline Rational evaluate(const ChernPolynomial& cp, const FujikiTable& table) {
    Rational acc(0);
    for (const auto& [m, coeff] : cp.terms()) acc += coeff * table.at(m);
    return acc;
}

// Outcome of the b2-bound computation from the leading RR coefficients.
struct BoundReport {
    bool condition_holds = false;
    std::optional<Rational> bound;           // present iff condition_holds
    std::optional<Rational> mu;              // C(c2^2)/C(c4) when that route was used
    std::string attained_iff = "c2 in Sym^2 H^2";
};

// RR polynomial of the Hilbert-scheme family:  binom(q/2 + n + 1, n).
inline RRPoly rr_k3n(unsigned n) {
    if (n < 2) throw InvalidInput("rr_k3n: need n >= 2");
    std::vector<Rational> roots;
    for (unsigned j = 2; j <= n + 1; ++j) roots.push_back(Rational(-2ll * j));
    Poly p = Poly::from_roots(roots, Rational(1) / (Rational(2).pow(static_cast<int>(n)) * rat_factorial(n)));
    std::vector<Rational> a(n + 1);
    for (unsigned i = 0; i <= n; ++i) a[i] = p.coeff(n - i);
    return RRPoly(n, std::move(a));
}

// RR polynomial of the generalized-Kummer family:  (n+1) binom(q/2 + n, n).
inline RRPoly rr_kumn(unsigned n) {
    if (n < 2) throw InvalidInput("rr_kumn: need n >= 2");
    std::vector<Rational> roots;
    for (unsigned j = 1; j <= n; ++j) roots.push_back(Rational(-2ll * j));
    Poly p = Poly::from_roots(roots, Rational(n + 1) / (Rational(2).pow(static_cast<int>(n)) * rat_factorial(n)));
    std::vector<Rational> a(n + 1);
    for (unsigned i = 0; i <= n; ++i) a[i] = p.coeff(n - i);
    return RRPoly(n, std::move(a));
}

// (1/m) p(m q): the RR polynomial of a degree-m cyclic quotient.
inline RRPoly rr_scale(const RRPoly& p, unsigned m) {
    if (m < 1) throw InvalidInput("rr_scale: need m >= 1");
    std::vector<Rational> a(p.coeffs);
    Rational mm(static_cast<long long>(m));
    for (unsigned i = 0; i <= p.n; ++i) a[i] *= mm.pow(static_cast<int>(p.n - i)) / mm;
    return RRPoly(p.n, std::move(a));
}

// The four degree <= 4 generalized Fujiki constants determined by A_0, A_1, A_2:
//   C(1)     = (2n)! A_0
//   C(c2)    = 12 (2n-2)! A_1
//   C(c2^2)  = 144 (2n-4)! (4 A_2 - (n-1) A_1^2 / (n A_0))
//   C(c4)    = 144 (2n-4)! (7 A_2 - 3 (n-1) A_1^2 / (n A_0))
inline FujikiTable degree4_from_rr(const RRPoly& p, std::optional<unsigned> b2 = std::nullopt) {
    const unsigned n = p.n;
    if (n < 2) throw InvalidInput("degree4_from_rr: need n >= 2");
    Rational cross = Rational(n - 1) * p.A(1) * p.A(1) / (Rational(n) * p.A(0));
    Rational f4 = Rational(144) * rat_factorial(2 * n - 4);
    FujikiTable t;
    t.n = n;
    t.b2 = b2;
    t.entries[ChernMonomial::unit()] = rat_factorial(2 * n) * p.A(0);
    t.entries[ChernMonomial::c(2)] = Rational(12) * rat_factorial(2 * n - 2) * p.A(1);
    t.entries[ChernMonomial::c(2, 2)] = f4 * (Rational(4) * p.A(2) - cross);
    t.entries[ChernMonomial::c(4)] = f4 * (Rational(7) * p.A(2) - Rational(3) * cross);
    return t;
}

// C(q * alpha) = (b + 2n - 2k - 2)/(2n - 2k - 1) * C(alpha) for alpha of
// degree 4k on a 2n-dimensional target with b2 = b.
inline Rational fujiki_q_mult(const Rational& c_alpha, unsigned k, unsigned n, unsigned b2) {
    if (k >= n) throw DegreeOverflow("fujiki_q_mult: need k < n");
    long long d = 2ll * n - 2ll * k - 1;
    return c_alpha * Rational(static_cast<long long>(b2) + 2 * n - 2 * k - 2, d);
}

// C(q^k) = prod_{i=1..k} (b + 2n - 2i)/(1 + 2n - 2i) * C(1).
inline Rational fujiki_q_power(unsigned k, unsigned n, unsigned b2, const Rational& c1) {
    if (k > n) throw DegreeOverflow("fujiki_q_power: need k <= n");
    Rational acc = c1;
    for (unsigned i = 1; i <= k; ++i) acc = fujiki_q_mult(acc, i - 1, n, b2);
    return acc;
}

// The defining relation: integral of alpha * beta^{2n-2k} = C(alpha) q(beta)^{n-k}.
inline Rational eval_fujiki_integral(const Rational& c_alpha, const Rational& q_beta, unsigned n,
                                     unsigned k) {
    if (k > n) throw InvalidInput("eval_fujiki_integral: need k <= n");
    return c_alpha * q_beta.pow(static_cast<int>(n - k));
}

// Residual of the Hitchin-Sawon relation
//   7 C(c2^2) - 4 C(c4) = 5 (2n-1) C(c2)^2 / ((2n-3) C(1));
// zero iff the relation holds.
inline Rational hitchin_sawon_check(const FujikiTable& t) {
    if (t.n < 2) throw InvalidInput("hitchin_sawon_check: need n > 1");
    t.require_weight(4, "hitchin_sawon_check");
    Rational lhs = Rational(7) * t.at(ChernMonomial::c(2, 2)) - Rational(4) * t.at(ChernMonomial::c(4));
    Rational rhs = Rational(5) * Rational(2 * t.n - 1) * t.at(ChernMonomial::c(2)).pow(2) /
                   (Rational(2 * t.n - 3) * t.C1());
    return lhs - rhs;
}

// The half-Todd polynomial data: r_X = (2n-1) C(c2) / (24 C(1)) and the n-th
// power factorization RR_{1/2}(q) = C(td^{1/2}_{2n}) (1 + q/(2 r_X))^n.
inline Rational rr_half_r(unsigned n, const Rational& c1, const Rational& c_c2) {
    return Rational(2 * n - 1) * c_c2 / (Rational(24) * c1);
}

inline RRPoly rr_half(unsigned n, const Rational& c1, const Rational& c_c2) {
    if (n < 2) throw InvalidInput("rr_half: need n >= 2");
    if (!(c1 > Rational(0)) || !(c_c2 > Rational(0)))
        throw InvalidInput("rr_half: need C(1) > 0 and C(c2) > 0");
    Rational r = rr_half_r(n, c1, c_c2);
    Rational top = c1 * (Rational(2) * r).pow(static_cast<int>(n)) / rat_factorial(2 * n);
    std::vector<Rational> a(n + 1);
    Rational inv2r = Rational(1) / (Rational(2) * r);
    for (unsigned i = 0; i <= n; ++i)
        a[i] = top * rat_binomial(n, n - i) * inv2r.pow(static_cast<int>(n - i));
    return RRPoly(n, std::move(a));
}

// C(td^{1/2}_{2k}) under the factorization, for any 0 <= k <= n.
inline Rational sqrt_todd_constant(unsigned n, unsigned k, const Rational& c1, const Rational& c_c2) {
    if (k > n) throw InvalidInput("sqrt_todd_constant: need k <= n");
    RRPoly h = rr_half(n, c1, c_c2);
    // Coefficient of q^{n-k} is C(td^{1/2}_{2k}) / (2(n-k))!.
    return h.A(k) * rat_factorial(2 * (n - k));
}

struct VerbitskyReport {
    Rational lhs, rhs;
    bool is_in_verbitsky = false;
};

// Tests the equality case of the projection inequality
//   C(c2^2) >= (2n-1)(b+2n-4) C(c2)^2 / ((2n-3)(b+2n-2) C(1)),
// equality iff c2 lies in Sym^2 H^2.  Strict failure of >= means the input
// does not describe a consistent target.
inline VerbitskyReport c2_verbitsky_check(const FujikiTable& t, unsigned b2) {
    if (b2 < 3) throw InvalidInput("c2_verbitsky_check: need b2 >= 3");
    t.require_weight(4, "c2_verbitsky_check");
    const unsigned n = t.n;
    VerbitskyReport rep;
    rep.lhs = t.at(ChernMonomial::c(2, 2));
    rep.rhs = Rational(2 * n - 1) * Rational(static_cast<long long>(b2) + 2 * n - 4) *
              t.at(ChernMonomial::c(2)).pow(2) /
              (Rational(2 * n - 3) * Rational(static_cast<long long>(b2) + 2 * n - 2) * t.C1());
    rep.is_in_verbitsky = rep.lhs == rep.rhs;
    if (rep.lhs < rep.rhs)
        throw InequalityViolated("c2_verbitsky_check: C(c2^2) < projection bound; data inconsistent");
    return rep;
}

// Betti bound from the first three RR coefficients: under
//   2n A_0 A_2 < (n-1) A_1^2
// we get b2 <= 1 / (1 - 2n A_0 A_2 / ((n-1) A_1^2)) - (2n - 2).
inline BoundReport b2_bound_from_rr(const RRPoly& p) {
    const unsigned n = p.n;
    if (n < 2) throw InvalidInput("b2_bound_from_rr: need n >= 2");
    BoundReport rep;
    Rational ratio = Rational(2 * n) * p.A(0) * p.A(2) / (Rational(n - 1) * p.A(1) * p.A(1));
    rep.condition_holds = ratio < Rational(1);
    if (rep.condition_holds)
        rep.bound = Rational(1) / (Rational(1) - ratio) - Rational(2 * n - 2);
    return rep;
}

// Same bound expressed through mu = C(c2^2)/C(c4):  b2 <= 9 - 2n + 10/(mu - 2),
// valid when mu > 2.
inline BoundReport b2_bound_from_mu(unsigned n, const Rational& mu) {
    BoundReport rep;
    rep.mu = mu;
    rep.condition_holds = mu > Rational(2);
    if (rep.condition_holds)
        rep.bound = Rational(9) - Rational(2 * n) + Rational(10) / (mu - Rational(2));
    return rep;
}

// Dispersion form of the bound for RR = A_0 prod (q + lambda_i):
//   b2 <= (n-1) / (n sum(l^2)/(sum l)^2 - 1) - (2n - 2).
// Homogeneous of degree 0 in the roots.
inline Rational dispersion_bound(const std::vector<Rational>& lambdas, unsigned n) {
    if (lambdas.size() != n || n < 2) throw InvalidInput("dispersion_bound: need n >= 2 roots");
    Rational s1(0), s2(0);
    for (const auto& l : lambdas) {
        if (!(l > Rational(0))) throw InvalidInput("dispersion_bound: roots must be positive");
        s1 += l;
        s2 += l * l;
    }
    Rational denom = Rational(n) * s2 / (s1 * s1) - Rational(1);
    if (denom.is_zero()) throw AllRootsEqual("dispersion_bound: all roots equal");
    return Rational(n - 1) / denom - Rational(2 * n - 2);
}

struct PositivityReport {
    bool c2sq_positive = true;  // always guaranteed
    bool c4_positive_guaranteed = false;
};

// C(c2^2) is always positive; C(c4) is guaranteed positive iff b2 + 2n > 9.
inline PositivityReport positivity_report(const FujikiTable& t, unsigned b2) {
    t.require_weight(4, "positivity_report");
    PositivityReport rep;
    rep.c4_positive_guaranteed = b2 + 2 * t.n > 9;
    return rep;
}

// Small Fujiki constant c_X with C(1) = (2n)!/(2^n n!) c_X.
inline Rational small_fujiki(unsigned n, const Rational& c1) {
    return c1 * Rational(2).pow(static_cast<int>(n)) * rat_factorial(n) / rat_factorial(2 * n);
}

// C(ch_4) = (C(c2^2) - 2 C(c4)) / 12.
inline Rational ch4_constant(const FujikiTable& t) {
    t.require_weight(4, "ch4_constant");
    return (t.at(ChernMonomial::c(2, 2)) - Rational(2) * t.at(ChernMonomial::c(4))) / Rational(12);
}

// Inverse of degree4_from_rr: the (A_0, A_1, A_2) prefix determined by a
// weight-4-complete table.
inline std::array<Rational, 3> rr_prefix_from_degree4(const FujikiTable& t) {
    t.require_weight(4, "rr_prefix_from_degree4");
    const unsigned n = t.n;
    Rational a0 = t.C1() / rat_factorial(2 * n);
    Rational a1 = t.at(ChernMonomial::c(2)) / (Rational(12) * rat_factorial(2 * n - 2));
    Rational a2 = (Rational(3) * t.at(ChernMonomial::c(2, 2)) - t.at(ChernMonomial::c(4))) /
                  (Rational(720) * rat_factorial(2 * n - 4));
    return {a0, a1, a2};
}

}  // namespace hkinv
