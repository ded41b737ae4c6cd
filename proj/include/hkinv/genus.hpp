#pragma once

#include <array>
#include <vector>

#include "hkinv/chern.hpp"
#include "hkinv/series.hpp"

namespace hkinv {

// Universal characteristic-class expansions in even Chern classes, i.e. with
// c_1 = c_3 = ... = 0.  Everything is capped at weight 10 (components k <= 5),
// the deepest case needed for ten-dimensional targets.
inline constexpr unsigned kMaxGenusWeight = 10;
inline constexpr unsigned kMaxGenusK = kMaxGenusWeight / 2;

namespace detail {

// Power sums p_m in the even elementary classes via Newton's identities,
// with all odd elementary symmetric functions set to zero.
inline const std::vector<ChernPolynomial>& power_sums() {
    static const std::vector<ChernPolynomial> table = [] {
        std::vector<ChernPolynomial> p(kMaxGenusWeight + 1);
        auto e = [](unsigned i) {
            if (i % 2 != 0 || i == 0 || i > kMaxGenusWeight) return ChernPolynomial();
            return ChernPolynomial::term(ChernMonomial::c(i), Rational(1));
        };
        for (unsigned m = 1; m <= kMaxGenusWeight; ++m) {
            ChernPolynomial acc;
            for (unsigned i = 1; i < m; ++i) {
                ChernPolynomial prod = e(i) * p[m - i];
                acc = (i % 2 == 1) ? acc + prod : acc - prod;
            }
            ChernPolynomial last = Rational(static_cast<long long>(m)) * e(m);
            p[m] = (m % 2 == 1) ? acc + last : acc - last;
        }
        return p;
    }();
    return table;
}

// Graded product of weight-indexed collections, truncated at kMaxGenusWeight.
inline std::vector<ChernPolynomial> graded_mul(const std::vector<ChernPolynomial>& a,
                                               const std::vector<ChernPolynomial>& b) {
    std::vector<ChernPolynomial> r(kMaxGenusWeight + 1);
    for (unsigned i = 0; i <= kMaxGenusWeight; ++i)
        for (unsigned j = 0; i + j <= kMaxGenusWeight; ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

// Components of exp(scale * sum_m s_m p_m) where s_m are the coefficients of
// log Q(x) for the Todd characteristic series Q(x) = x / (1 - e^{-x}).
inline std::vector<ChernPolynomial> todd_family(const Rational& scale) {
    // E(x) = (1 - e^{-x}) / x = sum_j (-1)^j x^j / (j+1)!,   log Q = -log E.
    Series E(kMaxGenusWeight + 1);
    for (unsigned j = 0; j <= kMaxGenusWeight; ++j) {
        Rational c = Rational(1) / rat_factorial(j + 1);
        E.c[j] = (j % 2 == 0) ? c : -c;
    }
    Series logE = Series::log(E, kMaxGenusWeight + 1);

    std::vector<ChernPolynomial> S(kMaxGenusWeight + 1);
    const auto& p = power_sums();
    for (unsigned m = 1; m <= kMaxGenusWeight; ++m) S[m] = (-scale * logE.c[m]) * p[m];

    std::vector<ChernPolynomial> result(kMaxGenusWeight + 1);
    result[0] = ChernPolynomial(Rational(1));
    std::vector<ChernPolynomial> power = result;  // S^0
    for (unsigned j = 1; j <= kMaxGenusK; ++j) {  // S^j has weight >= 2j
        power = graded_mul(power, S);
        Rational inv_fact = Rational(1) / rat_factorial(j);
        for (unsigned w = 0; w <= kMaxGenusWeight; ++w)
            result[w] = result[w] + inv_fact * power[w];
    }
    return result;
}

inline const std::vector<ChernPolynomial>& todd_table() {
    static const std::vector<ChernPolynomial> t = todd_family(Rational(1));
    return t;
}

inline const std::vector<ChernPolynomial>& sqrt_todd_table() {
    static const std::vector<ChernPolynomial> t = todd_family(Rational(1, 2));
    return t;
}

inline void check_genus_range(unsigned k) {
    if (k > kMaxGenusK)
        throw Unsupported("genus: components above weight " + std::to_string(kMaxGenusWeight) +
                          " are not implemented (requested k=" + std::to_string(k) + ")");
}

}  // namespace detail

// ch_{2k} = p_{2k} / (2k)! with odd Chern classes zero.  1 <= k <= 5.
inline ChernPolynomial chern_character(unsigned k) {
    detail::check_genus_range(k);
    if (k == 0) throw Unsupported("chern_character: k = 0 (the rank term) has no universal value");
    return (Rational(1) / rat_factorial(2 * k)) * detail::power_sums()[2 * k];
}

// Degree-2k Todd component, e.g. td_2 = c2/12, td_4 = (3c2^2 - c4)/720.
inline ChernPolynomial todd_component(unsigned k) {
    detail::check_genus_range(k);
    return detail::todd_table()[2 * k];
}

// Degree-2k component of the formal square root of the Todd series,
// e.g. td^{1/2}_2 = c2/24, td^{1/2}_4 = 7/5760 c2^2 - 1/1440 c4.
inline ChernPolynomial sqrt_todd_component(unsigned k) {
    detail::check_genus_range(k);
    return detail::sqrt_todd_table()[2 * k];
}

}  // namespace hkinv
