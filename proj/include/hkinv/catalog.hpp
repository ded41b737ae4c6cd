#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hkinv/fujiki.hpp"

namespace hkinv {

// No fixture table under the requested name.
struct UnknownEntry : InvalidInput {
    using InvalidInput::InvalidInput;
};
// The sequential Chern-class solve lost its pivot.
struct SolveFailure : VerificationFailure {
    using VerificationFailure::VerificationFailure;
};

// A known deformation type together with its generalized Fujiki constants.
// OG6 and OG10 carry complete tables up to their top weight plus the scalars
// mu_k with c_{2k} = mu_k q^k; the two fourfolds carry complete weight-4
// tables; the higher members of the two infinite families carry only the
// weight <= 4 data determined by their Riemann-Roch polynomial.
struct ManifoldEntry {
    std::string name;
    unsigned n = 2;
    unsigned b2 = 3;
    FujikiTable table;
    std::map<unsigned, Rational> chern_q_coeffs;  // k -> mu_k, where known
    std::string source;
};

namespace catalog_detail {

inline void put(FujikiTable& t, std::initializer_list<std::pair<unsigned, unsigned>> mono,
                long long value) {
    t.entries[ChernMonomial(mono)] = Rational(value);
}

inline ManifoldEntry make_k3_2() {
    ManifoldEntry e;
    e.name = "k3_2";
    e.n = 2;
    e.b2 = 23;
    e.table = degree4_from_rr(rr_k3n(2), 23);
    e.chern_q_coeffs = {{1, Rational(6, 5)}};  // c2 = (6/5) q
    e.source = "degree-4 constants of the Hilbert square of a K3 surface";
    return e;
}

inline ManifoldEntry make_kum_2() {
    ManifoldEntry e;
    e.name = "kum_2";
    e.n = 2;
    e.b2 = 7;
    e.table = degree4_from_rr(rr_kumn(2), 7);
    e.chern_q_coeffs = {{1, Rational(2)}};  // c2 = 2 q
    e.source = "degree-4 constants of the generalized Kummer fourfold";
    return e;
}

inline ManifoldEntry make_og6() {
    ManifoldEntry e;
    e.name = "og6";
    e.n = 3;
    e.b2 = 8;
    e.table.n = 3;
    e.table.b2 = 8;
    put(e.table, {}, 60);
    put(e.table, {{2, 1}}, 288);
    put(e.table, {{4, 1}}, 480);
    put(e.table, {{2, 2}}, 1920);
    put(e.table, {{6, 1}}, 1920);
    put(e.table, {{4, 1}, {2, 1}}, 7680);
    put(e.table, {{2, 3}}, 30720);
    // c2 = 2q, c4 = q^2, c6 = (1/2) q^3.
    e.chern_q_coeffs = {{1, Rational(2)}, {2, Rational(1)}, {3, Rational(1, 2)}};
    e.source = "Chern-number table of the six-dimensional O'Grady deformation type";
    return e;
}

inline ManifoldEntry make_og10() {
    ManifoldEntry e;
    e.name = "og10";
    e.n = 5;
    e.b2 = 24;
    e.table.n = 5;
    e.table.b2 = 24;
    put(e.table, {}, 945);
    put(e.table, {{2, 1}}, 5040);
    put(e.table, {{4, 1}}, 13500);
    put(e.table, {{2, 2}}, 32400);
    put(e.table, {{6, 1}}, 26460);
    put(e.table, {{4, 1}, {2, 1}}, 113400);
    put(e.table, {{2, 3}}, 272160);
    put(e.table, {{8, 1}}, 49770);
    put(e.table, {{6, 1}, {2, 1}}, 343980);
    put(e.table, {{4, 2}}, 614250);
    put(e.table, {{4, 1}, {2, 2}}, 1474200);
    put(e.table, {{2, 4}}, 3538080);
    put(e.table, {{10, 1}}, 176904);
    put(e.table, {{8, 1}, {2, 1}}, 1791720);
    put(e.table, {{6, 1}, {4, 1}}, 5159700);
    put(e.table, {{6, 1}, {2, 2}}, 12383280);
    put(e.table, {{4, 2}, {2, 1}}, 22113000);
    put(e.table, {{4, 1}, {2, 3}}, 53071200);
    put(e.table, {{2, 5}}, 127370880);
    // c2 = (3/2) q, c4 = (15/16) q^2, c6 = (21/64) q^3,
    // c8 = (237/3328) q^4, c10 = (27/2560) q^5.
    e.chern_q_coeffs = {{1, Rational(3, 2)},
                        {2, Rational(15, 16)},
                        {3, Rational(21, 64)},
                        {4, Rational(237, 3328)},
                        {5, Rational(27, 2560)}};
    e.source = "Chern-number table of the ten-dimensional O'Grady deformation type";
    return e;
}

}  // namespace catalog_detail

// Fixture lookup.  Accepted names: k3_2, kum_2, og6, og10, and the
// parametrized families k3n_N / kumn_N for N >= 2 (weight <= 4 data only).
inline ManifoldEntry load_entry(const std::string& name) {
    if (name == "k3_2") return catalog_detail::make_k3_2();
    if (name == "kum_2") return catalog_detail::make_kum_2();
    if (name == "og6") return catalog_detail::make_og6();
    if (name == "og10") return catalog_detail::make_og10();
    auto parse_family = [&](const std::string& prefix) -> std::optional<unsigned> {
        if (name.rfind(prefix, 0) != 0) return std::nullopt;
        try {
            unsigned n = static_cast<unsigned>(std::stoul(name.substr(prefix.size())));
            return n;
        } catch (...) {
            return std::nullopt;
        }
    };
    if (auto n = parse_family("k3n_")) {
        if (*n < 2) throw UnknownEntry("load_entry: need n >= 2 in '" + name + "'");
        ManifoldEntry e;
        e.name = name;
        e.n = *n;
        e.b2 = 23;
        e.table = degree4_from_rr(rr_k3n(*n), 23);
        e.source = "derived from the Riemann-Roch polynomial of the Hilbert-scheme family";
        return e;
    }
    if (auto n = parse_family("kumn_")) {
        if (*n < 2) throw UnknownEntry("load_entry: need n >= 2 in '" + name + "'");
        ManifoldEntry e;
        e.name = name;
        e.n = *n;
        e.b2 = 7;
        e.table = degree4_from_rr(rr_kumn(*n), 7);
        e.source = "derived from the Riemann-Roch polynomial of the generalized Kummer family";
        return e;
    }
    throw UnknownEntry("load_entry: unknown entry '" + name + "'");
}

// For every monomial c_lambda in the table whose factors all carry a known
// mu_k, the residual  C(c_lambda) - (prod mu_k^{e_k}) C(q^{sum k e_k}).
// All residuals vanish on the shipped fixtures.
inline std::vector<std::pair<ChernMonomial, Rational>> verify_q_structure(const ManifoldEntry& e) {
    if (e.chern_q_coeffs.empty())
        throw InvalidInput("verify_q_structure: entry has no Verbitsky coefficients");
    std::vector<std::pair<ChernMonomial, Rational>> residuals;
    Rational c1 = e.table.C1();
    for (const auto& [mono, value] : e.table.entries) {
        Rational coeff(1);
        unsigned qexp = 0;
        bool known = true;
        for (auto [index, exp] : mono.factors()) {
            auto it = e.chern_q_coeffs.find(index / 2);
            if (it == e.chern_q_coeffs.end()) {
                known = false;
                break;
            }
            coeff *= it->second.pow(static_cast<int>(exp));
            qexp += (index / 2) * exp;
        }
        if (!known) continue;
        Rational expected = coeff * fujiki_q_power(qexp, e.n, e.b2, c1);
        residuals.emplace_back(mono, value - expected);
    }
    return residuals;
}

// Sequential determination of the Verbitsky coefficients mu_k of the
// ten-dimensional O'Grady type from its Riemann-Roch polynomial alone:
// mu_1, mu_2 come from the degree-4 constants; for k = 3, 4, 5 the half-Todd
// constant C(td^{1/2}_{2k}) is known from the factorization, every monomial of
// sqrt_todd_component(k) except c_{2k} is a product of previously solved
// classes, and the single unknown mu_k is solved linearly.
inline std::map<unsigned, Rational> og10_sequential_solve(const RRPoly& rr, unsigned b2) {
    if (rr.n != 5) throw InvalidInput("og10_sequential_solve: expected a half-dimension 5 input");
    FujikiTable deg4 = degree4_from_rr(rr);
    Rational c1 = deg4.C1();
    Rational c_c2 = deg4.at(ChernMonomial::c(2));

    std::map<unsigned, Rational> mu;
    mu[1] = c_c2 / fujiki_q_power(1, 5, b2, c1);
    mu[2] = deg4.at(ChernMonomial::c(4)) / fujiki_q_power(2, 5, b2, c1);

    for (unsigned k = 3; k <= 5; ++k) {
        Rational target = sqrt_todd_constant(5, k, c1, c_c2);
        Rational known(0);
        Rational pivot(0);
        const ChernPolynomial component = sqrt_todd_component(k);
        for (const auto& [mono, coeff] : component.terms()) {
            if (mono == ChernMonomial::c(2 * k)) {
                pivot = coeff * fujiki_q_power(k, 5, b2, c1);
                continue;
            }
            Rational factor(1);
            unsigned qexp = 0;
            for (auto [index, exp] : mono.factors()) {
                factor *= mu.at(index / 2).pow(static_cast<int>(exp));
                qexp += (index / 2) * exp;
            }
            known += coeff * factor * fujiki_q_power(qexp, 5, b2, c1);
        }
        if (pivot.is_zero())
            throw SolveFailure("og10_sequential_solve: c_" + std::to_string(2 * k) +
                               " does not appear in the half-Todd component");
        mu[k] = (target - known) / pivot;
    }
    return mu;
}

// Conjectured C(ch_4)/C(1) = 5(n+1) / ((2n-1)(2n-3)).
inline Rational conj_ch4_value(unsigned n) {
    if (n < 2) throw InvalidInput("conj_ch4_value: need n >= 2");
    return Rational(5) * Rational(n + 1) / (Rational(2 * n - 1) * Rational(2 * n - 3));
}

struct Ch8Report {
    Rational ratio;        // C(ch4^2 + 120 ch8) C(1) / C(ch4)^2 on the table
    Rational conjectured;  // (5n+7)(2n-1)(2n-3) / (5(n+1)(2n-5)(2n-7))
    bool match = false;
};

// Degree-8 conjecture evaluator; reported, not asserted.
inline Ch8Report conj_ch8_report(const ManifoldEntry& e) {
    if (e.n < 4) throw InvalidInput("conj_ch8_report: needs half-dimension >= 4");
    e.table.require_weight(8, "conj_ch8_report");
    ChernPolynomial ch4 = chern_character(2);
    ChernPolynomial combo = ch4 * ch4 + Rational(120) * chern_character(4);
    Rational num = evaluate(combo, e.table) * e.table.C1();
    Rational den = evaluate(ch4, e.table).pow(2);
    Ch8Report rep;
    rep.ratio = num / den;
    rep.conjectured = Rational(5 * e.n + 7) * Rational(2 * e.n - 1) * Rational(2 * e.n - 3) /
                      (Rational(5) * Rational(e.n + 1) * Rational(2 * e.n - 5) *
                       Rational(2 * e.n - 7));
    rep.match = rep.ratio == rep.conjectured;
    return rep;
}

// C(1)/(2n)! (q+a)(q+a+2)...(q+a+2n-2): the RR polynomial whose roots form an
// arithmetic progression with difference 2 starting at -a.
inline RRPoly rr_arith(unsigned n, const Rational& a, const Rational& c1) {
    if (n < 2) throw InvalidInput("rr_arith: need n >= 2");
    std::vector<Rational> roots;
    for (unsigned i = 0; i < n; ++i) roots.push_back(-(a + Rational(2 * i)));
    Poly p = Poly::from_roots(roots, c1 / rat_factorial(2 * n));
    std::vector<Rational> coeffs(n + 1);
    for (unsigned i = 0; i <= n; ++i) coeffs[i] = p.coeff(n - i);
    return RRPoly(n, std::move(coeffs));
}

// The finitely many weight-4 constant tables a hyperkaehler fourfold can have
// under the conjectured C(ch4) value: scan C(1) in (1/3)Z over the Guan range
// and keep those making C(c2) = 2 sqrt(C(1)^2 + 72 C(1)) rational.
inline std::vector<FujikiTable> enumerate_fourfold_tables() {
    std::vector<FujikiTable> out;
    for (long long k = 9; k <= 46; ++k) {  // C(1) = k/3 in [3, 46/3]
        Rational c1(k, 3);
        Rational square = c1 * c1 + Rational(72) * c1;
        auto root = square.sqrt_exact();
        if (!root) continue;
        FujikiTable t;
        t.n = 2;
        t.entries[ChernMonomial::unit()] = c1;
        t.entries[ChernMonomial::c(2)] = Rational(2) * *root;
        t.entries[ChernMonomial::c(2, 2)] = Rational(-12) * c1 + Rational(864);
        t.entries[ChernMonomial::c(4)] = Rational(-36) * c1 + Rational(432);
        out.push_back(std::move(t));
    }
    return out;
}

struct BettiTriple {
    unsigned b2, b3;
    long long b4;
    friend bool operator==(const BettiTriple&, const BettiTriple&) = default;
};

// Betti numbers compatible with the two fourfold tables: solve Salamon's
// relation c4 = 48 + 12 b2 - 3 b3 with b3 a non-negative multiple of 4, under
// the family b2-bounds (23 on the C(1)=3 branch, 7 on the C(1)=9 branch), and
// close with b4 = c4 - 2 - 2 b2 + 2 b3.
inline std::vector<BettiTriple> enumerate_betti() {
    std::vector<BettiTriple> out;
    struct Branch {
        long long c4;
        unsigned b2_max;
    };
    for (auto [c4, b2_max] : {Branch{324, 23}, Branch{108, 7}}) {
        if ((c4 - 48) % 3 != 0) continue;
        for (unsigned b2 = 3; b2 <= b2_max; ++b2) {
            long long b3 = 4ll * b2 - (c4 - 48) / 3;
            if (b3 < 0 || b3 % 4 != 0) continue;
            long long b4 = c4 - 2 - 2ll * b2 + 2 * b3;
            out.push_back({b2, static_cast<unsigned>(b3), b4});
        }
    }
    return out;
}

// Sign scan of the positivity conjecture: every Chern monomial of weight
// <= 2n must have positive constant, every Chern-character monomial
// ch_{2k_1}...ch_{2k_r} must have sign (-1)^{sum k_i}.  Returns violations.
struct SignViolation {
    std::string monomial;
    Rational value;
};

inline std::vector<SignViolation> conj_positivity_sc(const FujikiTable& table) {
    table.require_weight(2 * table.n, "conj_positivity_sc");
    std::vector<SignViolation> bad;
    for (const auto& [mono, value] : table.entries) {
        if (mono.is_unit()) continue;
        if (!(value > Rational(0))) bad.push_back({mono.to_string(), value});
    }
    // Partitions of total ch-weight up to n.
    std::vector<std::vector<unsigned>> parts;
    std::vector<unsigned> cur;
    std::function<void(unsigned, unsigned)> gen = [&](unsigned remaining, unsigned max_part) {
        for (unsigned p = std::min(remaining, max_part); p >= 1; --p) {
            cur.push_back(p);
            parts.push_back(cur);
            gen(remaining - p, p);
            cur.pop_back();
        }
    };
    gen(table.n, table.n);
    for (const auto& part : parts) {
        ChernPolynomial prod{Rational(1)};
        unsigned total = 0;
        std::string label;
        for (unsigned k : part) {
            prod = prod * chern_character(k);
            total += k;
            label += (label.empty() ? "" : ".") + std::string("ch") + std::to_string(2 * k);
        }
        Rational value = evaluate(prod, table);
        Rational signed_value = (total % 2 == 0) ? value : -value;
        if (!(signed_value > Rational(0))) bad.push_back({label, value});
    }
    return bad;
}

}  // namespace hkinv
