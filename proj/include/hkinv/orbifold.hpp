#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hkinv/cyclotomic.hpp"
#include "hkinv/fujiki.hpp"

namespace hkinv {

// C(c2) = sqrt(C(1) * S) came out irrational although C(1) was supplied.
struct IrrationalC2 : VerificationFailure {
    using VerificationFailure::VerificationFailure;
};
// The 3x3 fixed-point bookkeeping system is singular.
struct SingularSystem : InvalidInput {
    using InvalidInput::InvalidInput;
};

// An isolated cyclic quotient singularity stratum: `count` points of order
// `order`, local tangent action with the given four weights.  The symplectic
// form forces the weights to come in inverse pairs {w, order - w}.
struct CyclicStratum {
    unsigned order = 2;
    unsigned count = 1;
    std::array<unsigned, 4> weights{1, 1, 1, 1};

    void validate() const {
        if (order < 2) throw InvalidInput("CyclicStratum: order must be >= 2");
        if (count < 1) throw InvalidInput("CyclicStratum: count must be >= 1");
        for (unsigned w : weights)
            if (w == 0 || w >= order)
                throw InvalidInput("CyclicStratum: weights must lie in [1, order-1]");
        // Inverse-pair matching: every weight w must be balanced by order - w.
        std::vector<unsigned> ws(weights.begin(), weights.end());
        for (unsigned w : weights) {
            auto it = std::find(ws.begin(), ws.end(), w);
            if (it == ws.end()) continue;  // already consumed as someone's partner
            ws.erase(it);
            auto jt = std::find(ws.begin(), ws.end(), order - w);
            if (jt == ws.end())
                throw InvalidInput("CyclicStratum: weights must come in inverse pairs {w, m-w}");
            ws.erase(jt);
        }
    }
};

// Numerical profile of a 4-dimensional primitively symplectic orbifold.
struct OrbifoldProfile {
    std::string name;
    unsigned n = 2;  // half-dimension; derivations require n = 2
    unsigned b2 = 3;
    Rational chi_top;
    std::optional<Rational> fujiki_c1;
    Rational chi_structure = Rational(3);
    std::vector<CyclicStratum> strata;
    std::map<unsigned, Rational> salamon_contrib;  // per-point contribution by order

    void validate() const {
        Rational total(0);
        for (const auto& s : strata) {
            s.validate();
            total += Rational(s.count) * (Rational(1) - Rational(1, s.order));
        }
        if (chi_top < total)
            throw InvalidInput("OrbifoldProfile: chi_top below the total Euler correction");
    }
};

// Symbolic value r * sqrt(kernel * C(1)), used when C(1) is unknown.
struct RadicalExpr {
    Rational coeff;   // r
    Rational kernel;  // squarefree numerator and denominator

    std::string to_string() const {
        std::string inner =
            kernel == Rational(1) ? std::string("C1") : kernel.to_string() + "*C1";
        return coeff.to_string() + "*sqrt(" + inner + ")";
    }
};

// Per-point Riemann-Roch correction of one cyclic stratum:
//   (1/m) sum_{j=1..m-1} 1 / det(Id - g^j)   with   det = prod (1 - zeta^{j w_i}).
inline Rational rr_point_correction(const CyclicStratum& s) {
    s.validate();
    std::vector<unsigned> w(s.weights.begin(), s.weights.end());
    CycloElem acc = CycloElem::constant(s.order, Rational(0));
    for (unsigned j = 1; j < s.order; ++j) acc = acc + cyclo_det_factor(s.order, w, j).inverse();
    return rational_part(acc) / Rational(s.order);
}

// Per-point Gauss-Bonnet correction 1 - 1/m.
inline Rational euler_point_correction(unsigned m) {
    if (m < 2) throw InvalidInput("euler_point_correction: order must be >= 2");
    return Rational(1) - Rational(1, m);
}

// Everything derive() can say about a profile.
struct DerivedInvariants {
    Rational C_c4;
    Rational C_td4;
    Rational C_c2sq;
    std::optional<Rational> C_c2;        // present when C(1) was supplied
    RadicalExpr c2_radical;              // always filled: C(c2) = r sqrt(kernel C1)
    std::optional<RRPoly> rr;            // present when C(1) was supplied
    BoundReport bound;
    Rational chi_structure;
    std::optional<Rational> C1;
};

namespace detail {

// Splits S > 0 as r^2 * kernel with squarefree kernel numerator/denominator.
inline RadicalExpr radical_split(const Rational& S) {
    auto split = [](const BigInt& v) {
        BigInt square(1), kernel(1);
        BigInt rest = v;
        for (long long p = 2; p <= 1000000; p = (p == 2 ? 3 : p + 2)) {
            BigInt bp(p);
            if (bp * bp > rest) break;
            unsigned e = 0;
            for (;;) {
                auto dm = BigInt::divmod(rest, bp);
                if (!dm.rem.is_zero()) break;
                rest = dm.quot;
                ++e;
            }
            if (e / 2) square = square * bp.pow(e / 2);
            if (e % 2) kernel = kernel * bp;
        }
        if (rest > BigInt(1)) {
            if (rest.is_perfect_square()) square = square * rest.isqrt();
            else kernel = kernel * rest;
        }
        return std::pair{square, kernel};
    };
    auto [ns, nk] = split(S.num());
    auto [ds, dk] = split(S.den());
    // S = (ns/ds)^2 * (nk/dk)
    return RadicalExpr{Rational(ns, ds), Rational(nk, dk)};
}

}  // namespace detail

// Degree-4 invariants of a primitively symplectic fourfold profile via the
// orbifold Gauss-Bonnet and Riemann-Roch theorems:
//   C(c4)   = chi_top - sum a_m (1 - 1/m)
//   C(td4)  = chi(O) - sum a_m * rr_point_correction
//   C(c2^2) = (720 C(td4) + C(c4)) / 3
// and, through the Hitchin-Sawon relation, C(c2) = sqrt(C(1)(7C(c2^2)-4C(c4))/15).
inline DerivedInvariants derive(const OrbifoldProfile& p) {
    if (p.n != 2) throw InvalidInput("derive: only half-dimension n = 2 is supported");
    p.validate();

    DerivedInvariants out;
    out.chi_structure = p.chi_structure;
    out.C1 = p.fujiki_c1;

    Rational euler_corr(0), rr_corr(0);
    for (const auto& s : p.strata) {
        euler_corr += Rational(s.count) * euler_point_correction(s.order);
        rr_corr += Rational(s.count) * rr_point_correction(s);
    }
    out.C_c4 = p.chi_top - euler_corr;
    out.C_td4 = p.chi_structure - rr_corr;
    out.C_c2sq = (Rational(720) * out.C_td4 + out.C_c4) / Rational(3);
    if (Rational(3) * out.C_c2sq - out.C_c4 != Rational(720) * out.C_td4)
        throw VerificationFailure("derive: 3 C(c2^2) - C(c4) = 720 C(td4) violated");

    // Hitchin-Sawon: C(c2)^2 / C(1) = (7 C(c2^2) - 4 C(c4)) / 15.
    Rational S = (Rational(7) * out.C_c2sq - Rational(4) * out.C_c4) / Rational(15);
    if (!(S > Rational(0)))
        throw VerificationFailure("derive: Hitchin-Sawon square is not positive");
    out.c2_radical = detail::radical_split(S);

    if (p.fujiki_c1) {
        Rational square = *p.fujiki_c1 * S;
        auto root = square.sqrt_exact();
        if (!root)
            throw IrrationalC2("derive: C(c2) = sqrt(" + square.to_string() +
                               ") is irrational; the profile is inconsistent");
        out.C_c2 = *root;
        out.rr = RRPoly(2, {*p.fujiki_c1 / Rational(24), *root / Rational(24), out.C_td4});
        out.bound = b2_bound_from_rr(*out.rr);
    } else {
        out.bound = b2_bound_from_mu(2, out.C_c2sq / out.C_c4);
    }
    return out;
}

// chi(X, L) = RR(q(L)) + (chi(O) - C(td4)): the RR polynomial alone misses the
// singular-point contribution, which is constant in L.
inline Rational chi_line_bundle(const DerivedInvariants& inv, const Rational& q) {
    if (!inv.rr) throw InvalidInput("chi_line_bundle: profile was derived without C(1)");
    return (*inv.rr)(q) + inv.chi_structure - inv.C_td4;
}

// ---- Fixed-point enumeration for the order-4 Kummer quotient ---------------

struct K4FixedPoints {
    unsigned sigma2_fixed = 0;   // isolated fixed points of the induced involution
    unsigned a4 = 0;             // points of order 4 after the further quotient
    unsigned invariant_triples = 0;  // non-vertex triples preserved by the swap
};

// Brute-force count over the 2-torsion of T = E x E.  Points of T[2] are
// pairs (a, b) with a, b in E[2] = (Z/2)^2; the relevant automorphism acts by
// (a, b) -> (b, a) on 2-torsion.  The sigma^2-fixed isolated points of the
// Kummer fourfold correspond to unordered triples of distinct nonzero
// 2-torsion points summing to zero, plus the vertex.
inline K4FixedPoints k4_fixed_points() {
    K4FixedPoints out;
    auto swap_pt = [](unsigned p) {  // p encodes (a, b) in 4 bits: a = low 2, b = high 2
        return ((p & 3u) << 2) | (p >> 2);
    };
    std::vector<std::array<unsigned, 3>> triples;
    for (unsigned x = 1; x < 16; ++x)
        for (unsigned y = x + 1; y < 16; ++y) {
            unsigned z = x ^ y;  // third point closing the sum to zero
            if (z > y) triples.push_back({x, y, z});
        }
    out.sigma2_fixed = static_cast<unsigned>(triples.size()) + 1;  // + vertex
    for (const auto& t : triples) {
        std::array<unsigned, 3> image{swap_pt(t[0]), swap_pt(t[1]), swap_pt(t[2])};
        std::sort(image.begin(), image.end());
        if (image == t) ++out.invariant_triples;
    }
    out.a4 = out.invariant_triples + 1;  // the vertex is fixed as well
    return out;
}

struct K4Solution {
    Rational R, a2, chi;
};

// Exact solve of the three bookkeeping relations for the order-4 quotient:
//   2 chi - R = 108                  (double cover with ramification R)
//   a2 = (36 - a4)/2 + (R - a4)      (order-2 points surviving the quotient)
//   chi = 48 + 12 b2 + (a2 s2 + a4 s4)  with b2 = 6 (orbifold Salamon relation)
// Unknowns (chi, R, a2).
inline K4Solution k4_solve(unsigned a4, const Rational& s2 = Rational(-1),
                           const Rational& s4 = Rational(-3)) {
    // Rows: coefficients of (chi, R, a2) | rhs.
    std::array<std::array<Rational, 4>, 3> m{{
        {Rational(2), Rational(-1), Rational(0), Rational(108)},
        {Rational(0), Rational(1), Rational(-1), Rational(a4) - Rational(36 - a4) / Rational(2)},
        {Rational(1), Rational(0), -s2, Rational(48 + 12 * 6) + s4 * Rational(a4)},
    }};
    // Gaussian elimination with partial pivoting on 3x4.
    for (int col = 0; col < 3; ++col) {
        int pivot = -1;
        for (int row = col; row < 3; ++row)
            if (!m[row][col].is_zero()) {
                pivot = row;
                break;
            }
        if (pivot < 0) throw SingularSystem("k4_solve: singular bookkeeping system");
        std::swap(m[col], m[pivot]);
        for (int row = 0; row < 3; ++row) {
            if (row == col || m[row][col].is_zero()) continue;
            Rational f = m[row][col] / m[col][col];
            for (int k = col; k < 4; ++k) m[row][k] -= f * m[col][k];
        }
    }
    K4Solution s;
    s.chi = m[0][3] / m[0][0];
    s.R = m[1][3] / m[1][1];
    s.a2 = m[2][3] / m[2][2];
    return s;
}

// ---- Weight search and the shipped profiles ---------------------------------

// Exhaustive search over admissible inverse-pair weight tuples of the given
// order for one whose per-point RR correction equals `target`.  Used for the
// order-7 and order-11 strata, whose local actions are recorded here as the
// numerically consistent choice, not as geometric input.
inline std::optional<std::array<unsigned, 4>> find_order_weights(unsigned m,
                                                                 const Rational& target) {
    for (unsigned w = 1; w <= m / 2; ++w) {
        if (std::gcd(w, m) != 1) continue;
        for (unsigned w2 = w; w2 <= m / 2; ++w2) {
            if (std::gcd(w2, m) != 1) continue;
            CyclicStratum s{m, 1, {w, m - w, w2, m - w2}};
            if (rr_point_correction(s) == target) return s.weights;
        }
    }
    return std::nullopt;
}

namespace profiles {

inline CyclicStratum order2(unsigned count) { return CyclicStratum{2, count, {1, 1, 1, 1}}; }
inline CyclicStratum order3(unsigned count) { return CyclicStratum{3, count, {1, 2, 1, 2}}; }
inline CyclicStratum order4(unsigned count) { return CyclicStratum{4, count, {1, 3, 1, 3}}; }

// Nikulin orbifold M': 28 order-2 points, chi = 212, C(1) = 6, b2 = 16.
inline OrbifoldProfile nikulin_m_prime() {
    OrbifoldProfile p;
    p.name = "nikulin_m_prime";
    p.b2 = 16;
    p.chi_top = Rational(212);
    p.fujiki_c1 = Rational(6);
    p.strata = {order2(28)};
    return p;
}

// Kummer-type orbifold K': 36 order-2 points, chi = 108, C(1) = 8, b2 = 8.
inline OrbifoldProfile kummer_k_prime() {
    OrbifoldProfile p;
    p.name = "kummer_k_prime";
    p.b2 = 8;
    p.chi_top = Rational(108);
    p.fujiki_c1 = Rational(8);
    p.strata = {order2(36)};
    return p;
}

// Degree-m cyclic quotients of fourfolds of Hilbert-square type.  The order-7
// and order-11 local weights are the searched, numerically consistent tuples.
inline OrbifoldProfile hilbert_square_quotient(unsigned m) {
    OrbifoldProfile p;
    switch (m) {
        case 3:
            p.name = "m3";
            p.b2 = 11;
            p.chi_top = Rational(126);
            p.fujiki_c1 = Rational(9);
            p.strata = {order3(27)};
            return p;
        case 7: {
            p.name = "m7";
            p.b2 = 5;
            p.chi_top = Rational(54);
            p.fujiki_c1 = Rational(21);
            auto w = find_order_weights(7, Rational(2, 7));
            if (!w) throw VerificationFailure("m7: no admissible order-7 weights found");
            p.strata = {CyclicStratum{7, 9, *w}};
            return p;
        }
        case 11: {
            p.name = "m11";
            p.b2 = 3;
            p.chi_top = Rational(34);
            p.fujiki_c1 = Rational(33);
            auto w = find_order_weights(11, Rational(6, 11));
            if (!w) throw VerificationFailure("m11: no admissible order-11 weights found");
            p.strata = {CyclicStratum{11, 5, *w}};
            return p;
        }
        default:
            throw InvalidInput("hilbert_square_quotient: shipped for m in {3, 7, 11}");
    }
}

// Kim's dual Lagrangian fibration of a Kummer-type fourfold: 36 order-3
// points, chi = 36, C(1) = 1 (small Fujiki constant 1/3), b2 = 7.
inline OrbifoldProfile kim_dual_kum2() {
    OrbifoldProfile p;
    p.name = "kim_dual_kum2";
    p.b2 = 7;
    p.chi_top = Rational(36);
    p.fujiki_c1 = Rational(1);
    p.strata = {order3(36)};
    return p;
}

// Order-4 Kummer quotient K4': a2 = 30, a4 = 8, chi = 66, b2 = 6; C(1) unknown.
inline OrbifoldProfile k4_prime() {
    OrbifoldProfile p;
    p.name = "k4_prime";
    p.b2 = 6;
    p.chi_top = Rational(66);
    p.strata = {order2(30), order4(8)};
    return p;
}

// Order-3 Kummer quotient K3': a3 = 12, chi = 108, b2 = 7; C(1) unknown.
inline OrbifoldProfile k3_prime() {
    OrbifoldProfile p;
    p.name = "k3_prime";
    p.b2 = 7;
    p.chi_top = Rational(108);
    p.strata = {order3(12)};
    return p;
}

// Fujiki's Y_K3(Z/4): a2 = 10, a4 = 6, chi = 140, b2 = 10; C(1) unknown.
inline OrbifoldProfile y_k3_z4() {
    OrbifoldProfile p;
    p.name = "y_k3_z4";
    p.b2 = 10;
    p.chi_top = Rational(140);
    p.strata = {order2(10), order4(6)};
    return p;
}

// Fujiki's Y_K3((Z/2)^2): a2 = 36, chi = 180, b2 = 14; C(1) unknown.
inline OrbifoldProfile y_k3_z2z2() {
    OrbifoldProfile p;
    p.name = "y_k3_z2z2";
    p.b2 = 14;
    p.chi_top = Rational(180);
    p.strata = {order2(36)};
    return p;
}

inline std::vector<OrbifoldProfile> all() {
    return {nikulin_m_prime(),        kummer_k_prime(), hilbert_square_quotient(3),
            hilbert_square_quotient(7), hilbert_square_quotient(11),
            kim_dual_kum2(),          k4_prime(),       k3_prime(),
            y_k3_z4(),                y_k3_z2z2()};
}

inline OrbifoldProfile by_name(const std::string& name) {
    for (auto& p : all())
        if (p.name == name) return p;
    throw InvalidInput("unknown built-in profile '" + name + "'");
}

}  // namespace profiles

}  // namespace hkinv
