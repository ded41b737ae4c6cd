#pragma once

#include <array>
#include <chrono>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "hkinv/catalog.hpp"
#include "hkinv/graphs.hpp"
#include "hkinv/orbifold.hpp"
#include "hkinv/report.hpp"

namespace hkinv {

// One verification check of the built-in reproduction suite.  A check either
// returns (pass) or throws (fail); values it records land in the report.
struct AcceptanceCheck {
    std::string id;
    std::string description;
    std::function<void(Report&)> run;
};

namespace reproduce_detail {

inline void expect(bool cond, const std::string& what) {
    if (!cond) throw VerificationFailure(what);
}

inline void expect_eq(const Rational& got, const Rational& want, const std::string& what) {
    if (!(got == want))
        throw VerificationFailure(what + ": got " + got.to_string() + ", expected " +
                                  want.to_string());
}

inline void check_deg4_tables(Report& rep) {
    FujikiTable k3 = degree4_from_rr(rr_k3n(2));
    expect_eq(k3.C1(), Rational(3), "K3-type fourfold C(1)");
    expect_eq(k3.at(ChernMonomial::c(2)), Rational(30), "K3-type fourfold C(c2)");
    expect_eq(k3.at(ChernMonomial::c(2, 2)), Rational(828), "K3-type fourfold C(c2^2)");
    expect_eq(k3.at(ChernMonomial::c(4)), Rational(324), "K3-type fourfold C(c4)");
    FujikiTable kum = degree4_from_rr(rr_kumn(2));
    expect_eq(kum.C1(), Rational(9), "Kummer fourfold C(1)");
    expect_eq(kum.at(ChernMonomial::c(2)), Rational(54), "Kummer fourfold C(c2)");
    expect_eq(kum.at(ChernMonomial::c(2, 2)), Rational(756), "Kummer fourfold C(c2^2)");
    expect_eq(kum.at(ChernMonomial::c(4)), Rational(108), "Kummer fourfold C(c4)");
    rep.put("k3_2", std::string("3,30,828,324"));
    rep.put("kum_2", std::string("9,54,756,108"));
}

inline void check_bounds(Report& rep) {
    for (unsigned n = 2; n <= 8; ++n) {
        auto k3 = b2_bound_from_rr(rr_k3n(n));
        expect(k3.condition_holds, "K3-type bound condition");
        expect_eq(*k3.bound, Rational(n) + Rational(17) + Rational(12) / Rational(n + 1),
                  "K3-type bound at n=" + std::to_string(n));
        auto kum = b2_bound_from_rr(rr_kumn(n));
        expect(kum.condition_holds, "Kummer-type bound condition");
        expect_eq(*kum.bound, Rational(n + 5), "Kummer-type bound at n=" + std::to_string(n));
    }
    auto nik = b2_bound_from_rr(RRPoly(2, {Rational(1, 4), Rational(3, 2), Rational(17, 8)}));
    expect(nik.condition_holds, "Nikulin bound condition");
    expect_eq(*nik.bound, Rational(16), "Nikulin bound");
    rep.put("bound_k3n_2", Rational(23));
    rep.put("bound_k3n_5", Rational(24));
    rep.put("bound_kumn", std::string("n+5"));
    rep.put("bound_nikulin", Rational(16));
}

inline void check_hitchin_sawon(Report& rep) {
    for (unsigned n = 2; n <= 8; ++n) {
        expect(hitchin_sawon_check(degree4_from_rr(rr_k3n(n))).is_zero(),
               "Hitchin-Sawon residual, K3-type n=" + std::to_string(n));
        expect(hitchin_sawon_check(degree4_from_rr(rr_kumn(n))).is_zero(),
               "Hitchin-Sawon residual, Kummer-type n=" + std::to_string(n));
    }
    expect(hitchin_sawon_check(load_entry("og6").table).is_zero(), "Hitchin-Sawon residual, og6");
    expect(hitchin_sawon_check(load_entry("og10").table).is_zero(),
           "Hitchin-Sawon residual, og10");
    rep.put("residuals", std::string("0"));
}

inline void check_rr_half(Report& rep) {
    // Two independent routes to C(td^{1/2}_{2k}): the binomial factorization
    // and the genus expansion evaluated on the table.
    expect_eq(sqrt_todd_constant(2, 2, Rational(3), Rational(30)), Rational(25, 32),
              "half-Todd constant of the K3-type fourfold (factorization)");
    expect_eq(evaluate(sqrt_todd_component(2), load_entry("k3_2").table), Rational(25, 32),
              "half-Todd constant of the K3-type fourfold (genus route)");
    for (const char* name : {"og6", "og10"}) {
        auto e = load_entry(name);
        Rational c1 = e.table.C1();
        Rational c_c2 = e.table.at(ChernMonomial::c(2));
        for (unsigned k = 0; k <= e.n; ++k)
            expect_eq(evaluate(sqrt_todd_component(k), e.table),
                      sqrt_todd_constant(e.n, k, c1, c_c2),
                      std::string(name) + " half-Todd constant k=" + std::to_string(k));
    }
    rep.put("k3_2_td_half_4", Rational(25, 32));
}

inline void check_orbifolds(Report& rep) {
    auto m_prime = derive(profiles::nikulin_m_prime());
    expect_eq(m_prime.C_c4, Rational(198), "M' C(c4)");
    expect_eq(m_prime.C_td4, Rational(17, 8), "M' C(td4)");
    expect_eq(m_prime.C_c2sq, Rational(576), "M' C(c2^2)");
    expect_eq(*m_prime.C_c2, Rational(36), "M' C(c2)");
    expect_eq(*m_prime.bound.bound, Rational(16), "M' bound");

    auto k_prime = derive(profiles::kummer_k_prime());
    expect_eq(k_prime.C_c4, Rational(90), "K' C(c4)");
    expect_eq(k_prime.C_td4, Rational(15, 8), "K' C(td4)");
    expect_eq(k_prime.C_c2sq, Rational(480), "K' C(c2^2)");
    expect_eq(*k_prime.C_c2, Rational(40), "K' C(c2)");
    expect_eq(*k_prime.bound.bound, Rational(8), "K' bound");

    auto kim = derive(profiles::kim_dual_kum2());
    expect_eq(kim.C_c4, Rational(12), "dual Kummer C(c4)");
    expect_eq(kim.C_td4, Rational(1, 3), "dual Kummer C(td4)");
    expect_eq(kim.C_c2sq, Rational(84), "dual Kummer C(c2^2)");
    expect_eq(*kim.C_c2, Rational(6), "dual Kummer C(c2)");
    expect_eq(*kim.bound.bound, Rational(7), "dual Kummer bound");
    expect_eq(chi_line_bundle(kim, Rational(6)), Rational(6), "dual Kummer chi(H) at q=6");

    for (unsigned m : {3u, 7u, 11u}) {
        auto inv = derive(profiles::hilbert_square_quotient(m));
        expect(inv.rr->coeffs == rr_scale(rr_k3n(2), m).coeffs,
               "quotient m=" + std::to_string(m) + " RR = (1/m) RR(mq)");
    }

    auto k4 = derive(profiles::k4_prime());
    expect_eq(k4.C_c4, Rational(45), "K4' C(c4)");
    expect_eq(k4.C_td4, Rational(15, 16), "K4' C(td4)");
    expect_eq(k4.C_c2sq, Rational(240), "K4' C(c2^2)");
    expect_eq(*k4.bound.bound, Rational(8), "K4' bound");

    auto k3p = derive(profiles::k3_prime());
    expect_eq(*k3p.bound.bound, Rational(135, 17), "K3' bound");

    auto y4 = derive(profiles::y_k3_z4());
    expect_eq(y4.C_c4, Rational(261, 2), "Y(Z/4) C(c4)");
    expect_eq(y4.C_c2sq, Rational(486), "Y(Z/4) C(c2^2)");
    expect_eq(*y4.bound.bound, Rational(54, 5), "Y(Z/4) bound");

    auto y22 = derive(profiles::y_k3_z2z2());
    expect_eq(y22.C_c4, Rational(162), "Y((Z/2)^2) C(c4)");
    expect_eq(y22.C_c2sq, Rational(504), "Y((Z/2)^2) C(c2^2)");
    expect_eq(*y22.bound.bound, Rational(14), "Y((Z/2)^2) bound");

    rep.put("profiles_checked", static_cast<long long>(profiles::all().size()));
}

inline void check_appendix_k4(Report& rep) {
    auto fp = k4_fixed_points();
    expect(fp.sigma2_fixed == 36, "sigma^2 fixed points");
    expect(fp.a4 == 8, "a4 count");
    auto sol = k4_solve(fp.a4);
    expect_eq(sol.R, Rational(24), "ramification count R");
    expect_eq(sol.a2, Rational(30), "a2 count");
    expect_eq(sol.chi, Rational(66), "chi(K4')");
    auto inv = derive(profiles::k4_prime());
    expect_eq(inv.C_c4, Rational(45), "downstream C(c4)");
    expect_eq(inv.C_td4, Rational(15, 16), "downstream C(td4)");
    expect_eq(inv.C_c2sq, Rational(240), "downstream C(c2^2)");
    expect(inv.c2_radical.coeff == Rational(10) && inv.c2_radical.kernel == Rational(1),
           "downstream C(c2) = 10 sqrt(C1)");
    rep.put("sigma2_fixed", static_cast<long long>(fp.sigma2_fixed));
    rep.put("a4", static_cast<long long>(fp.a4));
    rep.put("R", sol.R);
    rep.put("a2", sol.a2);
    rep.put("chi", sol.chi);
    rep.put("C_c4", inv.C_c4);
    rep.put("C_td4", inv.C_td4);
    rep.put("C_c2sq", inv.C_c2sq);
    rep.put("C_c2", inv.c2_radical.to_string());
}

inline void check_og_tables(Report& rep) {
    long long checks = 0;
    for (const char* name : {"og6", "og10"}) {
        auto e = load_entry(name);
        for (const auto& [mono, res] : verify_q_structure(e)) {
            expect(res.is_zero(),
                   std::string(name) + " q-power structure at " + mono.to_string());
            ++checks;
        }
        expect_eq(evaluate(todd_component(e.n), e.table), Rational(e.n + 1),
                  std::string(name) + " top Todd evaluation");
    }
    rep.put("q_structure_checks", checks);
}

inline void check_og10_solve(Report& rep) {
    auto mu = og10_sequential_solve(rr_k3n(5), 24);
    expect_eq(mu.at(3), Rational(21, 64), "og10 mu_3");
    expect_eq(mu.at(4), Rational(237, 3328), "og10 mu_4");
    expect_eq(mu.at(5), Rational(27, 2560), "og10 mu_5");
    rep.put("mu_3", mu.at(3));
    rep.put("mu_4", mu.at(4));
    rep.put("mu_5", mu.at(5));
}

inline void check_conjectures(Report& rep) {
    for (const char* name : {"k3_2", "kum_2", "og6", "og10"}) {
        auto e = load_entry(name);
        expect_eq(ch4_constant(e.table) / e.table.C1(), conj_ch4_value(e.n),
                  std::string(name) + " C(ch4)/C(1)");
    }
    for (unsigned n = 3; n <= 8; ++n)
        for (Rational a : {Rational(1), Rational(2), Rational(3), Rational(7, 2), Rational(5)})
            expect_eq(ch4_constant(degree4_from_rr(rr_arith(n, a, Rational(13)))) / Rational(13),
                      conj_ch4_value(n), "offset independence at n=" + std::to_string(n));
    auto tables = enumerate_fourfold_tables();
    expect(tables.size() == 2, "fourfold table enumeration size");
    expect_eq(tables[0].C1(), Rational(3), "first enumerated C(1)");
    expect_eq(tables[1].C1(), Rational(9), "second enumerated C(1)");
    auto betti = enumerate_betti();
    std::vector<BettiTriple> want = {{23, 0, 276}, {5, 0, 96}, {6, 4, 102}, {7, 8, 108}};
    expect(betti == want, "Betti triple enumeration");
    rep.put("fourfold_tables", static_cast<long long>(tables.size()));
    rep.put("betti_triples", static_cast<long long>(betti.size()));
}

inline void check_graphs_basic(Report& rep) {
    auto theta = GraphVector::generator(gen::Theta);
    auto theta2 = GraphVector::generator(gen::Theta2);
    expect(glue(wheel(2), strut()) == Rational(2) * theta, "<w2, l> = 2 Theta");
    expect(glue(wheel(2), wheel(2)) == Rational(2) * theta2, "<w2, w2> = 2 Theta2");
    expect(glue(wheel(4), strut_power(2)) == Rational(20) * theta2, "<w4, l^2> = 20 Theta2");
    expect(glue(wheel_product({2, 2}), strut_power(2)) ==
               Rational(8) * theta.pow(2) + Rational(16) * theta2,
           "<w2^2, l^2> = 8 Theta^2 + 16 Theta2");
    GraphVector w1 = GraphVector{Rational(1)} + Rational(1, 12) * theta;
    expect(wheeling_expansion(1) == w1, "wheeling n=1");
    GraphVector w2 = GraphVector{Rational(1)} + Rational(1, 6) * theta +
                     Rational(1, 144) * (theta * theta + theta2);
    expect(wheeling_expansion(2) == w2, "wheeling n=2");
    rep.put("identities", std::string("6 exact"));
}

inline void check_graphs_extended(Report& rep) {
    auto theta = GraphVector::generator(gen::Theta);
    auto theta2 = GraphVector::generator(gen::Theta2);
    auto theta4 = GraphVector::generator(gen::Theta4);
    auto xi = GraphVector::generator(gen::Xi);
    GraphVector w3 = GraphVector{Rational(1)} + Rational(1, 4) * theta +
                     Rational(1, 48) * (theta * theta + theta2) +
                     Rational(1, 1728) * (theta.pow(3) + Rational(3) * theta * theta2);
    expect(wheeling_expansion(3) == w3, "wheeling n=3");
    GraphVector w4 = GraphVector{Rational(1)} + Rational(1, 3) * theta +
                     Rational(1, 24) * (theta * theta + theta2) +
                     Rational(1, 432) * (theta.pow(3) + Rational(3) * theta * theta2) +
                     Rational(1, 20736) *
                         (theta.pow(4) + Rational(6) * theta.pow(2) * theta2 +
                          Rational(3) * theta2.pow(2) + Rational(144, 25) * xi -
                          Rational(162, 25) * theta4);
    expect(wheeling_expansion(4) == w4, "wheeling n=4");
    auto s = sawon_identities();
    expect(s.residual_w4w4.is_zero(), "<w4^2, l^4> identity");
    expect(s.residual_w8.is_zero(), "<w8, l^4> identity");
    rep.put("wheeling_n4_xi_coeff", Rational(1, 3600));
}

inline void check_properties(Report& rep) {
    // Round trip degree-4 constants <-> RR prefix.
    for (unsigned n = 2; n <= 8; ++n)
        for (const RRPoly& p : {rr_k3n(n), rr_kumn(n)}) {
            auto pre = rr_prefix_from_degree4(degree4_from_rr(p));
            expect(pre[0] == p.A(0) && pre[1] == p.A(1) && pre[2] == p.A(2),
                   "degree-4 round trip");
        }
    // Bound invariance under scaling.
    for (unsigned m : {2u, 3u, 5u, 7u, 11u})
        expect(*b2_bound_from_rr(rr_scale(rr_k3n(3), m)).bound ==
                   *b2_bound_from_rr(rr_k3n(3)).bound,
               "bound invariance under rr_scale");
    // Dispersion homogeneity.
    for (long long t = 1; t <= 5; ++t)
        expect(dispersion_bound({Rational(4 * t), Rational(6 * t)}, 2) == Rational(23),
               "dispersion homogeneity");
    // td = (td^{1/2})^2 through weight 10.
    for (unsigned k = 0; k <= kMaxGenusK; ++k) {
        ChernPolynomial acc;
        for (unsigned i = 0; i <= k; ++i)
            acc = acc + sqrt_todd_component(i) * sqrt_todd_component(k - i);
        expect(acc == todd_component(k), "half-Todd square identity");
    }
    // Cyclotomic Galois-sum rationality over unit orbits, m <= 20.
    long long sums = 0;
    for (unsigned m = 2; m <= 20; ++m) {
        std::vector<CycloElem> inv;
        inv.emplace_back(m);
        CycloElem one = CycloElem::constant(m, Rational(1));
        for (unsigned k = 1; k < m; ++k)
            inv.push_back((one - CycloElem::zeta_power(m, k)).inverse());
        std::set<std::array<unsigned, 4>> seen;
        for (unsigned w = 1; w < m; ++w) {
            if (std::gcd(w, m) != 1) continue;
            for (unsigned w2 = w; w2 < m; ++w2) {
                if (std::gcd(w2, m) != 1) continue;
                std::array<unsigned, 4> ws{w, m - w, w2, m - w2};
                std::array<unsigned, 4> best{};
                bool first = true;
                for (unsigned u = 1; u < m; ++u) {
                    if (std::gcd(u, m) != 1) continue;
                    std::array<unsigned, 4> scaled;
                    for (int i = 0; i < 4; ++i) scaled[i] = (ws[i] * u) % m;
                    std::sort(scaled.begin(), scaled.end());
                    if (first || scaled < best) best = scaled;
                    first = false;
                }
                if (!seen.insert(best).second) continue;
                CycloElem acc = CycloElem::constant(m, Rational(0));
                for (unsigned j = 1; j < m; ++j) {
                    CycloElem term = one;
                    for (unsigned x : ws) term = term * inv[(j * x) % m];
                    acc = acc + term;
                }
                expect(rational_part(acc) > Rational(0), "Galois sum rationality/positivity");
                ++sums;
            }
        }
    }
    // Glue symmetry.
    expect(glue(wheel(2), strut()) == glue(strut(), wheel(2)), "glue symmetry (w2, l)");
    expect(glue(wheel(4), strut_power(2)) == glue(strut_power(2), wheel(4)),
           "glue symmetry (w4, l^2)");
    rep.put("galois_sum_orbits", sums);
}

}  // namespace reproduce_detail

inline const std::vector<AcceptanceCheck>& acceptance_checks() {
    using namespace reproduce_detail;
    static const std::vector<AcceptanceCheck> checks = {
        {"deg4-tables", "degree-4 constant tables from the two fourfold RR polynomials",
         check_deg4_tables},
        {"bounds", "b2 bounds for both families and the Nikulin orbifold", check_bounds},
        {"hitchin-sawon", "Hitchin-Sawon residual vanishes on families and fixtures",
         check_hitchin_sawon},
        {"rr-half", "half-Todd constants agree between factorization and genus expansion",
         check_rr_half},
        {"orbifolds", "orbifold pipeline reproduces all shipped profiles", check_orbifolds},
        {"appendix-k4", "order-4 Kummer quotient: enumeration, solve, downstream invariants",
         check_appendix_k4},
        {"og-tables", "OG6/OG10 tables verified through the q-power structure", check_og_tables},
        {"og10-solve", "sequential solve of the OG10 Verbitsky coefficients", check_og10_solve},
        {"conjectures", "conjecture evaluators and the two enumerations", check_conjectures},
        {"graphs-basic", "mandatory-tier gluing identities and low wheeling expansions",
         check_graphs_basic},
        {"graphs-extended", "extended wheeling expansions and the quartic gluing identities",
         check_graphs_extended},
        {"properties", "property suites: round trips, invariances, Galois sums, symmetry",
         check_properties},
    };
    return checks;
}

struct CheckOutcome {
    std::string id;
    std::string description;
    bool pass = false;
    std::string detail;  // failure message, if any
    double millis = 0;
    Report report;
};

// Runs the acceptance checks (all, or the one named by `only`).
inline std::vector<CheckOutcome> run_reproduction(const std::string& only = "") {
    std::vector<CheckOutcome> out;
    bool matched = false;
    for (const auto& check : acceptance_checks()) {
        if (!only.empty() && check.id != only) continue;
        matched = true;
        CheckOutcome o;
        o.id = check.id;
        o.description = check.description;
        auto t0 = std::chrono::steady_clock::now();
        try {
            check.run(o.report);
            o.pass = true;
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = e.what();
        }
        o.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                       .count();
        out.push_back(std::move(o));
    }
    if (!only.empty() && !matched)
        throw InvalidInput("reproduce: unknown check id '" + only + "'");
    return out;
}

}  // namespace hkinv
