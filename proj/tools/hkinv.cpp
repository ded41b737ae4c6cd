// hkinv: exact invariants of hyperkähler manifolds and symplectic orbifolds.
//
// Subcommands: rr, bound, fujiki, orbifold, catalog, enumerate, genus,
// graphs, reproduce.  All values are exact rationals printed as "p/q"; add
// --approx for a display-only decimal column.
//
// Exit codes: 0 success / verified, 1 verification failure, 2 invalid input,
// 3 unsupported range.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hkinv/catalog.hpp"
#include "hkinv/graphs.hpp"
#include "hkinv/orbifold.hpp"
#include "hkinv/report.hpp"
#include "hkinv/reproduce.hpp"

namespace {

using namespace hkinv;

struct OutputOptions {
    std::string format = "tsv";
    bool approx = false;
};

void emit(const Report& rep, const OutputOptions& out) {
    if (out.format == "json")
        std::cout << rep.to_json(out.approx) << "\n";
    else
        std::cout << rep.to_tsv(out.approx);
}

std::vector<Rational> parse_rational_list(const std::string& csv) {
    std::vector<Rational> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
    return out;
}

OrbifoldProfile profile_from_json(const nlohmann::json& j) {
    OrbifoldProfile p;
    p.name = j.value("name", "profile");
    p.n = j.value("half_dim_n", 2u);
    p.b2 = j.at("b2").get<unsigned>();
    p.chi_top = Rational::parse(j.at("chi_top").is_string()
                                    ? j.at("chi_top").get<std::string>()
                                    : std::to_string(j.at("chi_top").get<long long>()));
    if (j.contains("fujiki_c1")) p.fujiki_c1 = Rational::parse(j.at("fujiki_c1").get<std::string>());
    if (j.contains("chi_structure"))
        p.chi_structure = Rational::parse(j.at("chi_structure").get<std::string>());
    for (const auto& s : j.at("singularities")) {
        CyclicStratum st;
        st.order = s.at("order").get<unsigned>();
        st.count = s.at("count").get<unsigned>();
        auto w = s.at("weights");
        if (w.size() != 4) throw InvalidInput("profile: weights must have 4 entries");
        for (int i = 0; i < 4; ++i) st.weights[i] = w[i].get<unsigned>();
        p.strata.push_back(st);
    }
    if (j.contains("salamon_contrib"))
        for (auto it = j.at("salamon_contrib").begin(); it != j.at("salamon_contrib").end(); ++it)
            p.salamon_contrib[static_cast<unsigned>(std::stoul(it.key()))] =
                Rational::parse(it.value().get<std::string>());
    return p;
}

OrbifoldProfile load_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open profile file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput("profile '" + path + "': " + e.what());
    }
    return profile_from_json(j);
}

RRPoly rr_of_type(const std::string& type, unsigned n) {
    if (type == "k3n") return rr_k3n(n);
    if (type == "kumn") return rr_kumn(n);
    throw InvalidInput("unknown family '" + type + "' (expected k3n or kumn)");
}

void report_bound(Report& rep, const BoundReport& b) {
    rep.put("condition_holds", b.condition_holds);
    if (b.bound) rep.put("bound", *b.bound);
    if (b.mu) rep.put("mu", *b.mu);
    rep.put("attained_iff", b.attained_iff);
}

void report_derived(Report& rep, const DerivedInvariants& inv) {
    rep.put("C_c4", inv.C_c4);
    rep.put("C_td4", inv.C_td4);
    rep.put("C_c2sq", inv.C_c2sq);
    if (inv.C_c2) rep.put("C_c2", *inv.C_c2);
    else rep.put("C_c2", inv.c2_radical.to_string());
    if (inv.C1) rep.put("C1", *inv.C1);
    if (inv.rr)
        for (unsigned i = 0; i <= inv.rr->n; ++i) rep.put("A" + std::to_string(i), inv.rr->A(i));
    report_bound(rep, inv.bound);
    // Internal consistency assertion (also enforced inside derive()).
    if (Rational(3) * inv.C_c2sq - inv.C_c4 != Rational(720) * inv.C_td4)
        throw VerificationFailure("orbifold: 720 C(td4) identity violated");
}

int run(int argc, char** argv) {
    CLI::App app{"exact hyperkähler / symplectic-orbifold invariants"};
    app.require_subcommand(1);
    OutputOptions out;
    app.add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"tsv", "json"}))
        ->capture_default_str();
    app.add_flag("--approx", out.approx, "add a display-only decimal column");

    auto* rr_cmd = app.add_subcommand("rr", "Riemann-Roch polynomials of the known families");
    std::string rr_type;
    unsigned rr_n = 2, rr_scale_m = 1;
    std::string rr_eval;
    rr_cmd->add_option("--type", rr_type, "family: k3n or kumn")->required();
    rr_cmd->add_option("--n", rr_n, "half-dimension n >= 2")->required();
    rr_cmd->add_option("--scale", rr_scale_m, "replace RR(q) by (1/m) RR(mq)");
    rr_cmd->add_option("--eval", rr_eval, "evaluate at a rational point");

    auto* bound_cmd = app.add_subcommand("bound", "second Betti number bounds");
    std::string bound_coeffs, bound_mu, bound_roots;
    unsigned bound_n = 2;
    bound_cmd->add_option("--coeffs", bound_coeffs, "A0,A1,A2 of the RR polynomial");
    bound_cmd->add_option("--mu", bound_mu, "mu = C(c2^2)/C(c4)");
    bound_cmd->add_option("--roots", bound_roots, "positive RR roots lambda_1,...,lambda_n");
    bound_cmd->add_option("--n", bound_n, "half-dimension n")->required();

    auto* fujiki_cmd = app.add_subcommand("fujiki", "generalized Fujiki constants from RR data");
    std::string fj_from_rr;
    int fj_b2 = -1;
    fujiki_cmd
        ->add_option("--from-rr", fj_from_rr, "family and half-dimension, e.g. k3n:2 or kumn:3")
        ->required();
    fujiki_cmd->add_option("--b2", fj_b2, "second Betti number (enables q-power data)");

    auto* orb_cmd = app.add_subcommand("orbifold", "orbifold corrections and derivations");
    auto* orb_derive = orb_cmd->add_subcommand("derive", "derive degree-4 invariants");
    std::string orb_profile, orb_builtin;
    orb_derive->add_option("--profile", orb_profile, "profile JSON file");
    orb_derive->add_option("--builtin", orb_builtin, "name of a shipped profile");
    auto* orb_k4 = orb_cmd->add_subcommand("k4-appendix", "order-4 Kummer quotient pipeline");
    auto* orb_list = orb_cmd->add_subcommand("list", "list shipped profiles");
    orb_cmd->require_subcommand(1);

    auto* cat_cmd = app.add_subcommand("catalog", "fixture tables of the known types");
    std::string cat_name;
    bool cat_verify = false, cat_solve = false, cat_conj = false;
    cat_cmd->add_option("--name", cat_name, "k3_2, kum_2, og6, og10, k3n_N, kumn_N")->required();
    cat_cmd->add_flag("--verify", cat_verify, "verify the q-power structure");
    cat_cmd->add_flag("--solve-og10", cat_solve, "run the sequential Verbitsky solve");
    cat_cmd->add_flag("--conjectures", cat_conj, "evaluate the conjecture reports");

    auto* enum_cmd = app.add_subcommand("enumerate", "finite enumerations in dimension 4");
    std::string enum_what;
    enum_cmd->add_option("--what", enum_what, "fourfolds or betti")
        ->required()
        ->check(CLI::IsMember({"fourfolds", "betti"}));

    auto* genus_cmd = app.add_subcommand("genus", "universal characteristic-class expansions");
    std::string genus_class;
    unsigned genus_k = 1;
    genus_cmd->add_option("--class", genus_class, "ch, td, or td-half")
        ->required()
        ->check(CLI::IsMember({"ch", "td", "td-half"}));
    genus_cmd->add_option("--k", genus_k, "component index (weight 2k)")->required();

    auto* graphs_cmd = app.add_subcommand("graphs", "Jacobi-diagram identities");
    std::string graphs_what;
    unsigned graphs_n = 0;
    graphs_cmd->add_option("--verify", graphs_what, "basic, wheeling, or sawon")
        ->required()
        ->check(CLI::IsMember({"basic", "wheeling", "sawon"}));
    graphs_cmd->add_option("--n", graphs_n, "wheeling expansion order (1..4, 0 = check all)");

    auto* rep_cmd = app.add_subcommand("reproduce", "run the full verification suite");
    std::string rep_only;
    rep_cmd->add_option("--only", rep_only, "run a single named check");

    // Let --format / --approx appear after any subcommand.
    std::function<void(CLI::App*)> allow_fallthrough = [&](CLI::App* cmd) {
        cmd->fallthrough();
        for (auto* sub : cmd->get_subcommands([](const CLI::App*) { return true; }))
            allow_fallthrough(sub);
    };
    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        allow_fallthrough(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints help or the parse error
        return code == 0 ? 0 : 2;
    }

    if (*rr_cmd) {
        RRPoly p = rr_of_type(rr_type, rr_n);
        if (rr_scale_m != 1) p = rr_scale(p, rr_scale_m);
        Report rep;
        rep.put("type", rr_type);
        rep.put("n", static_cast<long long>(rr_n));
        if (rr_scale_m != 1) rep.put("scale", static_cast<long long>(rr_scale_m));
        for (unsigned i = 0; i <= p.n; ++i) rep.put("A" + std::to_string(i), p.A(i));
        auto roots = even_integer_roots(p.as_poly());
        std::string root_list;
        for (const auto& r : roots) root_list += (root_list.empty() ? "" : ",") + r.to_string();
        rep.put("even_integer_roots", root_list.empty() ? std::string("none") : root_list);
        if (!rr_eval.empty()) rep.put("eval", p(Rational::parse(rr_eval)));
        emit(rep, out);
        return 0;
    }

    if (*bound_cmd) {
        Report rep;
        int provided = (!bound_coeffs.empty() ? 1 : 0) + (!bound_mu.empty() ? 1 : 0) +
                       (!bound_roots.empty() ? 1 : 0);
        if (provided != 1)
            throw InvalidInput("bound: provide exactly one of --coeffs, --mu, --roots");
        if (!bound_coeffs.empty()) {
            auto a = parse_rational_list(bound_coeffs);
            if (a.size() != 3) throw InvalidInput("bound: --coeffs wants A0,A1,A2");
            std::vector<Rational> coeffs(bound_n + 1);
            coeffs[0] = a[0];
            coeffs[1] = a[1];
            coeffs[2] = a[2];
            report_bound(rep, b2_bound_from_rr(RRPoly(bound_n, std::move(coeffs))));
        } else if (!bound_mu.empty()) {
            report_bound(rep, b2_bound_from_mu(bound_n, Rational::parse(bound_mu)));
        } else {
            Rational b = dispersion_bound(parse_rational_list(bound_roots), bound_n);
            rep.put("condition_holds", true);
            rep.put("bound", b);
        }
        emit(rep, out);
        return 0;
    }

    if (*fujiki_cmd) {
        auto colon = fj_from_rr.find(':');
        if (colon == std::string::npos)
            throw InvalidInput("fujiki: --from-rr wants family:n, e.g. k3n:2");
        std::string type = fj_from_rr.substr(0, colon);
        unsigned n = static_cast<unsigned>(std::stoul(fj_from_rr.substr(colon + 1)));
        FujikiTable t = degree4_from_rr(rr_of_type(type, n));
        Report rep;
        rep.put("C1", t.C1());
        rep.put("C_c2", t.at(ChernMonomial::c(2)));
        rep.put("C_c2sq", t.at(ChernMonomial::c(2, 2)));
        rep.put("C_c4", t.at(ChernMonomial::c(4)));
        rep.put("C_ch4", ch4_constant(t));
        rep.put("small_fujiki", small_fujiki(n, t.C1()));
        rep.put("r_half", rr_half_r(n, t.C1(), t.at(ChernMonomial::c(2))));
        rep.put("hitchin_sawon_residual", hitchin_sawon_check(t));
        for (unsigned k = 0; k <= n; ++k)
            rep.put("C_td_half_" + std::to_string(2 * k),
                    sqrt_todd_constant(n, k, t.C1(), t.at(ChernMonomial::c(2))));
        if (fj_b2 >= 0) {
            unsigned b2 = static_cast<unsigned>(fj_b2);
            auto v = c2_verbitsky_check(t, b2);
            rep.put("verbitsky_lhs", v.lhs);
            rep.put("verbitsky_rhs", v.rhs);
            rep.put("c2_in_verbitsky", v.is_in_verbitsky);
            rep.put("c4_positive_guaranteed", positivity_report(t, b2).c4_positive_guaranteed);
            for (unsigned k = 1; k <= n; ++k)
                rep.put("C_q^" + std::to_string(k), fujiki_q_power(k, n, b2, t.C1()));
        }
        emit(rep, out);
        return 0;
    }

    if (*orb_cmd) {
        if (*orb_list) {
            Report rep;
            for (const auto& p : profiles::all())
                rep.put(p.name, "b2=" + std::to_string(p.b2) + " chi_top=" +
                                    p.chi_top.to_string() +
                                    (p.fujiki_c1 ? " C1=" + p.fujiki_c1->to_string() : ""));
            emit(rep, out);
            return 0;
        }
        if (*orb_k4) {
            auto outcomes = run_reproduction("appendix-k4");
            Report rep = outcomes.front().report;
            rep.put("pass", outcomes.front().pass);
            emit(rep, out);
            return outcomes.front().pass ? 0 : 1;
        }
        if (orb_profile.empty() == orb_builtin.empty())
            throw InvalidInput("orbifold derive: provide exactly one of --profile, --builtin");
        OrbifoldProfile p =
            orb_profile.empty() ? profiles::by_name(orb_builtin) : load_profile(orb_profile);
        auto inv = derive(p);
        Report rep;
        rep.put("name", p.name);
        rep.put("b2", static_cast<long long>(p.b2));
        report_derived(rep, inv);
        emit(rep, out);
        return 0;
    }

    if (*cat_cmd) {
        ManifoldEntry e = load_entry(cat_name);
        Report rep;
        rep.put("name", e.name);
        rep.put("n", static_cast<long long>(e.n));
        rep.put("b2", static_cast<long long>(e.b2));
        rep.put("source", e.source);
        for (const auto& [mono, value] : e.table.entries)
            rep.put("C(" + mono.to_string() + ")", value);
        for (const auto& [k, mu] : e.chern_q_coeffs) rep.put("mu_" + std::to_string(k), mu);
        bool ok = true;
        if (cat_verify) {
            long long bad = 0;
            for (const auto& [mono, res] : verify_q_structure(e))
                if (!res.is_zero()) ++bad;
            rep.put("q_structure_violations", bad);
            ok = ok && bad == 0;
        }
        if (cat_solve) {
            if (e.name != "og10") throw InvalidInput("--solve-og10 applies to the og10 entry");
            for (const auto& [k, mu] : og10_sequential_solve(rr_k3n(5), e.b2))
                rep.put("solved_mu_" + std::to_string(k), mu);
        }
        if (cat_conj) {
            rep.put("ch4_ratio", ch4_constant(e.table) / e.table.C1());
            rep.put("ch4_conjectured", conj_ch4_value(e.n));
            if (e.n >= 4 && e.table.complete_to_weight(8)) {
                auto ch8 = conj_ch8_report(e);
                rep.put("ch8_ratio", ch8.ratio);
                rep.put("ch8_conjectured", ch8.conjectured);
                rep.put("ch8_match", ch8.match);
            }
            if (e.table.complete_to_weight(2 * e.n)) {
                auto violations = conj_positivity_sc(e.table);
                rep.put("positivity_violations", static_cast<long long>(violations.size()));
                ok = ok && violations.empty();
            }
        }
        emit(rep, out);
        return ok ? 0 : 1;
    }

    if (*enum_cmd) {
        Report rep;
        if (enum_what == "fourfolds") {
            auto tables = enumerate_fourfold_tables();
            long long row = 0;
            for (const auto& t : tables)
                rep.put("row" + std::to_string(row++),
                        t.C1().to_string() + "," + t.at(ChernMonomial::c(2)).to_string() + "," +
                            t.at(ChernMonomial::c(2, 2)).to_string() + "," +
                            t.at(ChernMonomial::c(4)).to_string());
            rep.put("count", static_cast<long long>(tables.size()));
        } else {
            auto triples = enumerate_betti();
            long long row = 0;
            for (const auto& t : triples)
                rep.put("row" + std::to_string(row++),
                        std::to_string(t.b2) + "," + std::to_string(t.b3) + "," +
                            std::to_string(t.b4));
            rep.put("count", static_cast<long long>(triples.size()));
        }
        emit(rep, out);
        return 0;
    }

    if (*genus_cmd) {
        ChernPolynomial cp;
        if (genus_class == "ch") cp = chern_character(genus_k);
        else if (genus_class == "td") cp = todd_component(genus_k);
        else cp = sqrt_todd_component(genus_k);
        std::cout << cp.to_string() << "\n";
        return 0;
    }

    if (*graphs_cmd) {
        if (graphs_what == "wheeling" && graphs_n >= 1) {
            Report rep;
            rep.put("wheeling_n" + std::to_string(graphs_n),
                    wheeling_expansion(graphs_n).to_string());
            emit(rep, out);
            return 0;
        }
        if (graphs_what == "sawon") {
            auto s = sawon_identities();
            Report rep;
            rep.put("w4w4", s.w4w4_lhs.to_string());
            rep.put("w8", s.w8_lhs.to_string());
            rep.put("residual_w4w4", s.residual_w4w4.to_string());
            rep.put("residual_w8", s.residual_w8.to_string());
            emit(rep, out);
            return (s.residual_w4w4.is_zero() && s.residual_w8.is_zero()) ? 0 : 1;
        }
        std::string tag = graphs_what == "basic" ? "graphs-basic" : "graphs-extended";
        auto outcomes = run_reproduction(tag);
        Report rep = outcomes.front().report;
        rep.put("check", outcomes.front().id);
        rep.put("pass", outcomes.front().pass);
        if (!outcomes.front().pass) rep.put("detail", outcomes.front().detail);
        emit(rep, out);
        return outcomes.front().pass ? 0 : 1;
    }

    if (*rep_cmd) {
        auto outcomes = run_reproduction(rep_only);
        bool all_pass = true;
        for (const auto& o : outcomes) {
            std::printf("%s\t%s\t%s\t(%.1f ms)\n", o.pass ? "PASS" : "FAIL", o.id.c_str(),
                        o.description.c_str(), o.millis);
            if (!o.pass) {
                std::printf("\t%s\n", o.detail.c_str());
                all_pass = false;
            }
            if (!rep_only.empty()) emit(o.report, out);
        }
        std::printf("%s\n", all_pass ? "reproduce: all checks passed" : "reproduce: FAILURES");
        return all_pass ? 0 : 1;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const hkinv::Unsupported& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 3;
    } catch (const hkinv::VerificationFailure& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const hkinv::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
