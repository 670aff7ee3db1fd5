#include <chrono>
#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tfc/acceptance.hpp"
#include "tfc/arith.hpp"
#include "tfc/cache.hpp"
#include "tfc/characters.hpp"
#include "tfc/coeff.hpp"
#include "tfc/descent.hpp"
#include "tfc/errors.hpp"
#include "tfc/lfun.hpp"
#include "tfc/quadforms.hpp"
#include "tfc/shintani.hpp"
#include "tfc/weights.hpp"

using json = nlohmann::ordered_json;
using namespace tfc;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInstability = 3;
constexpr int kExitNotImplemented = 4;

std::string rat_str(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(const std::string& text) {
    try {
        const auto slash = text.find('/');
        if (slash == std::string::npos) return Rational(Integer(text));
        const Integer den(text.substr(slash + 1));
        if (den == 0) throw DomainError("zero denominator");
        return Rational(Integer(text.substr(0, slash)), den);
    } catch (const DomainError&) {
        throw;
    } catch (const std::exception&) {
        throw DomainError("cannot parse rational '" + text + "'");
    }
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw DomainError("cannot parse number '" + item + "'");
        }
    }
    return out;
}

struct Options {
    std::string S;
    int digits = 30;
    std::int64_t X = 100000;
    std::string eps;
    std::string L1_method = "cnf";
    double vol_m0 = 1, vol_m1 = 1, vol_m2 = 1, vol_mprime = 1, vol_g = 1;
    std::string cache;
    bool json_out = false;

    // subcommand arguments
    std::string group, orbit, alpha = "1", x, centralizer, u = "u", sigma, sigma_params;
    std::int64_t d = 0;
    bool endoscopic = false;
    std::int64_t D = 1;
    double s = 1.0;
    std::string levi = "m0", nu, uvalue;
    double T1 = 0, T2 = 0;
};

std::shared_ptr<L1Cache> open_cache(const Options& o) {
    const std::string path = o.cache.empty() ? default_cache_path() : o.cache;
    if (path.empty()) return nullptr;
    return std::make_shared<L1Cache>(path);
}

L1Method parse_l1_method(const std::string& m) {
    if (m == "cnf") return L1Method::ClassNumberFormula;
    if (m == "smoothed") return L1Method::SmoothedSum;
    throw DomainError("unknown L1 method '" + m + "' (expected cnf or smoothed)");
}

ShintaniConfig shintani_config(const Options& o) {
    ShintaniConfig c;
    c.X = o.X;
    if (!o.eps.empty()) c.eps_grid = parse_double_list(o.eps);
    c.L1_method = parse_l1_method(o.L1_method);
    c.digits = o.digits;
    if (auto cache = open_cache(o)) c.L1_lookup = caching_L1_provider(cache, c.L1_method);
    c.validate();
    return c;
}

CoeffConfig coeff_config(const Options& o) {
    CoeffConfig c;
    c.vol = {o.vol_m0, o.vol_m1, o.vol_m2, o.vol_mprime, o.vol_g};
    c.digits = o.digits;
    c.shintani = shintani_config(o);
    c.validate();
    return c;
}

json to_json(const CoeffResult& r) {
    json terms = json::array();
    for (const auto& t : r.terms) {
        json factors = json::array();
        for (const auto& f : t.factors) factors.push_back({{"name", f.name}, {"value", f.value}});
        terms.push_back({{"prefactor", rat_str(t.prefactor)},
                         {"volume", t.volume_symbol},
                         {"volume_value", t.volume},
                         {"factors", factors},
                         {"value", t.value},
                         {"error", t.error}});
    }
    return {{"provenance", r.provenance}, {"terms", terms}, {"value", r.value}, {"error", r.error}};
}

json common_input(const Options& o, const PlaceSet& S) { return {{"S", S.name()}, {"digits", o.digits}}; }

SymForm2 parse_form(const std::string& text) {
    const auto v = parse_rational_list(text);
    if (v.size() == 2) return SymForm2::diag(v[0], v[1]);
    if (v.size() == 3) return SymForm2(v[0], v[1], v[2]);
    throw DomainError("--x expects 'a,c' (diagonal) or 'a,b,c' for [[a,b],[b,c]]");
}

json cmd_coeff(const Options& o) {
    const PlaceSet S = PlaceSet::parse(o.S);
    const CoeffConfig cfg = coeff_config(o);
    json in = common_input(o, S);
    json out;
    if (!o.centralizer.empty()) {
        ExampleParams p;
        p.u = parse_example_unipotent(o.u);
        p.alpha = parse_rational(o.alpha);
        p.d = o.d;
        in["centralizer"] = o.centralizer;
        in["u"] = o.u;
        in["alpha"] = rat_str(p.alpha);
        if (o.d != 0) in["d"] = o.d;
        out = to_json(centralizer_example_coeff(parse_example_family(o.centralizer), p, S, cfg));
    } else if (!o.sigma.empty()) {
        SigmaDescriptor sd;
        sd.kind = parse_sigma_kind(o.sigma);
        if (!o.sigma_params.empty()) {
            // z,x,y,alpha
            const auto v = parse_rational_list(o.sigma_params);
            if (v.size() != 4) throw DomainError("--sigma-params expects z,x,y,alpha");
            sd.z = v[0];
            sd.x = v[1];
            sd.y = v[2];
            sd.alpha = v[3];
        }
        const CentralizerClass cc = centralizer_classify(sd);
        CentralizerUnipotent cu;
        if (sd.kind == SigmaKind::Z) {
            OrbitClass oc;
            oc.group = GroupTag::GSp2;
            oc.type = parse_orbit_type(o.orbit.empty() ? "min" : o.orbit);
            if (oc.type == OrbitType::Sub) oc.x = parse_form(o.x);
            else oc.alpha = parse_rational(o.alpha);
            cu.orbit = oc;
        }
        cu.example.u = parse_example_unipotent(o.u);
        cu.example.alpha = parse_rational(o.alpha);
        in["sigma"] = o.sigma;
        in["sigma_params"] = o.sigma_params;
        in["u"] = o.u;
        out = to_json(descent_coeff(cc, cu, S, cfg));
        out["centralizer"] = {{"tag", cc.centralizer_tag},
                              {"eps", cc.eps_flag},
                              {"iota_order", cc.iota_order},
                              {"split_center_rank", cc.split_center_rank},
                              {"eps_ambiguous", cc.eps_ambiguous}};
    } else {
        if (o.orbit.empty()) throw DomainError("coeff needs --orbit");
        if (o.group.empty() && !o.endoscopic) throw DomainError("coeff needs --group (or --endoscopic)");
        OrbitClass oc;
        oc.group = o.group.empty() ? GroupTag::Sp2 : parse_group(o.group);
        if (o.endoscopic && oc.group != GroupTag::Sp2 && oc.group != GroupTag::GSp2)
            throw DomainError("--endoscopic compares Sp(2) with GSp(2)");
        oc.type = parse_orbit_type(o.orbit);
        in["group"] = to_string(oc.group);
        in["orbit"] = to_string(oc.type);
        std::optional<SymForm2> x;
        if (oc.type == OrbitType::Sub) {
            if (o.x.empty()) throw DomainError("the subregular orbit needs --x");
            x = parse_form(o.x);
            oc.x = x;
            in["x"] = x->str();
        } else {
            oc.alpha = parse_rational(o.alpha);
            in["alpha"] = rat_str(*oc.alpha);
        }
        if (oc.type == OrbitType::Sub) in["X"] = o.X;
        if (o.endoscopic) {
            const auto e = endoscopic_diff(S, oc.type, oc.alpha.value_or(Rational(1)), x, cfg);
            in["endoscopic"] = true;
            out = {{"sp2", to_json(e.sp2)},
                   {"gsp2", to_json(e.gsp2)},
                   {"direct", e.direct},
                   {"direct_error", e.direct_error},
                   {"predicted", to_json(e.predicted)},
                   {"agreement", std::abs(e.direct - e.predicted.value)}};
        } else {
            out = to_json(coeff_orbit(S, oc, cfg));
        }
    }
    return {{"command", "coeff"}, {"input", in}, {"result", out}};
}

json cmd_shintani(const Options& o) {
    const PlaceSet S = PlaceSet::parse(o.S);
    const ShintaniConfig cfg = shintani_config(o);
    const Rational alpha = parse_rational(o.alpha);
    const ShintaniResult r = shintani_analyze(alpha, S, cfg);
    json in = common_input(o, S);
    in["alpha"] = rat_str(alpha);
    in["X"] = cfg.X;
    in["eps"] = cfg.eps_grid;
    in["L1_method"] = to_string(cfg.L1_method);
    json grid = json::array();
    for (std::size_t i = 0; i < r.grid_values.size(); ++i)
        grid.push_back({{"eps", r.grid_values[i].first},
                        {"xi_truncated", r.grid_values[i].second},
                        {"xi_model", r.model_values[i].second}});
    const auto& d = r.diagnostics;
    return {{"command", "shintani"},
            {"input", in},
            {"result",
             {{"grid", grid},
              {"residue_exact", r.residue_exact},
              {"residue_estimate", r.residue_estimate},
              {"residue_error", r.residue_error},
              {"constant", r.constant_CF},
              {"constant_error", r.constant_error},
              {"diagnostics",
               {{"n_terms", d.n_terms},
                {"S_part", d.S_part},
                {"Y", d.Y},
                {"kappa0", d.kappa0},
                {"kappa_half_Y", d.kappa_half_Y},
                {"tail_check_ratio", d.tail_check_ratio}}}}}};
}

json cmd_lfun(const Options& o) {
    const PlaceSet S = PlaceSet::parse(o.S);
    const QuadChar chi(o.D);
    PrecisionScope scope(o.digits);
    json in = common_input(o, S);
    in["D"] = o.D;
    in["s"] = o.s;
    json res;
    res["character"] = chi.name();
    if (chi.is_trivial() && o.s == 1.0) {
        const auto l = laurent_at_1(chi, S);
        res["residue"] = static_cast<double>(l.residue);
        res["c"] = static_cast<double>(l.c0);
        res["c_prime"] = static_cast<double>(l.c1);
    } else {
        res["value"] = static_cast<double>(LS(Real(o.s), chi, S));
        res["derivative"] = static_cast<double>(deriv_LS(Real(o.s), chi, S));
    }
    if (!chi.is_trivial() && o.s == 1.0) {
        res["class_number_formula"] = L1_class_number_formula(chi.D());
        const auto g = class_group_data(chi.D());
        res["class_group"] = {{"h", g.h}, {"w", g.w}, {"log_unit", g.log_unit}};
    }
    return {{"command", "lfun"}, {"input", in}, {"result", res}};
}

json cmd_orbits(const Options& o) {
    const PlaceSet S = PlaceSet::parse(o.S);
    if (o.group.empty()) throw DomainError("orbits needs --group");
    const GroupTag g = parse_group(o.group);
    json in = common_input(o, S);
    in["group"] = to_string(g);
    json list = json::array();
    for (const auto& oc : unipotent_orbit_set(g, S)) {
        json e{{"name", oc.name()}, {"type", to_string(oc.type)}};
        if (oc.alpha) e["alpha"] = rat_str(*oc.alpha);
        if (oc.x) {
            e["x"] = oc.x->str();
            e["distinguished"] = oc.distinguished;
        }
        list.push_back(e);
    }
    return {{"command", "orbits"}, {"input", in}, {"result", {{"count", list.size()}, {"orbits", list}}}};
}

json cmd_weights(const Options& o) {
    const PlaceSet S = PlaceSet::parse(o.S);
    const TruncParam T{o.T1, o.T2};
    const std::string group = o.group.empty() ? "gsp2" : o.group;
    const auto v = parse_rational_list(o.nu);
    const bool with_u = !o.uvalue.empty();
    const Rational u = with_u ? parse_rational(o.uvalue) : Rational(0);
    double closed = 0;
    std::vector<FamilyMember> fam;
    int dims = 1;
    if (group == "gsp2") {
        if (v.size() != 4) throw DomainError("--nu expects n12,n13,n14,n24 for gsp2");
        const NuGSp nu{v[0], v[1], v[2], v[3]};
        if (o.levi == "m0") {
            closed = w_M0(nu, T, S);
            fam = gsp2_M0_family(nu, T, S);
            dims = 2;
        } else if (o.levi == "m1") {
            closed = with_u ? w_M1_u(u, nu, T, S) : w_M1(nu, T, S);
            fam = with_u ? gsp2_M1_u_family(u, nu, T, S) : gsp2_M1_family(nu, T, S);
        } else if (o.levi == "m2") {
            closed = with_u ? w_M2_u(u, nu, T, S) : w_M2(nu, T, S);
            fam = with_u ? gsp2_M2_u_family(u, nu, T, S) : gsp2_M2_family(nu, T, S);
        } else {
            throw DomainError("--levi must be m0, m1 or m2 for gsp2");
        }
    } else if (group == "gl3") {
        if (v.size() != 3) throw DomainError("--nu expects n12,n13,n23 for gl3");
        const NuGL3 nu{v[0], v[1], v[2]};
        if (o.levi == "m0") {
            closed = w_M0_gl3(nu, T, S);
            fam = gl3_M0_family(nu, T, S);
            dims = 2;
        } else if (o.levi == "mprime") {
            closed = with_u ? w_Mprime_gl3_u(u, nu, T, S) : w_Mprime_gl3(nu, T, S);
            fam = with_u ? gl3_Mprime_u_family(u, nu, T, S) : gl3_Mprime_family(nu, T, S);
        } else {
            throw DomainError("--levi must be m0 or mprime for gl3");
        }
    } else {
        throw DomainError("weights supports --group gsp2 or gl3");
    }
    LimitConfig lc;
    lc.digits = std::max(o.digits, 50);
    const LimitResult lim = gm_family_limit(fam, dims, lc);
    json in = common_input(o, S);
    in["group"] = group;
    in["levi"] = o.levi;
    in["nu"] = o.nu;
    if (with_u) in["u"] = o.uvalue;
    in["T"] = {o.T1, o.T2};
    return {{"command", "weights"},
            {"input", in},
            {"result",
             {{"closed_form", closed},
              {"family_limit", lim.value},
              {"limit_error", lim.error},
              {"difference", std::abs(lim.value - closed)}}}};
}

json cmd_chars(const Options& o) {
    const PlaceSet S = PlaceSet::parse(o.S);
    json in = common_input(o, S);
    const auto reps = sclass_reps(S);
    json quad = json::array();
    for (const auto& chi : enum_quad_chars(S)) {
        json values = json::array();
        for (const auto& a : reps) values.push_back(chi_S(chi, Rational(a.value), S));
        quad.push_back({{"D", chi.D()}, {"name", chi.name()}, {"chi_S", values}});
    }
    json cubic = json::array();
    for (const auto& chi : enum_cubic_chars(S)) cubic.push_back({{"modulus", chi.modulus()}, {"name", chi.name()}});
    json sq = json::array();
    for (const auto& a : reps) sq.push_back(a.value.str());
    json cu = json::array();
    for (const auto& a : cclass_reps(S)) cu.push_back(a.value.str());
    return {{"command", "chars"},
            {"input", in},
            {"result", {{"square_classes", sq}, {"cube_classes", cu}, {"quadratic", quad}, {"cubic", cubic}}}};
}

int cmd_selftest(const Options& o) {
    AcceptanceOptions ao;
    if (auto cache = open_cache(o)) ao.L1 = caching_L1_provider(cache, L1Method::ClassNumberFormula);
    json list = json::array();
    int passed = 0;
    std::vector<CriterionResult> results;
    for (int id = 1; id <= kInProcessCriteria; ++id) {
        const auto r = run_criterion(id, ao);
        std::fprintf(stderr, "criterion %d: %.2f s\n", r.id, r.seconds);
        if (r.passed) ++passed;
        list.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        results.push_back(r);
    }
    if (o.json_out) {
        std::cout << json{{"command", "selftest"}, {"criteria", list}, {"passed", passed},
                          {"total", kInProcessCriteria}}
                         .dump()
                  << "\n";
    } else {
        for (const auto& r : results)
            std::printf("%-4d %-4s %-32s %s\n", r.id, r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        std::printf("%d/%d criteria passed\n", passed, kInProcessCriteria);
    }
    return passed == kInProcessCriteria ? 0 : 1;
}

void print_error(const char* type, const std::string& message, bool compact) {
    const json e{{"error", {{"type", type}, {"message", message}}}};
    std::cout << (compact ? e.dump() : e.dump(2)) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unipotent coefficients of the trace formula for GSp(2), Sp(2), GL(3) and SL(3)"};
    app.require_subcommand(1);
    Options o;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--S", o.S, "finite primes of S, comma separated (infinity implicit)");
        sub->add_option("--digits", o.digits, "working precision in decimal digits")->check(CLI::Range(15, 200));
        sub->add_option("--cache", o.cache, "L(1, chi_D) cache file (default: $TFCOEFF_CACHE)");
        sub->add_flag("--json", o.json_out, "compact JSON output");
    };
    auto add_shintani = [&](CLI::App* sub) {
        sub->add_option("--X", o.X, "discriminant bound for the Shintani sums")->check(CLI::PositiveNumber);
        sub->add_option("--eps", o.eps, "comma separated descending eps grid");
        sub->add_option("--L1-method", o.L1_method, "L(1, chi_D) method: cnf or smoothed");
    };

    auto* coeff = app.add_subcommand("coeff", "coefficient a^G(S, u)");
    add_common(coeff);
    add_shintani(coeff);
    coeff->add_option("--group", o.group, "gl2, sl2, gl3, sl3, gsp2 or sp2");
    coeff->add_option("--orbit", o.orbit, "tri, min, sub or reg");
    coeff->add_option("--alpha", o.alpha, "square or cube class parameter (rational)");
    coeff->add_option("--x", o.x, "binary form for n_sub: a,c or a,b,c");
    coeff->add_flag("--endoscopic", o.endoscopic, "report Sp(2) - GSp(2) by both paths");
    coeff->add_option("--centralizer", o.centralizer, "centralizer family: gl2, sl2, u11 or gl2xgl2");
    coeff->add_option("--u", o.u, "centralizer unipotent: 1, u, u10, u01 or ua1");
    coeff->add_option("--d", o.d, "E = Q(sqrt d) for the u11 family");
    coeff->add_option("--sigma", o.sigma, "semisimple part for descent: z, sigma1, ..., sigma6");
    coeff->add_option("--sigma-params", o.sigma_params, "z,x,y,alpha for the semisimple part");
    coeff->add_option("--vol-m0", o.vol_m0, "vol_M0");
    coeff->add_option("--vol-m1", o.vol_m1, "vol_M1");
    coeff->add_option("--vol-m2", o.vol_m2, "vol_M2");
    coeff->add_option("--vol-mprime", o.vol_mprime, "vol_M'");
    coeff->add_option("--vol-g", o.vol_g, "vol_G");

    auto* shintani = app.add_subcommand("shintani", "residue and constant of the Shintani zeta function");
    add_common(shintani);
    add_shintani(shintani);
    shintani->add_option("--alpha", o.alpha, "square class alpha");

    auto* lfun = app.add_subcommand("lfun", "partial L-function of chi_D");
    add_common(lfun);
    lfun->add_option("--D", o.D, "fundamental discriminant (1 for zeta)");
    lfun->add_option("--s", o.s, "real argument");

    auto* orbits = app.add_subcommand("orbits", "unipotent orbit classes (U_G(F))_{G,S}");
    add_common(orbits);
    orbits->add_option("--group", o.group, "gl2, sl2, gl3, sl3, gsp2 or sp2");

    auto* weights = app.add_subcommand("weights", "weight factor: closed form and family limit");
    add_common(weights);
    weights->add_option("--group", o.group, "gsp2 or gl3");
    weights->add_option("--levi", o.levi, "m0, m1, m2 (gsp2) or m0, mprime (gl3)");
    weights->add_option("--nu", o.nu, "entries n12,n13,n14,n24 (gsp2) or n12,n13,n23 (gl3)")->required();
    weights->add_option("--u", o.uvalue, "u12 (m1, mprime) or u24 (m2) for the u nu case");
    weights->add_option("--T1", o.T1, "T1");
    weights->add_option("--T2", o.T2, "T2");

    auto* chars = app.add_subcommand("chars", "square classes and characters unramified outside S");
    add_common(chars);

    auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");
    add_common(selftest);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (selftest->parsed()) return cmd_selftest(o);
        json doc;
        if (coeff->parsed()) doc = cmd_coeff(o);
        else if (shintani->parsed()) doc = cmd_shintani(o);
        else if (lfun->parsed()) doc = cmd_lfun(o);
        else if (orbits->parsed()) doc = cmd_orbits(o);
        else if (weights->parsed()) doc = cmd_weights(o);
        else if (chars->parsed()) doc = cmd_chars(o);
        std::cout << (o.json_out ? doc.dump() : doc.dump(2)) << "\n";
        std::fprintf(stderr, "elapsed %.3f s\n",
                     std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        return 0;
    } catch (const NumericInstability& e) {
        print_error("numeric_instability", e.what(), o.json_out);
        return kExitInstability;
    } catch (const NotImplemented& e) {
        print_error("not_implemented", e.what(), o.json_out);
        return kExitNotImplemented;
    } catch (const DomainError& e) {
        print_error("usage", e.what(), o.json_out);
        return kExitUsage;
    } catch (const std::exception& e) {
        print_error("internal", e.what(), o.json_out);
        return 1;
    }
}
