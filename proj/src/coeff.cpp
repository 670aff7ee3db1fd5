#include "tfc/coeff.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <tuple>

#include "tfc/characters.hpp"
#include "tfc/errors.hpp"
#include "tfc/lfun.hpp"

namespace tfc {

namespace {

std::string rat_str(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

double rat_to_double(const Rational& q) {
    return static_cast<double>(numerator(q).convert_to<long double>() / denominator(q).convert_to<long double>());
}

double dbl(const Real& x) { return static_cast<double>(x); }

CoeffTerm make_term(Rational prefactor, std::string symbol, double volume, std::vector<NamedFactor> factors,
                    double error = 0.0) {
    CoeffTerm t;
    t.prefactor = std::move(prefactor);
    t.volume_symbol = std::move(symbol);
    t.volume = volume;
    t.factors = std::move(factors);
    double v = rat_to_double(t.prefactor) * t.volume;
    for (const auto& f : t.factors) v *= f.value;
    t.value = v;
    t.error = error;
    return t;
}

CoeffResult finish(std::vector<CoeffTerm> terms, std::string provenance) {
    CoeffResult r;
    r.terms = std::move(terms);
    r.provenance = std::move(provenance);
    for (const auto& t : r.terms) {
        r.value += t.value;
        r.error += t.error;
    }
    return r;
}

void require_alpha(const Rational& alpha) {
    if (alpha == 0) throw DomainError("alpha must be a nonzero rational");
}

// Laurent data of zeta^S at s = 1 as doubles: (c_F^S, c_F(S), c'_F(S)).
struct ZetaLaurent {
    double residue, c0, c1;
};

ZetaLaurent zeta_laurent(const PlaceSet& S) {
    const auto l = laurent_at_1(QuadChar::trivial(), S);
    return {dbl(l.residue), dbl(l.c0), dbl(l.c1)};
}

double zeta_log_deriv(double s, const PlaceSet& S) {
    const Real rs(s);
    return dbl(deriv_LS(rs, QuadChar::trivial(), S) / zetaS(rs, S));
}

std::string chi_label(const QuadChar& chi) { return chi.is_trivial() ? "1" : chi.name(); }

// Canonical representative of the S-square class of alpha.
Rational canonical_sclass_rep(const Rational& alpha, const PlaceSet& S) {
    const auto reps = sclass_reps(S);
    return Rational(reps[sclass_index(alpha, reps, S)].value);
}

std::vector<CoeffTerm> sp2_sub_terms(const PlaceSet& S, const SymForm2& x, const CoeffConfig& config,
                                     bool include_shintani);

}  // namespace

void VolumeParams::validate() const {
    for (double v : {vol_M0, vol_M1, vol_M2, vol_Mprime, vol_G})
        if (!(v > 0) || !std::isfinite(v)) throw DomainError("volumes must be positive and finite");
}

void CoeffConfig::validate() const {
    vol.validate();
    if (digits < 20) throw DomainError("coefficient precision must be at least 20 digits");
}

CoeffResult coeff_gl2(const PlaceSet& S, const CoeffConfig& config) {
    config.validate();
    PrecisionScope scope(config.digits);
    const auto z = zeta_laurent(S);
    return finish({make_term(Rational(1, 2), "vol_M0", config.vol.vol_M0, {{"c_F(S)", z.c0}})}, "GL(2) unipotent coefficient");
}

CoeffResult coeff_sl2(const PlaceSet& S, const Rational& alpha, const CoeffConfig& config) {
    config.validate();
    require_alpha(alpha);
    PrecisionScope scope(config.digits);
    const auto z = zeta_laurent(S);
    std::vector<CoeffTerm> terms;
    terms.push_back(make_term(Rational(1, 2), "vol_M0", config.vol.vol_M0, {{"c_F(S)", z.c0}}));
    for (const auto& chi : enum_quad_chars(S)) {
        if (chi.is_trivial()) continue;
        const double L = dbl(LS(Real(1), chi, S));
        terms.push_back(make_term(Rational(1, 2), "vol_M0", config.vol.vol_M0,
                                  {{"chi_S(alpha) for chi=" + chi_label(chi), double(chi_S(chi, alpha, S))},
                                   {"L^S(1," + chi_label(chi) + ")", L}}));
    }
    return finish(std::move(terms), "SL(2) unipotent coefficient");
}

CoeffResult coeff_gl3(const PlaceSet& S, OrbitType type, const CoeffConfig& config) {
    config.validate();
    PrecisionScope scope(config.digits);
    if (type == OrbitType::Min)
        return finish({make_term(1, "vol_M'", config.vol.vol_Mprime, {{"zeta^S'(2)/zeta^S(2)", zeta_log_deriv(2, S)}})},
                      "GL(3): u'");
    if (type != OrbitType::Reg) throw DomainError("GL(3) orbit type must be min (u') or reg (u'')");
    const auto z = zeta_laurent(S);
    return finish({make_term(Rational(1, 3), "vol_M0", config.vol.vol_M0, {{"c_F(S)^2", z.c0 * z.c0}}),
                   make_term(Rational(1, 3), "vol_M0", config.vol.vol_M0,
                             {{"c'_F(S)", z.c1}, {"c_F^S", z.residue}})},
                  "GL(3): u''_1");
}

CoeffResult coeff_sl3(const PlaceSet& S, OrbitType type, const Rational& alpha, const CoeffConfig& config) {
    require_alpha(alpha);
    CoeffResult r = coeff_gl3(S, type, config);
    if (type == OrbitType::Min) {
        r.provenance = "SL(3): u'";
        return r;
    }
    PrecisionScope scope(config.digits);
    const auto chars = enum_cubic_chars(S);
    for (std::size_t i = 0; i + 1 < chars.size(); i += 2) {
        const CubicChar& chi = chars[i];
        const ComplexR a = LS(Real(1), chi, S), b = LS(Real(1), chi.inverse(), S);
        const std::complex<double> La(dbl(a.re), dbl(a.im)), Lb(dbl(b.re), dbl(b.im));
        const std::complex<double> w = chi_S(chi, alpha, S) * La * Lb;
        r.terms.push_back(make_term(Rational(1, 3), "vol_M0", config.vol.vol_M0,
                                    {{"2 Re[chi_S(alpha) L^S(1,chi) L^S(1,chi^-1)] for chi=" + chi.name(),
                                      2 * w.real()}}));
    }
    return finish(std::move(r.terms), "SL(3): u''_alpha");
}

namespace {

struct ConstantKey {
    std::string S;
    std::string alpha;
    std::int64_t X;
    std::vector<double> eps;
    bool tail;
    int digits;
    int method;
    double tol;
    auto operator<=>(const ConstantKey&) const = default;
};

std::mutex& constant_mutex() {
    static std::mutex m;
    return m;
}

std::map<ConstantKey, ShintaniConstant>& constant_cache() {
    static std::map<ConstantKey, ShintaniConstant> c;
    return c;
}

}  // namespace

ShintaniConstant shintani_constant_cached(const Rational& alpha, const PlaceSet& S, const ShintaniConfig& config) {
    require_alpha(alpha);
    const Rational rep = canonical_sclass_rep(alpha, S);
    const ConstantKey key{S.name(),         rat_str(rep),      config.X,
                          config.eps_grid,  config.tail_model, config.digits,
                          static_cast<int>(config.L1_method), config.instability_tol};
    {
        std::lock_guard<std::mutex> lock(constant_mutex());
        auto it = constant_cache().find(key);
        if (it != constant_cache().end()) return it->second;
    }
    const ShintaniResult r = shintani_analyze(rep, S, config);
    const ShintaniConstant c{r.constant_CF, r.constant_error};
    std::lock_guard<std::mutex> lock(constant_mutex());
    constant_cache()[key] = c;
    return c;
}

void clear_shintani_constant_cache() {
    std::lock_guard<std::mutex> lock(constant_mutex());
    constant_cache().clear();
}

namespace {

void require_symplectic(const PlaceSet& S, const OrbitClass& orbit, GroupTag g) {
    if (!S.contains_two()) throw DomainError(to_string(g) + " coefficients require 2 in S");
    if (orbit.group != g) throw DomainError("orbit does not belong to " + to_string(g));
    if (orbit.type == OrbitType::Sub && !orbit.x) throw DomainError("n_sub orbit needs its form x");
    if ((orbit.type == OrbitType::Min || orbit.type == OrbitType::Reg) && orbit.alpha && *orbit.alpha == 0)
        throw DomainError("alpha must be a nonzero rational");
}

CoeffTerm shintani_term(const PlaceSet& S, const SymForm2& x, const CoeffConfig& config) {
    const Rational a = -x.det();
    const auto c = shintani_constant_cached(a, S, config.shintani);
    return make_term(Rational(1, 2), "vol_M1", config.vol.vol_M1, {{"C_F(S," + rat_str(a) + ")", c.value}},
                     0.5 * config.vol.vol_M1 * c.error);
}

CoeffTerm derivative_term(const PlaceSet& S, const CoeffConfig& config) {
    return make_term(Rational(1, 2), "vol_M1", config.vol.vol_M1, {{"zeta^S'(3)/zeta^S(3)", zeta_log_deriv(3, S)}});
}

std::vector<CoeffTerm> sp2_sub_terms(const PlaceSet& S, const SymForm2& x, const CoeffConfig& config,
                                     bool include_shintani) {
    std::vector<CoeffTerm> terms;
    if (include_shintani) terms.push_back(shintani_term(S, x, config));
    int hasse_product = 1;
    for (int e : hasse_profile(x, S)) hasse_product *= e;
    const auto ur = disc_classes(S, -x.det(), 0, DiscKind::QUr);
    for (std::int64_t d : ur.entries) {
        const QuadChar chi(fundamental_discriminant_of_squarefree(d));
        terms.push_back(make_term(Rational(1, 2), "vol_M1", config.vol.vol_M1,
                                  {{"prod_v eps_v(x)", double(hasse_product)},
                                   {"L^S(1," + chi.name() + ")", dbl(LS(Real(1), chi, S))}}));
    }
    if (include_shintani && is_equiv(x, SymForm2::frak_x(1), S, FormRel::SimPrime))
        terms.push_back(derivative_term(S, config));
    return terms;
}

std::vector<CoeffTerm> sp2_reg_terms(const PlaceSet& S, const Rational& alpha, const CoeffConfig& config,
                                     bool nontrivial_only) {
    const auto z = zeta_laurent(S);
    std::vector<CoeffTerm> terms;
    for (const auto& chi : enum_quad_chars(S)) {
        if (nontrivial_only && chi.is_trivial()) continue;
        const auto l = laurent_at_1(chi, S);
        const double c = dbl(l.c0), cp = dbl(l.c1);
        const double x = chi_S(chi, alpha, S);
        const std::string lab = chi_label(chi);
        terms.push_back(make_term(Rational(1, 2), "vol_M0", config.vol.vol_M0,
                                  {{"chi_S(alpha) for chi=" + lab, x},
                                   {"c_F(S," + lab + ")", c},
                                   {"c_F(S)", z.c0}}));
        terms.push_back(make_term(Rational(chi.is_trivial() ? 3 : 1, 4), "vol_M0", config.vol.vol_M0,
                                  {{"chi_S(alpha) for chi=" + lab, x},
                                   {"c'_F(S," + lab + ")", cp},
                                   {"c_F^S", z.residue}}));
    }
    return terms;
}

std::vector<CoeffTerm> sp2_min_terms(const PlaceSet& S, const Rational& alpha, const CoeffConfig& config,
                                     bool nontrivial_only) {
    std::vector<CoeffTerm> terms;
    for (const auto& chi : enum_quad_chars(S)) {
        if (nontrivial_only && chi.is_trivial()) continue;
        const std::string lab = chi_label(chi);
        terms.push_back(make_term(Rational(1, 2), "vol_M2", config.vol.vol_M2,
                                  {{"chi_S(alpha) for chi=" + lab, double(chi_S(chi, alpha, S))},
                                   {"L^S(2," + lab + ")", dbl(LS(Real(2), chi, S))}}));
    }
    return terms;
}

}  // namespace

CoeffResult coeff_gsp2(const PlaceSet& S, const OrbitClass& orbit, const CoeffConfig& config) {
    config.validate();
    require_symplectic(S, orbit, GroupTag::GSp2);
    PrecisionScope scope(config.digits);
    switch (orbit.type) {
        case OrbitType::Trivial:
            return finish({make_term(1, "vol_G", config.vol.vol_G, {})}, "GSp(2) unipotent coefficients");
        case OrbitType::Min:
            if (orbit.alpha && !same_sclass(*orbit.alpha, 1, S))
                throw DomainError("GSp(2) has the single minimal orbit n_min(1)");
            return finish({make_term(Rational(1, 2), "vol_M2", config.vol.vol_M2,
                                     {{"zeta^S(2)", dbl(zetaS(Real(2), S))}})},
                          "GSp(2) unipotent coefficients");
        case OrbitType::Sub: {
            std::vector<CoeffTerm> terms{shintani_term(S, *orbit.x, config)};
            if (is_equiv(*orbit.x, SymForm2::frak_x(1), S, FormRel::Sim)) terms.push_back(derivative_term(S, config));
            return finish(std::move(terms), "GSp(2) unipotent coefficients");
        }
        case OrbitType::Reg: {
            if (orbit.alpha && !same_sclass(*orbit.alpha, 1, S))
                throw DomainError("GSp(2) has the single regular orbit n_reg(1)");
            const auto z = zeta_laurent(S);
            return finish({make_term(Rational(1, 2), "vol_M0", config.vol.vol_M0, {{"c_F(S)^2", z.c0 * z.c0}}),
                           make_term(Rational(3, 4), "vol_M0", config.vol.vol_M0,
                                     {{"c'_F(S)", z.c1}, {"c_F^S", z.residue}})},
                          "GSp(2) unipotent coefficients");
        }
    }
    throw DomainError("unknown orbit type");
}

CoeffResult coeff_sp2(const PlaceSet& S, const OrbitClass& orbit, const CoeffConfig& config) {
    config.validate();
    require_symplectic(S, orbit, GroupTag::Sp2);
    PrecisionScope scope(config.digits);
    const Rational alpha = orbit.alpha.value_or(Rational(1));
    switch (orbit.type) {
        case OrbitType::Trivial:
            return finish({make_term(1, "vol_G", config.vol.vol_G, {})}, "Sp(2) unipotent coefficients");
        case OrbitType::Min:
            return finish(sp2_min_terms(S, alpha, config, false), "Sp(2) unipotent coefficients");
        case OrbitType::Sub:
            return finish(sp2_sub_terms(S, *orbit.x, config, true), "Sp(2) unipotent coefficients");
        case OrbitType::Reg:
            return finish(sp2_reg_terms(S, alpha, config, false), "Sp(2) unipotent coefficients");
    }
    throw DomainError("unknown orbit type");
}

CoeffResult coeff_orbit(const PlaceSet& S, const OrbitClass& orbit, const CoeffConfig& config) {
    if (orbit.type == OrbitType::Trivial) {
        config.validate();
        return finish({make_term(1, "vol_G", config.vol.vol_G, {})}, to_string(orbit.group) + ": identity");
    }
    const Rational alpha = orbit.alpha.value_or(Rational(1));
    switch (orbit.group) {
        case GroupTag::GL2: return coeff_gl2(S, config);
        case GroupTag::SL2: return coeff_sl2(S, alpha, config);
        case GroupTag::GL3: return coeff_gl3(S, orbit.type, config);
        case GroupTag::SL3: return coeff_sl3(S, orbit.type, alpha, config);
        case GroupTag::GSp2: return coeff_gsp2(S, orbit, config);
        case GroupTag::Sp2: return coeff_sp2(S, orbit, config);
    }
    throw DomainError("unknown group");
}

std::string to_string(ExampleFamily f) {
    switch (f) {
        case ExampleFamily::GL2: return "gl2";
        case ExampleFamily::SL2: return "sl2";
        case ExampleFamily::U11: return "u11";
        case ExampleFamily::GL2xGL2: return "gl2xgl2";
    }
    return "?";
}

std::string to_string(ExampleUnipotent u) {
    switch (u) {
        case ExampleUnipotent::Identity: return "1";
        case ExampleUnipotent::U: return "u";
        case ExampleUnipotent::U10: return "u10";
        case ExampleUnipotent::U01: return "u01";
        case ExampleUnipotent::UAlpha1: return "ua1";
    }
    return "?";
}

ExampleFamily parse_example_family(const std::string& s) {
    for (auto f : {ExampleFamily::GL2, ExampleFamily::SL2, ExampleFamily::U11, ExampleFamily::GL2xGL2})
        if (to_string(f) == s) return f;
    throw DomainError("unknown centralizer family '" + s + "' (expected gl2, sl2, u11 or gl2xgl2)");
}

ExampleUnipotent parse_example_unipotent(const std::string& s) {
    for (auto u : {ExampleUnipotent::Identity, ExampleUnipotent::U, ExampleUnipotent::U10, ExampleUnipotent::U01,
                   ExampleUnipotent::UAlpha1})
        if (to_string(u) == s) return u;
    throw DomainError("unknown centralizer unipotent '" + s + "' (expected 1, u, u10, u01 or ua1)");
}

CoeffResult centralizer_example_coeff(ExampleFamily family, const ExampleParams& params, const PlaceSet& S,
                                      const CoeffConfig& config) {
    config.validate();
    require_alpha(params.alpha);
    PrecisionScope scope(config.digits);
    const std::string prov = "centralizer " + to_string(family);
    if (params.u == ExampleUnipotent::Identity)
        return finish({make_term(1, "vol_calG", config.vol.vol_G, {})}, prov + ": identity");
    auto bad_u = [&] {
        return DomainError("unipotent " + to_string(params.u) + " does not occur in family " + to_string(family));
    };
    const auto z = zeta_laurent(S);
    switch (family) {
        case ExampleFamily::GL2:
            if (params.u != ExampleUnipotent::U) throw bad_u();
            return finish({make_term(Rational(1, 2), "vol_calM0", config.vol.vol_M0, {{"c_F(S)", z.c0}})},
                          "centralizer GL(2)");
        case ExampleFamily::SL2: {
            if (params.u != ExampleUnipotent::U) throw bad_u();
            std::vector<CoeffTerm> terms;
            for (const auto& chi : enum_quad_chars(S)) {
                const std::string lab = chi_label(chi);
                terms.push_back(make_term(Rational(1, 2), "vol_calM0", config.vol.vol_M0,
                                          {{"chi_S(alpha) for chi=" + lab, double(chi_S(chi, params.alpha, S))},
                                           {"c_F(S," + lab + ")", dbl(laurent_at_1(chi, S).c0)}}));
            }
            return finish(std::move(terms), "centralizer SL(2)");
        }
        case ExampleFamily::U11: {
            if (params.u != ExampleUnipotent::U) throw bad_u();
            if (params.d == 0 || params.d == 1 || !is_squarefree(params.d))
                throw DomainError("the unitary family needs E = Q(sqrt d) with d squarefree and d != 1");
            const QuadChar chiE(fundamental_discriminant_of_squarefree(params.d));
            const bool delta = unramified_outside(chiE, S);
            std::vector<CoeffTerm> terms{
                make_term(Rational(1, 2), "vol_calM0", config.vol.vol_M0, {{"c_F(S)", z.c0}})};
            if (delta)
                terms.push_back(make_term(Rational(1, 2), "vol_calM0", config.vol.vol_M0,
                                          {{"chi_E,S(alpha)", double(chi_S(chiE, params.alpha, S))},
                                           {"c_F(S," + chiE.name() + ")", dbl(LS(Real(1), chiE, S))},
                                           {"delta_E,S", 1.0}}));
            else
                terms.push_back(make_term(Rational(1, 2), "vol_calM0", config.vol.vol_M0, {{"delta_E,S", 0.0}}));
            return finish(std::move(terms), "centralizer U(1,1)");
        }
        case ExampleFamily::GL2xGL2: {
            if (params.u == ExampleUnipotent::U10)
                return finish({make_term(Rational(1, 2), "vol_calM1", config.vol.vol_M1, {{"c_F(S)", z.c0}})},
                              "centralizer GL(2)xGL(2) with equal determinants");
            if (params.u == ExampleUnipotent::U01)
                return finish({make_term(Rational(1, 2), "vol_calM2", config.vol.vol_M2, {{"c_F(S)", z.c0}})},
                              "centralizer GL(2)xGL(2) with equal determinants");
            if (params.u != ExampleUnipotent::UAlpha1) throw bad_u();
            std::vector<CoeffTerm> terms;
            for (const auto& chi : enum_quad_chars(S)) {
                const std::string lab = chi_label(chi);
                const double c = dbl(laurent_at_1(chi, S).c0);
                terms.push_back(make_term(Rational(1, 4), "vol_calM0", config.vol.vol_M0,
                                          {{"chi_S(alpha) for chi=" + lab, double(chi_S(chi, params.alpha, S))},
                                           {"c_F(S," + lab + ")^2", c * c}}));
            }
            return finish(std::move(terms), "centralizer GL(2)xGL(2) with equal determinants");
        }
    }
    throw DomainError("unknown centralizer family");
}

EndoscopicDiff endoscopic_diff(const PlaceSet& S, OrbitType type, const Rational& alpha,
                               const std::optional<SymForm2>& x, const CoeffConfig& config) {
    config.validate();
    require_alpha(alpha);
    if (!S.contains_two()) throw DomainError("the endoscopic difference requires 2 in S");
    OrbitClass sp, gsp;
    sp.group = GroupTag::Sp2;
    gsp.group = GroupTag::GSp2;
    sp.type = gsp.type = type;
    switch (type) {
        case OrbitType::Min:
        case OrbitType::Reg:
            sp.alpha = alpha;
            gsp.alpha = Rational(1);
            break;
        case OrbitType::Sub:
            if (!x) throw DomainError("the subregular difference needs a form x");
            sp.x = gsp.x = *x;
            break;
        case OrbitType::Trivial:
            throw DomainError("the identity orbit has no endoscopic difference");
    }
    EndoscopicDiff out;
    out.sp2 = coeff_sp2(S, sp, config);
    out.gsp2 = coeff_gsp2(S, gsp, config);
    out.direct = out.sp2.value - out.gsp2.value;
    out.direct_error = out.sp2.error + out.gsp2.error;

    PrecisionScope scope(config.digits);
    std::vector<CoeffTerm> terms;
    const std::string prov = "endoscopic difference Sp(2) - GSp(2)";
    switch (type) {
        case OrbitType::Min: terms = sp2_min_terms(S, alpha, config, true); break;
        case OrbitType::Reg: terms = sp2_reg_terms(S, alpha, config, true); break;
        case OrbitType::Sub: {
            terms = sp2_sub_terms(S, *x, config, false);
            const bool in_sp = is_equiv(*x, SymForm2::frak_x(1), S, FormRel::SimPrime);
            const bool in_gsp = is_equiv(*x, SymForm2::frak_x(1), S, FormRel::Sim);
            if (in_sp != in_gsp) {
                CoeffTerm t = derivative_term(S, config);
                if (!in_sp) {
                    t.prefactor = -t.prefactor;
                    t.value = -t.value;
                }
                terms.push_back(t);
            }
            break;
        }
        case OrbitType::Trivial: break;
    }
    out.predicted = finish(std::move(terms), prov);
    return out;
}

}  // namespace tfc
