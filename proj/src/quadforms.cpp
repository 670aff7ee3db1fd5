#include "tfc/quadforms.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "tfc/errors.hpp"

namespace tfc {

namespace {

std::string rat_str(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

bool is_rational_square(const Rational& q) {
    if (q <= 0) return false;
    return squarefree_kernel(q) == 1;
}

}  // namespace

SymForm2::SymForm2(Rational a, Rational b, Rational c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    if (det() == 0) throw DomainError("degenerate symmetric form " + str());
}

SymForm2 SymForm2::diag(const Rational& alpha, const Rational& beta) { return SymForm2(alpha, 0, beta); }

SymForm2 SymForm2::frak_x(const Rational& alpha) { return SymForm2(1, 0, -alpha); }

SymForm2 SymForm2::congruent(const Rational& g11, const Rational& g12, const Rational& g21,
                             const Rational& g22) const {
    // columns of g: (g11, g21), (g12, g22)
    auto q = [&](const Rational& u1, const Rational& u2, const Rational& w1, const Rational& w2) {
        return u1 * (a_ * w1 + b_ * w2) + u2 * (b_ * w1 + c_ * w2);
    };
    return SymForm2(q(g11, g21, g11, g21), q(g11, g21, g12, g22), q(g12, g22, g12, g22));
}

std::string SymForm2::str() const { return "[[" + rat_str(a_) + "," + rat_str(b_) + "],[" + rat_str(b_) + "," + rat_str(c_) + "]]"; }

std::pair<Rational, Rational> diagonalize(const SymForm2& x) {
    const Rational d = x.det();
    if (x.a() != 0) return {x.a(), d / x.a()};
    if (x.c() != 0) return {x.c(), d / x.c()};
    // q(1,1) = 2b
    const Rational alpha = 2 * x.b();
    return {alpha, d / alpha};
}

int hasse_diag(const Rational& alpha, const Rational& beta, Place v) {
    if (alpha == 0 || beta == 0) throw DomainError("degenerate diagonal form");
    return hilbert(alpha, alpha, v) * hilbert(alpha, beta, v) * hilbert(beta, beta, v);
}

int hasse(const SymForm2& x, Place v) {
    auto [alpha, beta] = diagonalize(x);
    return hasse_diag(alpha, beta, v);
}

std::vector<int> hasse_profile(const SymForm2& x, const PlaceSet& S) {
    std::vector<int> out;
    auto [alpha, beta] = diagonalize(x);
    for (const auto& v : S.places()) out.push_back(hasse_diag(alpha, beta, v));
    return out;
}

FormClassId classify_form(const SymForm2& x, const PlaceSet& S, FormRel rel) {
    FormClassId id;
    id.neg_det_labels = sclass_labels(-x.det(), S);
    if (rel == FormRel::SimPrime) id.hasse = hasse_profile(x, S);
    return id;
}

bool is_equiv(const SymForm2& x, const SymForm2& y, const PlaceSet& S, FormRel rel) {
    return classify_form(x, S, rel) == classify_form(y, S, rel);
}

std::vector<LocalInvariant> realizable_local_invariants(Place v, int height) {
    if (height < 1) throw DomainError("form height must be positive");
    std::set<LocalInvariant> found;
    for (int a = -height; a <= height; ++a) {
        if (a == 0) continue;
        for (int b = -height; b <= height; ++b) {
            if (b == 0) continue;
            const Rational ra(a), rb(b);
            found.insert({local_square_class(-ra * rb, v), hasse_diag(ra, rb, v)});
        }
    }
    return {found.begin(), found.end()};
}

std::vector<int> realizable_eps(Place v, const LocalClass& neg_det, int height) {
    static std::map<std::pair<Place, int>, std::vector<LocalInvariant>> memo;
    static std::mutex mu;
    std::vector<LocalInvariant> inv;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_pair(v, height);
        auto it = memo.find(key);
        if (it == memo.end()) it = memo.emplace(key, realizable_local_invariants(v, height)).first;
        inv = it->second;
    }
    std::vector<int> out;
    for (const auto& li : inv)
        if (li.neg_det == neg_det) out.push_back(li.eps);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<SymForm2> enum_form_classes(const PlaceSet& S, FormRel rel, int height, std::int64_t scan_bound) {
    const auto reps = sclass_reps(S, scan_bound);
    std::vector<SymForm2> out;
    const auto places = S.places();
    for (const auto& rep : reps) {
        const Rational alpha(rep.value);
        if (rel == FormRel::Sim) {
            out.push_back(SymForm2::frak_x(alpha));
            continue;
        }
        // all realizable Hasse tuples for this determinant class
        std::vector<std::vector<int>> tuples{{}};
        for (std::size_t i = 0; i < places.size(); ++i) {
            const auto eps = realizable_eps(places[i], rep.local_labels[i], height);
            if (eps.empty()) throw DomainError("no realizable Hasse invariant at " + places[i].name());
            std::vector<std::vector<int>> next;
            for (const auto& t : tuples)
                for (int e : eps) {
                    auto u = t;
                    u.push_back(e);
                    next.push_back(u);
                }
            tuples = std::move(next);
        }
        std::map<std::vector<int>, Rational> found;
        const std::set<std::vector<int>> wanted(tuples.begin(), tuples.end());
        for (std::int64_t m = 1; m <= scan_bound && found.size() < wanted.size(); ++m) {
            if (!is_squarefree(m)) continue;
            for (std::int64_t u : {m, -m}) {
                const auto prof = hasse_profile(SymForm2::diag(u, -alpha * u), S);
                if (wanted.count(prof) && !found.count(prof)) found.emplace(prof, Rational(u));
            }
        }
        if (found.size() < wanted.size())
            throw DomainError("scan bound exhausted before all Hasse tuples were realized for alpha=" +
                              rep.value.str());
        for (const auto& t : tuples) {
            const Rational& u = found.at(t);
            out.push_back(SymForm2::diag(u, -alpha * u));
        }
    }
    return out;
}

std::string to_string(GroupTag g) {
    switch (g) {
        case GroupTag::GL2: return "gl2";
        case GroupTag::SL2: return "sl2";
        case GroupTag::GL3: return "gl3";
        case GroupTag::SL3: return "sl3";
        case GroupTag::GSp2: return "gsp2";
        case GroupTag::Sp2: return "sp2";
    }
    return "?";
}

std::string to_string(OrbitType t) {
    switch (t) {
        case OrbitType::Trivial: return "tri";
        case OrbitType::Min: return "min";
        case OrbitType::Sub: return "sub";
        case OrbitType::Reg: return "reg";
    }
    return "?";
}

GroupTag parse_group(const std::string& s) {
    for (auto g : {GroupTag::GL2, GroupTag::SL2, GroupTag::GL3, GroupTag::SL3, GroupTag::GSp2, GroupTag::Sp2})
        if (to_string(g) == s) return g;
    throw DomainError("unknown group '" + s + "'");
}

OrbitType parse_orbit_type(const std::string& s) {
    for (auto t : {OrbitType::Trivial, OrbitType::Min, OrbitType::Sub, OrbitType::Reg})
        if (to_string(t) == s) return t;
    throw DomainError("unknown orbit type '" + s + "'");
}

std::string OrbitClass::name() const {
    if (type == OrbitType::Trivial) return "1";
    std::string base;
    switch (group) {
        case GroupTag::GL2: return "u_1";
        case GroupTag::SL2: return "u_" + rat_str(*alpha);
        case GroupTag::GL3:
            return type == OrbitType::Min ? "u'" : "u''_1";
        case GroupTag::SL3:
            return type == OrbitType::Min ? "u'" : "u''_" + rat_str(*alpha);
        case GroupTag::GSp2:
        case GroupTag::Sp2:
            if (type == OrbitType::Sub) return "n_sub(" + x->str() + ")";
            return std::string(type == OrbitType::Min ? "n_min(" : "n_reg(") + rat_str(*alpha) + ")";
    }
    return base;
}

std::vector<OrbitClass> unipotent_orbit_set(GroupTag G, const PlaceSet& S) {
    std::vector<OrbitClass> out;
    auto push = [&](OrbitType t, std::optional<Rational> a, std::optional<SymForm2> x = std::nullopt,
                    bool dist = false) {
        OrbitClass o;
        o.group = G;
        o.type = t;
        o.alpha = std::move(a);
        o.x = std::move(x);
        o.distinguished = dist;
        out.push_back(std::move(o));
    };
    push(OrbitType::Trivial, std::nullopt);
    switch (G) {
        case GroupTag::GL2:
            push(OrbitType::Reg, Rational(1));
            break;
        case GroupTag::SL2:
            for (const auto& r : sclass_reps(S)) push(OrbitType::Reg, Rational(r.value));
            break;
        case GroupTag::GL3:
            push(OrbitType::Min, std::nullopt);
            push(OrbitType::Reg, Rational(1));
            break;
        case GroupTag::SL3:
            push(OrbitType::Min, std::nullopt);
            for (const auto& r : cclass_reps(S)) push(OrbitType::Reg, Rational(r.value));
            break;
        case GroupTag::GSp2: {
            if (!S.contains_two()) throw DomainError("GSp(2) orbit classification requires 2 in S");
            push(OrbitType::Min, Rational(1));
            const SymForm2 x1 = SymForm2::frak_x(1);
            for (const auto& x : enum_form_classes(S, FormRel::Sim))
                push(OrbitType::Sub, std::nullopt, x, is_equiv(x, x1, S, FormRel::Sim));
            push(OrbitType::Reg, Rational(1));
            break;
        }
        case GroupTag::Sp2: {
            if (!S.contains_two()) throw DomainError("Sp(2) orbit classification requires 2 in S");
            const auto reps = sclass_reps(S);
            for (const auto& r : reps) push(OrbitType::Min, Rational(r.value));
            const SymForm2 x1 = SymForm2::frak_x(1);
            for (const auto& x : enum_form_classes(S, FormRel::SimPrime))
                push(OrbitType::Sub, std::nullopt, x, is_equiv(x, x1, S, FormRel::SimPrime));
            for (const auto& r : reps) push(OrbitType::Reg, Rational(r.value));
            break;
        }
    }
    return out;
}

std::string to_string(SigmaKind k) {
    switch (k) {
        case SigmaKind::Z: return "z";
        case SigmaKind::Sigma1: return "sigma1";
        case SigmaKind::Sigma2: return "sigma2";
        case SigmaKind::Sigma3: return "sigma3";
        case SigmaKind::Sigma4: return "sigma4";
        case SigmaKind::Sigma5: return "sigma5";
        case SigmaKind::Sigma6: return "sigma6";
    }
    return "?";
}

SigmaKind parse_sigma_kind(const std::string& s) {
    for (auto k : {SigmaKind::Z, SigmaKind::Sigma1, SigmaKind::Sigma2, SigmaKind::Sigma3, SigmaKind::Sigma4,
                   SigmaKind::Sigma5, SigmaKind::Sigma6})
        if (to_string(k) == s) return k;
    throw DomainError("unknown semisimple kind '" + s + "'");
}

CentralizerClass centralizer_classify(const SigmaDescriptor& s) {
    CentralizerClass c;
    c.sigma_kind = s.kind;
    c.sigma = s;
    c.iota_order = 1;
    const bool has_z = s.kind != SigmaKind::Sigma5;
    if (has_z && s.z == 0) throw DomainError("central parameter z must be nonzero");
    auto need_nonsquare = [&] {
        if (s.alpha == 0 || is_rational_square(s.alpha))
            throw DomainError("alpha must be a nonsquare in Q^x, got " + rat_str(s.alpha));
    };
    const std::string E = "E=Q(sqrt(" + rat_str(s.alpha) + "))";
    switch (s.kind) {
        case SigmaKind::Z:
            c.centralizer_tag = "GSp(2)";
            c.split_center_rank = 1;
            break;
        case SigmaKind::Sigma1:
            c.centralizer_tag = "{(g1,g2) in GL(2)xGL(2) | det(g1)=det(g2)}";
            c.split_center_rank = 1;
            break;
        case SigmaKind::Sigma2:
            if (s.x == 0 || s.x == 1) throw DomainError("sigma2 requires x in Q^x with x != 1");
            c.centralizer_tag = "GL(1)xGL(2)";
            c.split_center_rank = 2;
            break;
        case SigmaKind::Sigma3:
            if (s.x == 0 || s.x * s.x == 1) throw DomainError("sigma3 requires x in Q^x with x^2 != 1");
            c.centralizer_tag = "GL(1)xGL(2)";
            c.split_center_rank = 2;
            break;
        case SigmaKind::Sigma4:
            need_nonsquare();
            c.centralizer_tag = "{g in R_{E/F}GL(2) | det(g) in G_m}, " + E;
            c.split_center_rank = 1;
            break;
        case SigmaKind::Sigma5:
            need_nonsquare();
            if (s.x * s.x - s.alpha * s.y * s.y == 0) throw DomainError("sigma5 requires x^2 - alpha y^2 != 0");
            if (s.y == 0) throw DomainError("sigma5 requires y != 0");
            c.centralizer_tag = "GU(1,1,E/F), " + E;
            c.split_center_rank = 1;
            c.eps_ambiguous = true;
            break;
        case SigmaKind::Sigma6:
            need_nonsquare();
            if (s.x * s.x - s.alpha * s.y * s.y != 1) throw DomainError("sigma6 requires x^2 - alpha y^2 = 1");
            if (s.y == 0) throw DomainError("sigma6 requires y != 0");
            c.centralizer_tag = "{(x,g) in R_{E/F}G_m x GL(2) | N(x)=det(g)}, " + E;
            c.split_center_rank = 1;
            c.eps_ambiguous = true;
            break;
    }
    // A_{G_sigma} = A_G exactly when the split center has the rank of the center of GSp(2).
    c.eps_flag = c.split_center_rank == 1 ? 1 : 0;
    return c;
}

}  // namespace tfc
