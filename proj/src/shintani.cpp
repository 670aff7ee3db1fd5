#include "tfc/shintani.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "tfc/errors.hpp"
#include "tfc/lfun.hpp"

namespace tfc {

namespace {

constexpr std::int64_t kBulkEulerBound = 10000;

const std::vector<std::int64_t>& bulk_primes() {
    static const std::vector<std::int64_t> primes = primes_up_to(kBulkEulerBound);
    return primes;
}

// S together with the primes at which chi ramifies: L^{S'}(s,chi) = L^S(s,chi).
PlaceSet widen(const PlaceSet& S, const QuadChar& chi) {
    std::vector<std::int64_t> ps = S.primes();
    for (auto p : chi.ramified_primes()) ps.push_back(p);
    return PlaceSet(ps);
}

// zeta^S(2s-1) zeta^S(2s) / zeta^S(2)
double xi_prefactor(double s, const PlaceSet& S, int digits) {
    PrecisionScope scope(digits);
    const Real v = zetaS(Real(2 * s - 1), S) * zetaS(Real(2 * s), S) / zetaS(Real(2), S);
    return static_cast<double>(v);
}

struct Member {
    std::int64_t d = 0;
    std::int64_t D = 0;
    std::int64_t m = 0;  // N(f_d^S)
    double L1S = 0.0;    // L^S(1, chi_d)
    std::vector<double> Lhigh;  // L^S(sigma_k, chi_d) for each requested sigma_k
};

// L^S(1,chi_D) from the primitive value.
double remove_S_factors_at_1(double L1, std::int64_t D, const PlaceSet& S) {
    double v = L1;
    for (auto p : S.primes()) v *= 1.0 - kronecker(D, p) / static_cast<double>(p);
    return v;
}

// Members of the class of alpha with |D| <= X, with L^S(sigma_k, chi_d) for each sigma_k >= 3.
std::vector<Member> collect_members(const Rational& alpha, const PlaceSet& S, std::int64_t X,
                                    const std::vector<double>& sigmas, const L1Provider& L1) {
    const DiscClassSet cls = disc_classes(S, alpha, X, DiscKind::QS);
    const auto& primes = bulk_primes();
    std::vector<std::int64_t> outside;
    for (auto p : primes)
        if (!S.contains(p)) outside.push_back(p);
    // p^{-sigma} tables
    std::vector<std::vector<double>> ppow(sigmas.size(), std::vector<double>(outside.size()));
    for (std::size_t k = 0; k < sigmas.size(); ++k)
        for (std::size_t i = 0; i < outside.size(); ++i)
            ppow[k][i] = std::pow(static_cast<double>(outside[i]), -sigmas[k]);
    std::vector<Member> out;
    out.reserve(cls.entries.size());
    for (auto d : cls.entries) {
        Member mb;
        mb.d = d;
        mb.D = fundamental_discriminant_of_squarefree(d);
        mb.m = conductor_outside(d, S);
        mb.L1S = remove_S_factors_at_1(L1(mb.D), mb.D, S);
        mb.Lhigh.assign(sigmas.size(), 1.0);
        for (std::size_t i = 0; i < outside.size(); ++i) {
            const int c = kronecker(mb.D, outside[i]);
            if (c == 0) continue;
            for (std::size_t k = 0; k < sigmas.size(); ++k) mb.Lhigh[k] /= 1.0 - c * ppow[k][i];
        }
        out.push_back(std::move(mb));
    }
    return out;
}

// Polynomial extrapolation to x = 0 through (x_i, f_i) by Neville's scheme.
double extrapolate_to_zero(const std::vector<double>& x, const std::vector<double>& f) {
    std::vector<double> p = f;
    const std::size_t n = x.size();
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = 0; i + k < n; ++i)
            p[i] = (x[i + k] * p[i] - x[i] * p[i + 1]) / (x[i + k] - x[i]);
    return p[0];
}

struct GridSums {
    std::vector<double> P;  // sum b_m m^{-1-eps}
    std::vector<double> A;  // sum b_m
};

// Sums over members with m <= Ybound; index k = 0 is eps = 0, then the grid.
GridSums grid_sums(const std::vector<Member>& members, const std::vector<double>& eps_all, double Ybound) {
    GridSums g;
    g.P.assign(eps_all.size(), 0.0);
    g.A.assign(eps_all.size(), 0.0);
    for (const auto& mb : members) {
        if (static_cast<double>(mb.m) > Ybound) continue;
        const double lm = std::log(static_cast<double>(mb.m));
        for (std::size_t k = 0; k < eps_all.size(); ++k) {
            const double b = mb.L1S / mb.Lhigh[k];
            g.A[k] += b;
            g.P[k] += b * std::exp(-(1.0 + eps_all[k]) * lm);
        }
    }
    return g;
}

struct Estimates {
    std::vector<double> truncated;  // pref * P
    std::vector<double> model;      // tail-corrected
    double residue = 0.0;
    double residue_spread = 0.0;
    double constant = 0.0;
    double constant_spread = 0.0;
    double kappa0 = 0.0;
};

Estimates estimate(const GridSums& g, const std::vector<double>& eps_all, const std::vector<double>& pref,
                   double Y, double R, bool tail_model) {
    Estimates e;
    const std::size_t n = eps_all.size();
    e.kappa0 = g.A[0] / Y;
    std::vector<double> xs, rs, cs;
    for (std::size_t k = 1; k < n; ++k) {
        const double eps = eps_all[k];
        const double kappa = g.A[k] / Y;
        const double trunc = pref[k] * g.P[k];
        double model = trunc;
        double model_resc = trunc;
        if (tail_model) {
            model = pref[k] * (g.P[k] + kappa * std::pow(Y, -eps) / eps);
            const double kappa_resc = kappa * R / (pref[0] * e.kappa0);
            model_resc = pref[k] * (g.P[k] + kappa_resc * std::pow(Y, -eps) / eps);
        }
        e.truncated.push_back(trunc);
        e.model.push_back(model);
        xs.push_back(eps);
        rs.push_back(eps * model);
        cs.push_back(model_resc - R / eps);
    }
    e.residue = extrapolate_to_zero(xs, rs);
    e.constant = extrapolate_to_zero(xs, cs);
    if (xs.size() >= 2) {
        // drop the largest eps (the grid is sorted descending)
        std::vector<double> xs2(xs.begin() + 1, xs.end()), rs2(rs.begin() + 1, rs.end()),
            cs2(cs.begin() + 1, cs.end());
        e.residue_spread = std::abs(e.residue - extrapolate_to_zero(xs2, rs2));
        e.constant_spread = std::abs(e.constant - extrapolate_to_zero(xs2, cs2));
    }
    return e;
}

L1Provider resolve_provider(const L1Provider& given, L1Method method) {
    return given ? given : direct_L1_provider(method);
}

}  // namespace

std::string to_string(L1Method m) {
    return m == L1Method::ClassNumberFormula ? "class-number-formula" : "smoothed-character-sum";
}

L1Provider direct_L1_provider(L1Method method) {
    if (method == L1Method::ClassNumberFormula) return [](std::int64_t D) { return L1_class_number_formula(D); };
    return [](std::int64_t D) { return L1_smoothed_sum(D); };
}

void ShintaniConfig::validate() const {
    if (X < 1000) throw DomainError("Shintani truncation X must be at least 1000");
    if (eps_grid.empty()) throw DomainError("Shintani eps grid is empty");
    for (std::size_t i = 0; i < eps_grid.size(); ++i) {
        if (!(eps_grid[i] > 0)) throw DomainError("Shintani eps grid must be strictly positive");
        if (i > 0 && !(eps_grid[i] < eps_grid[i - 1]))
            throw DomainError("Shintani eps grid must be sorted strictly descending");
    }
    if (digits < 15) throw DomainError("working precision must be at least 15 digits");
}

double shintani_residue_exact(const PlaceSet& S) {
    double r = std::ldexp(1.0, -static_cast<int>(S.size()));
    for (auto p : S.primes()) r *= 1.0 - 1.0 / static_cast<double>(p);
    return r;
}

double xi_partial(double s, const Rational& alpha, const PlaceSet& S, std::int64_t X, const L1Provider& L1) {
    if (!(s > 1.5)) throw DomainError("xi_partial requires s > 3/2");
    if (!S.contains_two()) throw DomainError("xi_partial requires 2 in S");
    const L1Provider prov = resolve_provider(L1, L1Method::ClassNumberFormula);
    const auto members = collect_members(alpha, S, X, {2 * s}, prov);
    if (members.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& mb : members)
        sum += mb.L1S / (mb.Lhigh[0] * std::pow(static_cast<double>(mb.m), s - 0.5));
    return xi_prefactor(s, S, PrecisionConfig{}.working_digits) * sum;
}

ShintaniResult shintani_analyze(const Rational& alpha, const PlaceSet& S, const ShintaniConfig& config) {
    config.validate();
    if (!S.contains_two()) throw DomainError("the Shintani zeta function requires 2 in S");
    const L1Provider prov = resolve_provider(config.L1_lookup, config.L1_method);
    std::vector<double> eps_all{0.0};
    for (double e : config.eps_grid) eps_all.push_back(e);
    std::vector<double> sigmas;
    for (double e : eps_all) sigmas.push_back(3.0 + 2.0 * e);
    const auto members = collect_members(alpha, S, config.X, sigmas, prov);
    if (members.empty()) throw NumericInstability("no discriminants in the class below X");

    ShintaniResult res;
    res.residue_exact = shintani_residue_exact(S);
    const std::int64_t c = std::abs(members.front().D) / members.front().m;
    for (const auto& mb : members)
        if (std::abs(mb.D) / mb.m != c || std::abs(mb.D) % mb.m != 0)
            throw DomainError("S-part of the discriminant is not constant on the class");
    const double Y = static_cast<double>(config.X) / static_cast<double>(c);

    std::vector<double> pref;
    for (double e : eps_all) pref.push_back(xi_prefactor(1.5 + e, S, config.digits));

    const double R = res.residue_exact;
    const GridSums full = grid_sums(members, eps_all, Y);
    const Estimates est = estimate(full, eps_all, pref, Y, R, config.tail_model);
    const GridSums half = grid_sums(members, eps_all, Y / 2);
    const Estimates est_half = estimate(half, eps_all, pref, Y / 2, R, config.tail_model);

    for (std::size_t k = 0; k < config.eps_grid.size(); ++k) {
        res.grid_values.emplace_back(config.eps_grid[k], est.truncated[k]);
        res.model_values.emplace_back(config.eps_grid[k], est.model[k]);
    }
    res.residue_estimate = est.residue;
    res.residue_error = est.residue_spread + std::abs(est.residue - est_half.residue);
    res.constant_CF = est.constant;
    res.constant_error = est.constant_spread + std::abs(est.constant - est_half.constant);

    auto& dg = res.diagnostics;
    dg.n_terms = members.size();
    dg.S_part = c;
    dg.Y = Y;
    dg.kappa0 = est.kappa0;
    dg.kappa_half_Y = est_half.kappa0;
    {
        // Tail self-check at the smallest eps: the sum over (Y/2, Y] against the law fitted on [1, Y/2].
        const std::size_t k = eps_all.size() - 1;
        const double eps = eps_all[k];
        const double kappa_half = half.A[k] / (Y / 2);
        const double observed = full.P[k] - half.P[k];
        const double predicted = kappa_half * std::pow(Y / 2, -eps) * (1.0 - std::pow(2.0, -eps)) / eps;
        dg.tail_check_ratio = predicted > 0 ? observed / predicted : 0.0;
    }

    if (!(res.residue_estimate > 0) || !std::isfinite(res.residue_estimate))
        throw NumericInstability("residue estimate is not positive");
    if (est.residue_spread > config.instability_tol * std::abs(est.residue))
        throw NumericInstability("residue extrapolants disagree beyond tolerance (tail model " +
                                 std::string(config.tail_model ? "on" : "off") + ")");
    return res;
}

double residue_at_pole(const Rational& alpha, const PlaceSet& S, const ShintaniConfig& config) {
    return shintani_analyze(alpha, S, config).residue_estimate;
}

double shintani_constant(const Rational& alpha, const PlaceSet& S, const ShintaniConfig& config) {
    return shintani_analyze(alpha, S, config).constant_CF;
}

namespace {

double local_factor_unchecked(std::int64_t p, double s, Twist twist, bool ramified, int chi_p) {
    const double q = static_cast<double>(p);
    const double a = 1.0 / (1.0 - std::pow(q, 1.0 - 2.0 * s));  // (1 - q^{-2s+1})^{-1}
    const double z2 = 1.0 - 1.0 / (q * q);                       // ((1 - q^{-2})^{-1})^{-1}
    if (twist == Twist::ChiD) {
        if (ramified) return 0.0;
        return a * z2;
    }
    const double b = 1.0 / (1.0 - std::pow(q, -2.0 * s));       // (1 - q^{-2s})^{-1}
    if (ramified) return a * b * z2 * std::pow(q, -s + 0.5);     // L_p(2s, chi) = 1
    const double Lp_inv = 1.0 - chi_p * std::pow(q, -2.0 * s);
    return a * b * z2 * Lp_inv;
}

}  // namespace

double local_factor(std::int64_t p, double s, Twist twist, bool ramified, int chi_p) {
    if (!is_prime(p)) throw DomainError("local_factor requires a prime");
    return local_factor_unchecked(p, s, twist, ramified, chi_p);
}

namespace {

long double euler_product(std::int64_t d, double s, const PlaceSet& S, std::int64_t bound, Twist twist) {
    const std::int64_t D = fundamental_discriminant_of_squarefree(d);
    long double prod = 1.0L;
    for (auto p : primes_up_to(bound)) {
        if (S.contains(p)) continue;
        const int c = kronecker(D, p);
        const double f = local_factor_unchecked(p, s, twist, c == 0, c);
        prod *= static_cast<long double>(f);
        if (prod == 0.0L) break;
    }
    return prod;
}

}  // namespace

EulerAssembly euler_assembly_check(std::int64_t d, double s, const PlaceSet& S, std::int64_t prime_bound) {
    if (!(s > 1.5)) throw DomainError("Euler assembly requires s > 3/2");
    const QuadChar chi = quad_char_of(Rational(d));
    EulerAssembly out;
    if (!unramified_outside(chi, S)) {
        out.product_path = static_cast<double>(euler_product(d, s, S, prime_bound, Twist::ChiD));
        out.direct_path = 0.0;
        return out;
    }
    PrecisionScope scope(PrecisionConfig{}.working_digits);
    const Real L1 = LS(Real(1), chi, S);
    out.product_path = static_cast<double>(static_cast<long double>(static_cast<double>(L1)) *
                                           euler_product(d, s, S, prime_bound, Twist::ChiD));
    out.direct_path = static_cast<double>(L1 * zetaS(Real(2 * s - 1), S) / zetaS(Real(2), S));
    return out;
}

EulerAssembly euler_assembly_trivial(std::int64_t d, double s, const PlaceSet& S, std::int64_t prime_bound) {
    if (!(s > 1.5)) throw DomainError("Euler assembly requires s > 3/2");
    const QuadChar chi = quad_char_of(Rational(d));
    const PlaceSet Sw = widen(S, chi);
    PrecisionScope scope(PrecisionConfig{}.working_digits);
    const Real L1 = LS(Real(1), chi, Sw);
    const Real L2s = LS(Real(2 * s), chi, Sw);
    const double N = static_cast<double>(conductor_outside(d, S));
    EulerAssembly out;
    out.product_path = static_cast<double>(static_cast<long double>(static_cast<double>(L1)) *
                                           euler_product(d, s, S, prime_bound, Twist::Trivial));
    out.direct_path = xi_prefactor(s, S, PrecisionConfig{}.working_digits) * static_cast<double>(L1 / L2s) /
                      std::pow(N, s - 0.5);
    return out;
}

}  // namespace tfc
