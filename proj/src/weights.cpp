#include "tfc/weights.hpp"

#include <cmath>
#include <random>

#include "tfc/errors.hpp"

namespace tfc {

namespace {

double rat_to_double(const Rational& q) {
    return static_cast<double>(numerator(q).convert_to<long double>() / denominator(q).convert_to<long double>());
}

double log_abs_S(const Rational& x, const PlaceSet& S, const char* what) {
    if (x == 0) throw DomainError(std::string(what) + " must be nonzero");
    return std::log(abs_S(x, S));
}

double lin(const SpectralParam& lam, std::pair<double, double> c) { return lam.l1 * c.first + lam.l2 * c.second; }

FamilyMember exp_member(std::pair<double, double> c, std::function<Real(const Real&, const Real&)> th) {
    const Real c1(c.first), c2(c.second);
    return {[c1, c2](const Real& l1, const Real& l2) { return Real(exp(c1 * l1 + c2 * l2)); }, std::move(th)};
}

// Two-member family for a maximal Levi: exp(a l) with theta = l, and exp(b l) with theta = -l.
std::vector<FamilyMember> maximal_family(double a, double b) {
    return {exp_member({a, 0.0}, [](const Real& l1, const Real&) { return l1; }),
            exp_member({b, 0.0}, [](const Real& l1, const Real&) { return Real(-l1); })};
}

// Images of 1,2,3 (zero based) for the Weyl group of GL(3).
std::array<int, 3> perm_of(WeylGL3 s) {
    switch (s) {
        case WeylGL3::e: return {0, 1, 2};
        case WeylGL3::s12: return {1, 0, 2};
        case WeylGL3::s23: return {0, 2, 1};
        case WeylGL3::s123: return {1, 2, 0};
        case WeylGL3::s132: return {2, 0, 1};
        case WeylGL3::s13: return {2, 1, 0};
    }
    return {0, 1, 2};
}

}  // namespace

const std::vector<WeylGSp>& all_weyl_gsp() {
    static const std::vector<WeylGSp> all{WeylGSp::e,    WeylGSp::s0, WeylGSp::s2,     WeylGSp::s0s1,
                                          WeylGSp::s0s2, WeylGSp::s1, WeylGSp::s0s1s2, WeylGSp::s1s2};
    return all;
}

const std::vector<WeylGL3>& all_weyl_gl3() {
    static const std::vector<WeylGL3> all{WeylGL3::e,    WeylGL3::s12,  WeylGL3::s23,
                                          WeylGL3::s123, WeylGL3::s132, WeylGL3::s13};
    return all;
}

std::string to_string(WeylGSp s) {
    switch (s) {
        case WeylGSp::e: return "1";
        case WeylGSp::s0: return "s0";
        case WeylGSp::s2: return "s2";
        case WeylGSp::s0s1: return "s0s1";
        case WeylGSp::s0s2: return "s0s2";
        case WeylGSp::s1: return "s1";
        case WeylGSp::s0s1s2: return "s0s1s2";
        case WeylGSp::s1s2: return "s1s2";
    }
    return "?";
}

std::string to_string(WeylGL3 s) {
    switch (s) {
        case WeylGL3::e: return "1";
        case WeylGL3::s12: return "(12)";
        case WeylGL3::s23: return "(23)";
        case WeylGL3::s123: return "(123)";
        case WeylGL3::s132: return "(132)";
        case WeylGL3::s13: return "(13)";
    }
    return "?";
}

double abs_S(const Rational& x, const PlaceSet& S) {
    if (x == 0) return 0.0;
    double v = std::abs(rat_to_double(x));
    for (auto p : S.primes()) v *= std::pow(static_cast<double>(p), -valuation(x, p));
    return v;
}

double norm_S(const std::vector<Rational>& x, const PlaceSet& S) {
    double sq = 0.0;
    bool any = false;
    for (const auto& c : x) {
        const double d = rat_to_double(c);
        sq += d * d;
        if (c != 0) any = true;
    }
    if (!any) return 0.0;
    double v = std::sqrt(sq);
    for (auto p : S.primes()) {
        int vmin = 0;
        bool first = true;
        for (const auto& c : x) {
            if (c == 0) continue;
            const int e = valuation(c, p);
            if (first || e < vmin) vmin = e;
            first = false;
        }
        v *= std::pow(static_cast<double>(p), -vmin);
    }
    return v;
}

double v_table(WeylGSp s, const SpectralParam& lam, const NuGSp& n, const TruncParam& T, const PlaceSet& S) {
    const double l1 = lam.l1, l2 = lam.l2, T1 = T.T1, T2 = T.T2;
    const Rational n23 = n.n14 - n.n12 * n.n24;
    auto N = [&](std::vector<Rational> v) { return norm_S(v, S); };
    switch (s) {
        case WeylGSp::e: return std::exp(l1 * T1 + l2 * T2);
        case WeylGSp::s0: return std::pow(N({1, n.n12}), -l2) * std::exp(l1 * T1 + l2 * (T1 - T2));
        case WeylGSp::s2: return std::pow(N({1, n.n24}), -l1) * std::exp(-l1 * (T1 - 2 * T2) + l2 * T2);
        case WeylGSp::s0s1:
            return std::pow(N({1, n.n24}), l1 + l2) * std::pow(N({1, n23, n.n24}), -2 * l1 - l2) *
                   std::exp(l1 * (T1 - 2 * T2) + l2 * (T1 - T2));
        case WeylGSp::s0s2:
            return std::pow(N({1, n.n12, n.n12, n.n12 * n.n12, n.n13 + n.n12 * n.n14}), -l1 - l2) *
                   std::pow(N({1, n.n12}), 2 * l1) * std::exp(-l1 * (T1 - 2 * T2) - l2 * (T1 - T2));
        case WeylGSp::s1:
            return std::pow(N({1, n.n12, n.n12, n.n12 * n.n12, n.n13 + n.n12 * n.n14}), l1) *
                   std::pow(N({1, n.n12, n.n13, n.n14}), -2 * l1 - l2) * std::exp(l1 * (T1 - 2 * T2) - l2 * T2);
        case WeylGSp::s0s1s2:
            return std::pow(N({1, n23, n23, n.n24, n.n13 - n.n12 * n23, n.n13 * n.n24 - n.n14 * n23}), -l1 - l2) *
                   std::pow(N({1, n23, n.n24}), l2) * std::exp(-l1 * T1 - l2 * (T1 - T2));
        case WeylGSp::s1s2:
            return std::pow(N({1, n23, n23, n.n24, n.n13 - n.n12 * n23, n.n13 * n.n24 - n.n14 * n23}), -l1) *
                   std::pow(N({1, n.n12, n.n13, n.n14}), -l2) * std::exp(-l1 * T1 - l2 * T2);
    }
    return 0.0;
}

double v_table(WeylGL3 s, const SpectralParam& lam, const NuGL3& n, const TruncParam& T, const PlaceSet& S) {
    const double l1 = lam.l1, l2 = lam.l2, T1 = T.T1, T2 = T.T2;
    auto N = [&](std::vector<Rational> v) { return norm_S(v, S); };
    const Rational m13 = n.n13 - n.n12 * n.n23;
    switch (s) {
        case WeylGL3::e: return std::exp(l1 * T1 + l2 * T2);
        case WeylGL3::s12: return std::pow(N({1, n.n12}), -l1) * std::exp(l1 * (T2 - T1) + l2 * T2);
        case WeylGL3::s23: return std::pow(N({1, n.n23}), -l2) * std::exp(l1 * T1 + l2 * (T1 - T2));
        case WeylGL3::s123:
            return std::pow(N({1, n.n12}), l2) * std::pow(N({1, n.n12, n.n13}), -l1 - l2) *
                   std::exp(-l1 * T2 + l2 * (T1 - T2));
        case WeylGL3::s132:
            return std::pow(N({1, n.n23}), l1) * std::pow(N({1, m13, n.n23}), -l1 - l2) *
                   std::exp(l1 * (T2 - T1) - l2 * T1);
        case WeylGL3::s13:
            return std::pow(N({1, n.n12, n.n13}), -l1) * std::pow(N({1, m13, n.n23}), -l2) *
                   std::exp(-l1 * T2 - l2 * T1);
    }
    return 0.0;
}

std::pair<double, double> w_exponents(WeylGSp s, const NuGSp& nu, const TruncParam& T, const PlaceSet& S) {
    const double L1 = log_abs_S(nu.n12, S, "nu12"), L2 = log_abs_S(nu.n24, S, "nu24");
    const double T1 = T.T1, T2 = T.T2;
    switch (s) {
        case WeylGSp::e: return {T1, T2};
        case WeylGSp::s0: return {T1, T1 - T2 - L1};
        case WeylGSp::s2: return {-(T1 - 2 * T2) - L2, T2};
        case WeylGSp::s0s1: return {T1 - 2 * T2 - 2 * L1 - L2, T1 - T2 - L1};
        case WeylGSp::s0s2: return {-(T1 - 2 * T2) - L2, -(T1 - T2) - L1 - L2};
        case WeylGSp::s1: return {T1 - 2 * T2 - 2 * L1 - L2, -T2 - 2 * L1 - L2};
        case WeylGSp::s0s1s2: return {-T1 - 2 * L1 - 2 * L2, -(T1 - T2) - L1 - L2};
        case WeylGSp::s1s2: return {-T1 - 2 * L1 - 2 * L2, -T2 - 2 * L1 - L2};
    }
    return {0.0, 0.0};
}

std::pair<double, double> w_exponents(WeylGL3 s, const NuGL3& nu, const TruncParam& T, const PlaceSet& S) {
    const double L1 = log_abs_S(nu.n12, S, "nu12"), L2 = log_abs_S(nu.n23, S, "nu23");
    const double T1 = T.T1, T2 = T.T2;
    switch (s) {
        case WeylGL3::e: return {T1, T2};
        case WeylGL3::s12: return {T2 - T1 - L1, T2};
        case WeylGL3::s23: return {T1, T1 - T2 - L2};
        case WeylGL3::s123: return {-T2 - L1 - L2, T1 - T2 - L2};
        case WeylGL3::s132: return {T2 - T1 - L1, -T1 - L1 - L2};
        case WeylGL3::s13: return {-T2 - L1 - L2, -T1 - L1 - L2};
    }
    return {0.0, 0.0};
}

double w_table(WeylGSp s, const SpectralParam& lam, const NuGSp& nu, const TruncParam& T, const PlaceSet& S) {
    return std::exp(lin(lam, w_exponents(s, nu, T, S)));
}

double w_table(WeylGL3 s, const SpectralParam& lam, const NuGL3& nu, const TruncParam& T, const PlaceSet& S) {
    return std::exp(lin(lam, w_exponents(s, nu, T, S)));
}

Real theta(WeylGSp s, const Real& l1, const Real& l2) {
    switch (s) {
        case WeylGSp::e: return l1 * l2;
        case WeylGSp::s0: return (l1 + l2) * (-l2);
        case WeylGSp::s2: return (-l1) * (2 * l1 + l2);
        case WeylGSp::s0s1: return (l1 + l2) * (-2 * l1 - l2);
        case WeylGSp::s0s2: return (-l1 - l2) * (2 * l1 + l2);
        case WeylGSp::s1: return l1 * (-2 * l1 - l2);
        case WeylGSp::s0s1s2: return (-l1 - l2) * l2;
        case WeylGSp::s1s2: return (-l1) * (-l2);
    }
    return Real(0);
}

Real theta(WeylGL3 s, const Real& l1, const Real& l2) {
    // lambda(H) for H in the diagonal Cartan: varpi_1 = (2,-1,-1)/3, varpi_2 = (1,1,-2)/3
    const std::array<Real, 3> lam{(2 * l1 + l2) / 3, (-l1 + l2) / 3, (-l1 - 2 * l2) / 3};
    const auto p = perm_of(s);
    // s(e_i - e_j) = e_{p(i)} - e_{p(j)}
    const Real a = lam[static_cast<std::size_t>(p[0])] - lam[static_cast<std::size_t>(p[1])];
    const Real b = lam[static_cast<std::size_t>(p[1])] - lam[static_cast<std::size_t>(p[2])];
    return a * b;
}

double theta(WeylGSp s, const SpectralParam& lam) {
    PrecisionScope scope(PrecisionConfig{}.working_digits);
    return static_cast<double>(theta(s, Real(lam.l1), Real(lam.l2)));
}

double theta(WeylGL3 s, const SpectralParam& lam) {
    PrecisionScope scope(PrecisionConfig{}.working_digits);
    return static_cast<double>(theta(s, Real(lam.l1), Real(lam.l2)));
}

double w_M0(const NuGSp& nu, const TruncParam& T, const PlaceSet& S) {
    const double L1 = log_abs_S(nu.n12, S, "nu12"), L2 = log_abs_S(nu.n24, S, "nu24");
    const double T1 = T.T1, T2 = T.T2;
    return 2 * L1 * L1 + L2 * L2 + 4 * L1 * L2 + 4 * T1 * L1 + 4 * T2 * L2 + 8 * T1 * T2 - 2 * T1 * T1 -
           4 * T2 * T2;
}

double w_M1(const NuGSp& nu, const TruncParam& T, const PlaceSet& S) {
    const Rational detY = nu.n13 * nu.n24 - nu.n14 * nu.n14;
    return log_abs_S(detY, S, "det(Y)") + 2 * T.T1;
}

double w_M1_u(const Rational& u12, const NuGSp& nu, const TruncParam& T, const PlaceSet& S) {
    return 2 * log_abs_S(u12, S, "u12") + 2 * log_abs_S(nu.n24, S, "nu24") + 2 * T.T1;
}

double w_M2(const NuGSp& nu, const TruncParam& T, const PlaceSet& S) {
    const double n = norm_S({nu.n12, nu.n13 / 2, nu.n14}, S);
    if (n == 0) throw DomainError("(nu12, nu13/2, nu14) must be nonzero");
    return std::log(n) + 2 * T.T2;
}

double w_M2_u(const Rational& u24, const NuGSp& nu, const TruncParam& T, const PlaceSet& S) {
    return 2 * log_abs_S(nu.n12, S, "nu12") + log_abs_S(u24, S, "u24") - std::log(abs_S(2, S)) + 2 * T.T2;
}

double w_M0_gl3(const NuGL3& nu, const TruncParam& T, const PlaceSet& S) {
    const double L1 = log_abs_S(nu.n12, S, "nu12"), L2 = log_abs_S(nu.n23, S, "nu23");
    const double T1 = T.T1, T2 = T.T2;
    return 0.5 * (L1 * L1 + L2 * L2 + 4 * L1 * L2) + 3 * T2 * L1 + 3 * T1 * L2 - 1.5 * T1 * T1 - 1.5 * T2 * T2 +
           6 * T1 * T2;
}

double w_Mprime_gl3(const NuGL3& nu, const TruncParam& T, const PlaceSet& S) {
    const double n = norm_S({nu.n13, nu.n23}, S);
    if (n == 0) throw DomainError("(nu13, nu23) must be nonzero");
    return std::log(n) + T.T1 + T.T2;
}

double w_Mprime_gl3_u(const Rational& u12, const NuGL3& nu, const TruncParam& T, const PlaceSet& S) {
    return log_abs_S(nu.n23 * u12, S, "nu23 u12") + T.T1 + T.T2;
}

LimitResult gm_family_limit(const std::vector<FamilyMember>& members, int dims, const LimitConfig& config) {
    if (dims != 1 && dims != 2) throw DomainError("family dimension must be 1 or 2");
    if (members.empty()) throw DomainError("empty family");
    if (config.digits < 30) throw DomainError("the limit engine needs at least 30 digits");
    if (config.levels < 3) throw DomainError("the limit engine needs at least 3 levels");
    PrecisionScope scope(config.digits);
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> mag(0.5, 1.5);

    auto draw_ray = [&]() {
        for (int attempt = 0; attempt < 1000; ++attempt) {
            const Real a(mag(rng) * (rng() % 2 ? 1 : -1));
            const Real b(dims == 2 ? mag(rng) * (rng() % 2 ? 1 : -1) : 0.0);
            bool ok = true;
            for (const auto& m : members)
                if (abs(m.theta(a, b)) < Real(0.05)) ok = false;
            if (ok) return std::make_pair(a, b);
        }
        throw NumericInstability("no generic direction found for the family");
    };

    auto along_ray = [&](const std::pair<Real, Real>& ray, int levels) {
        std::vector<Real> ts, fs;
        Real t(config.t0);
        for (int k = 0; k < levels; ++k) {
            const Real l1 = t * ray.first, l2 = t * ray.second;
            Real f = 0;
            for (const auto& m : members) f += m.value(l1, l2) / m.theta(l1, l2);
            ts.push_back(t);
            fs.push_back(f);
            t /= 2;
        }
        // Neville extrapolation to t = 0
        std::vector<Real> p = fs;
        const std::size_t n = ts.size();
        for (std::size_t k = 1; k < n; ++k)
            for (std::size_t i = 0; i + k < n; ++i)
                p[i] = (ts[i + k] * p[i] - ts[i] * p[i + 1]) / (ts[i + k] - ts[i]);
        return p[0];
    };

    const auto ray1 = draw_ray();
    const auto ray2 = draw_ray();
    const Real v1 = along_ray(ray1, config.levels);
    const Real v1_short = along_ray(ray1, config.levels - 1);
    const Real v2 = along_ray(ray2, config.levels);
    LimitResult r;
    r.value = static_cast<double>(v1);
    r.error = static_cast<double>(abs(v1 - v1_short) + abs(v1 - v2));
    if (!std::isfinite(r.value) || r.error > config.tolerance * (1 + std::abs(r.value)))
        throw NumericInstability("(G,M)-family limit did not converge (error " + std::to_string(r.error) + ")");
    return r;
}

std::vector<FamilyMember> gsp2_M0_family(const NuGSp& nu, const TruncParam& T, const PlaceSet& S) {
    std::vector<FamilyMember> out;
    for (auto s : all_weyl_gsp())
        out.push_back(exp_member(w_exponents(s, nu, T, S),
                                 [s](const Real& l1, const Real& l2) { return theta(s, l1, l2); }));
    return out;
}

std::vector<FamilyMember> gl3_M0_family(const NuGL3& nu, const TruncParam& T, const PlaceSet& S) {
    std::vector<FamilyMember> out;
    for (auto s : all_weyl_gl3())
        out.push_back(exp_member(w_exponents(s, nu, T, S),
                                 [s](const Real& l1, const Real& l2) { return theta(s, l1, l2); }));
    return out;
}

std::vector<FamilyMember> gsp2_M1_family(const NuGSp& nu, const TruncParam& T, const PlaceSet& S) {
    const Rational detY = nu.n13 * nu.n24 - nu.n14 * nu.n14;
    const double L = log_abs_S(detY, S, "det(Y)");
    return maximal_family(T.T1, -L - T.T1);
}

std::vector<FamilyMember> gsp2_M1_u_family(const Rational& u12, const NuGSp& nu, const TruncParam& T,
                                           const PlaceSet& S) {
    const double L = log_abs_S(u12 * u12 * nu.n24 * nu.n24, S, "u12 nu24");
    return maximal_family(T.T1, -L - T.T1);
}

std::vector<FamilyMember> gsp2_M2_family(const NuGSp& nu, const TruncParam& T, const PlaceSet& S) {
    const double n = norm_S({nu.n12, nu.n13 / 2, nu.n14}, S);
    if (n == 0) throw DomainError("(nu12, nu13/2, nu14) must be nonzero");
    return maximal_family(T.T2, -std::log(n) - T.T2);
}

std::vector<FamilyMember> gsp2_M2_u_family(const Rational& u24, const NuGSp& nu, const TruncParam& T,
                                           const PlaceSet& S) {
    const double L = log_abs_S(nu.n12 * nu.n12 * u24 / 2, S, "nu12^2 u24 / 2");
    return maximal_family(T.T2, -L - T.T2);
}

std::vector<FamilyMember> gl3_Mprime_family(const NuGL3& nu, const TruncParam& T, const PlaceSet& S) {
    const double n = norm_S({nu.n13, nu.n23}, S);
    if (n == 0) throw DomainError("(nu13, nu23) must be nonzero");
    return maximal_family(T.T2, -std::log(n) - T.T1);
}

std::vector<FamilyMember> gl3_Mprime_u_family(const Rational& u12, const NuGL3& nu, const TruncParam& T,
                                              const PlaceSet& S) {
    const double L = log_abs_S(nu.n23 * u12, S, "nu23 u12");
    return maximal_family(T.T2, -L - T.T1);
}

}  // namespace tfc
