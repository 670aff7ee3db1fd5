#include "tfc/lfun.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <tuple>

#include <boost/math/special_functions/expint.hpp>

#include "tfc/errors.hpp"

namespace tfc {

namespace {

int g_working_digits = 30;
constexpr int kGuardDigits = 10;

// B_{2j} as exact rationals, j = 0, 1, ...
Rational bernoulli_b2n_exact(int j) {
    static std::mutex mu;
    static std::vector<Rational> b2n;
    std::lock_guard<std::mutex> lock(mu);
    if (static_cast<int>(b2n.size()) <= j) {
        // Akiyama-Tanigawa gives B_n (with B_1 = +1/2); only even indices are used.
        const int n_max = 2 * j + 2;
        std::vector<Rational> a(static_cast<std::size_t>(n_max) + 1);
        std::vector<Rational> B(static_cast<std::size_t>(n_max) + 1);
        for (int m = 0; m <= n_max; ++m) {
            a[static_cast<std::size_t>(m)] = Rational(1, m + 1);
            for (int k = m; k >= 1; --k)
                a[static_cast<std::size_t>(k - 1)] =
                    Rational(k) * (a[static_cast<std::size_t>(k - 1)] - a[static_cast<std::size_t>(k)]);
            B[static_cast<std::size_t>(m)] = a[0];
        }
        b2n.clear();
        for (int i = 0; 2 * i <= n_max; ++i) b2n.push_back(B[static_cast<std::size_t>(2 * i)]);
    }
    return b2n[static_cast<std::size_t>(j)];
}

Real to_real(const Rational& q) {
    return Real(Real(numerator(q).str()) / Real(denominator(q).str()));
}

Real tolerance() {
    return pow(Real(10), -(PrecisionScope::current_digits() + kGuardDigits / 2));
}

// (e^{-hL} - 1)/h and its h-derivative, stable near h = 0.
RealDual expm1_ratio(const Real& h, const Real& L) {
    const Real x = h * L;
    if (abs(x) < Real(0.5)) {
        // sum_{n>=1} (-L)^n h^{n-1} / n!,  derivative sum_{n>=2} (n-1)(-L)^n h^{n-2} / n!
        Real v = 0, d = 0;
        Real term = -L;  // (-L)^n h^{n-1} / n! at n = 1
        const Real tol = tolerance();
        for (int n = 1; n < 2000; ++n) {
            v += term;
            if (n >= 2) d += (n - 1) * term / h;
            Real next = term * (-L) * h / (n + 1);
            if (abs(next) < tol * (1 + abs(v)) && n > 2) {
                // derivative series converges at the same rate
                break;
            }
            term = next;
        }
        if (h == 0) {
            // derivative at h = 0 is L^2/2
            d = L * L / 2;
        }
        return {v, d};
    }
    const Real e = exp(-x);
    const Real v = (e - 1) / h;
    const Real d = (-L * e * h - (e - 1)) / (h * h);
    return {v, d};
}

struct EMParams {
    int N;
    int M;
};

EMParams em_params(const Real& s) {
    const int D = PrecisionScope::current_digits() + kGuardDigits;
    const double sd = static_cast<double>(s);
    int N = static_cast<int>(std::ceil(1.2 * D + std::abs(sd))) + 10;
    return {N, 4 * D + 40};
}

// Quadratic character values chi(p) and removed Euler factor data.
template <class F>
Real euler_factor_product(const Real& s, const PlaceSet& S, F chi_of_p, Real* log_deriv) {
    Real prod = 1;
    Real ld = 0;
    for (auto p : S.primes()) {
        const int c = chi_of_p(p);
        if (c == 0) continue;
        const Real lp = log(Real(p));
        const Real ps = exp(-s * lp);
        const Real f = 1 - c * ps;
        prod *= f;
        ld += c * lp * ps / f;
    }
    if (log_deriv) *log_deriv = ld;
    return prod;
}

// q^{-s} sum_a w(a) R(s, a/q) and its derivative, w real weights summing to zero
// (or the trivial character with q = 1).
RealDual hurwitz_combination(const Real& s, std::int64_t q, const std::vector<Real>& weights) {
    Real v = 0, d = 0;
    for (std::int64_t a = 1; a <= q; ++a) {
        const Real& w = weights[static_cast<std::size_t>(a - 1)];
        if (w == 0) continue;
        RealDual h = hurwitz_regular(s, Real(a) / Real(q));
        v += w * h.v;
        d += w * h.d;
    }
    const Real lq = log(Real(q));
    const Real qs = exp(-s * lq);
    return {qs * v, qs * (d - lq * v)};
}

RealDual primitive_L_quad(const Real& s, const QuadChar& chi) {
    if (chi.is_trivial()) throw DomainError("primitive_L_quad: trivial character");
    const std::int64_t q = chi.conductor();
    std::vector<Real> w(static_cast<std::size_t>(q));
    for (std::int64_t a = 1; a <= q; ++a) w[static_cast<std::size_t>(a - 1)] = chi(a);
    return hurwitz_combination(s, q, w);
}

void primitive_L_cubic(const Real& s, const CubicChar& chi, RealDual& re, RealDual& im) {
    const std::int64_t q = chi.modulus();
    std::vector<Real> wr(static_cast<std::size_t>(q)), wi(static_cast<std::size_t>(q));
    const Real h3 = sqrt(Real(3)) / 2;
    for (std::int64_t a = 1; a <= q; ++a) {
        const int k = chi.exponent(a);
        auto i = static_cast<std::size_t>(a - 1);
        if (k < 0) {
            wr[i] = 0;
            wi[i] = 0;
        } else if (k == 0) {
            wr[i] = 1;
            wi[i] = 0;
        } else {
            wr[i] = Real(-0.5);
            wi[i] = k == 1 ? h3 : Real(-h3);
        }
    }
    re = hurwitz_combination(s, q, wr);
    im = hurwitz_combination(s, q, wi);
}

}  // namespace

PrecisionScope::PrecisionScope(int digits)
    : previous_(Real::default_precision()), previous_digits_(g_working_digits) {
    if (digits < 15) throw DomainError("working precision must be at least 15 digits");
    g_working_digits = digits;
    Real::default_precision(static_cast<unsigned>(digits + kGuardDigits));
}

PrecisionScope::~PrecisionScope() {
    g_working_digits = previous_digits_;
    Real::default_precision(previous_);
}

int PrecisionScope::current_digits() { return g_working_digits; }

RealDual hurwitz_regular(const Real& s, const Real& a) {
    if (a <= 0) throw DomainError("Hurwitz zeta requires a > 0");
    const EMParams prm = em_params(s);
    Real v = 0, d = 0;
    for (int k = 0; k < prm.N; ++k) {
        const Real x = k + a;
        const Real lx = log(x);
        const Real t = exp(-s * lx);
        v += t;
        d -= lx * t;
    }
    const Real x = prm.N + a;
    const Real lx = log(x);
    const Real h = s - 1;
    // (x^{1-s} - 1)/(s-1)
    RealDual er = expm1_ratio(h, lx);
    v += er.v;
    d += er.d;
    const Real xs = exp(-s * lx);
    v += xs / 2;
    d -= lx * xs / 2;
    // Bernoulli tail: B_{2j}/(2j)! (s)_{2j-1} x^{-s-2j+1}
    Real P = s, dP = 1;          // rising factorial (s)_{2j-1} and derivative
    Real fact = 2;               // (2j)!
    Real xpow = xs / x;          // x^{-s-1}
    const Real x2 = x * x;
    const Real tol = tolerance();
    bool converged = false;
    for (int j = 1; j <= prm.M; ++j) {
        const Real c = to_real(bernoulli_b2n_exact(j)) / fact;
        const Real tv = c * P * xpow;
        const Real td = c * (dP - P * lx) * xpow;
        v += tv;
        d += td;
        if (abs(tv) < tol && abs(td) < tol) {
            converged = true;
            break;
        }
        // advance to j+1: multiply by (s+2j-1)(s+2j)
        const Real f1 = s + 2 * j - 1, f2 = s + 2 * j;
        dP = dP * f1 * f2 + P * (f1 + f2);
        P = P * f1 * f2;
        fact *= (2 * j + 1) * (2 * j + 2);
        xpow /= x2;
    }
    if (!converged)
        throw NumericInstability("Euler-Maclaurin tail did not reach the working precision");
    return {v, d};
}

RealDual hurwitz_zeta(const Real& s, const Real& a) {
    if (s == 1) throw DomainError("Hurwitz zeta has a pole at s = 1");
    RealDual r = hurwitz_regular(s, a);
    const Real h = s - 1;
    return {r.v + 1 / h, r.d - 1 / (h * h)};
}

Real stieltjes_gamma0() { return hurwitz_regular(Real(1), Real(1)).v; }

Real stieltjes_gamma1() { return -hurwitz_regular(Real(1), Real(1)).d; }

Real residue_cFS(const PlaceSet& S) {
    Real r = 1;
    for (auto p : S.primes()) r *= 1 - Real(1) / p;
    return r;
}

Real zetaS(const Real& s, const PlaceSet& S) {
    if (s == 1) throw DomainError("zeta^S has a pole at s = 1; use laurent_at_1");
    const Real z = hurwitz_zeta(s, Real(1)).v;
    return z * euler_factor_product(s, S, [](std::int64_t) { return 1; }, nullptr);
}

Real LS(const Real& s, const QuadChar& chi, const PlaceSet& S) {
    if (!unramified_outside(chi, S)) throw DomainError(chi.name() + " is ramified outside " + S.name());
    if (chi.is_trivial()) return zetaS(s, S);
    const RealDual L = primitive_L_quad(s, chi);
    return L.v * euler_factor_product(s, S, [&](std::int64_t p) { return chi(p); }, nullptr);
}

ComplexR LS(const Real& s, const CubicChar& chi, const PlaceSet& S) {
    if (!unramified_outside(chi, S)) throw DomainError(chi.name() + " is ramified outside " + S.name());
    if (chi.is_trivial()) return {zetaS(s, S), Real(0)};
    RealDual re, im;
    primitive_L_cubic(s, chi, re, im);
    // Euler factors 1 - chi(p) p^{-s} are complex.
    Real pr = 1, pi = 0;
    for (auto p : S.primes()) {
        const int k = chi.exponent(p);
        if (k < 0) continue;
        const Real ps = exp(-s * log(Real(p)));
        Real cr = 1, ci = 0;
        if (k == 1 || k == 2) {
            cr = Real(-0.5);
            ci = (k == 1 ? 1 : -1) * sqrt(Real(3)) / 2;
        }
        const Real fr = 1 - cr * ps, fi = -ci * ps;
        const Real nr = pr * fr - pi * fi, ni = pr * fi + pi * fr;
        pr = nr;
        pi = ni;
    }
    return {re.v * pr - im.v * pi, re.v * pi + im.v * pr};
}

Real deriv_LS(const Real& s, const QuadChar& chi, const PlaceSet& S) {
    if (!unramified_outside(chi, S)) throw DomainError(chi.name() + " is ramified outside " + S.name());
    if (chi.is_trivial()) {
        if (s == 1) throw DomainError("zeta^S has a pole at s = 1");
        const RealDual z = hurwitz_zeta(s, Real(1));
        Real ld;
        const Real E = euler_factor_product(s, S, [](std::int64_t) { return 1; }, &ld);
        return z.d * E + z.v * E * ld;
    }
    const RealDual L = primitive_L_quad(s, chi);
    Real ld;
    const Real E = euler_factor_product(s, S, [&](std::int64_t p) { return chi(p); }, &ld);
    return L.d * E + L.v * E * ld;
}

ComplexR deriv_LS(const Real& s, const CubicChar& chi, const PlaceSet& S) {
    if (!unramified_outside(chi, S)) throw DomainError(chi.name() + " is ramified outside " + S.name());
    if (chi.is_trivial()) return {deriv_LS(s, QuadChar::trivial(), S), Real(0)};
    RealDual re, im;
    primitive_L_cubic(s, chi, re, im);
    // E(s) = prod (1 - chi(p) p^-s), E'(s) = E(s) * sum chi(p) log p p^-s / (1 - chi(p) p^-s)
    Real er = 1, ei = 0, sr = 0, si = 0;
    for (auto p : S.primes()) {
        const int k = chi.exponent(p);
        if (k < 0) continue;
        const Real lp = log(Real(p));
        const Real ps = exp(-s * lp);
        Real cr = 1, ci = 0;
        if (k != 0) {
            cr = Real(-0.5);
            ci = (k == 1 ? 1 : -1) * sqrt(Real(3)) / 2;
        }
        const Real fr = 1 - cr * ps, fi = -ci * ps;
        // term = c lp ps / f
        const Real nr = cr * lp * ps, ni = ci * lp * ps;
        const Real den = fr * fr + fi * fi;
        sr += (nr * fr + ni * fi) / den;
        si += (ni * fr - nr * fi) / den;
        const Real tr = er * fr - ei * fi, ti = er * fi + ei * fr;
        er = tr;
        ei = ti;
    }
    // E' = E * sum
    const Real dr = er * sr - ei * si, di = er * si + ei * sr;
    // (L E)' = L' E + L E'
    ComplexR out;
    out.re = re.d * er - im.d * ei + re.v * dr - im.v * di;
    out.im = re.d * ei + im.d * er + re.v * di + im.v * dr;
    return out;
}

LaurentData laurent_at_1(const QuadChar& chi, const PlaceSet& S) {
    if (!unramified_outside(chi, S)) throw DomainError(chi.name() + " is ramified outside " + S.name());
    LaurentData out;
    if (!chi.is_trivial()) {
        out.residue = 0;
        out.c0 = LS(Real(1), chi, S);
        out.c1 = deriv_LS(Real(1), chi, S);
        return out;
    }
    // zeta(1+h) = 1/h + g0 - g1 h + ...; f(1+h) = prod (1 - p^{-1} e^{-h log p}) = f0 + f1 h + f2 h^2
    const RealDual r = hurwitz_regular(Real(1), Real(1));
    const Real g0 = r.v, g1 = -r.d;
    Real f0 = 1, f1 = 0, f2 = 0;
    for (auto p : S.primes()) {
        const Real lp = log(Real(p));
        const Real a0 = 1 - Real(1) / p, a1 = lp / p, a2 = -lp * lp / (2 * Real(p));
        const Real n0 = f0 * a0, n1 = f0 * a1 + f1 * a0, n2 = f0 * a2 + f1 * a1 + f2 * a0;
        f0 = n0;
        f1 = n1;
        f2 = n2;
    }
    out.residue = f0;
    out.c0 = g0 * f0 + f1;
    out.c1 = -g1 * f0 + g0 * f1 + f2;
    return out;
}

ComplexLaurentData laurent_at_1(const CubicChar& chi, const PlaceSet& S) {
    if (chi.is_trivial()) throw DomainError("use the quadratic overload for the trivial character");
    return {LS(Real(1), chi, S), deriv_LS(Real(1), chi, S)};
}

ClassGroupData class_group_data(std::int64_t D) {
    if (D == 1 || !is_fundamental_discriminant(D)) throw DomainError("class group data requires a fundamental discriminant");
    ClassGroupData out;
    out.D = D;
    if (D < 0) {
        const std::int64_t AD = -D;
        std::int64_t h = 0;
        for (std::int64_t a = 1; 3 * a * a <= AD; ++a) {
            for (std::int64_t b = -a + 1; b <= a; ++b) {
                if (((b - D) % 2) != 0) continue;
                const std::int64_t num = b * b - D;
                if (num % (4 * a) != 0) continue;
                const std::int64_t c = num / (4 * a);
                if (c < a) continue;
                if (a == c && b < 0) continue;
                ++h;
            }
        }
        out.h = h;
        out.w = D == -3 ? 6 : (D == -4 ? 4 : 2);
        return out;
    }
    // Narrow class number: cycles of reduced indefinite forms under rho.
    auto less_sqrt = [D](std::int64_t t) { return t < 0 || t * t < D; };  // t < sqrt(D)
    auto is_reduced = [&](std::int64_t a, std::int64_t b) {
        const std::int64_t A = a < 0 ? -a : a;
        // |sqrt(D) - 2|a|| < b < sqrt(D)
        if (b <= 0 || !less_sqrt(b)) return false;
        const std::int64_t lo = 2 * A - b;  // need lo < sqrt(D)
        const std::int64_t hi = b + 2 * A;  // need sqrt(D) < hi
        return less_sqrt(lo) && hi * hi > D;
    };
    std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> forms;
    for (std::int64_t b = 1; less_sqrt(b); ++b) {
        if (((b - D) % 2) != 0) continue;
        const std::int64_t ac = (b * b - D) / 4;  // negative
        const std::int64_t m = -ac;
        for (std::int64_t a = 1; less_sqrt(a) && a <= m; ++a) {
            if (m % a) continue;
            for (std::int64_t sa : {a, -a}) {
                const std::int64_t c = ac / sa;
                if (is_reduced(sa, b)) forms.emplace(sa, b, c);
            }
        }
    }
    auto rho = [&](std::int64_t a, std::int64_t b, std::int64_t c) {
        const std::int64_t C = c < 0 ? -c : c;
        const std::int64_t m2 = 2 * C;
        std::int64_t nb;
        if (C * C > D) {
            nb = ((-b) % m2 + m2) % m2;
            if (nb > C) nb -= m2;
        } else {
            std::int64_t r = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(D))));
            while (r * r >= D) --r;
            while ((r + 1) * (r + 1) < D) ++r;
            // largest nb <= r with nb == -b mod 2C
            const std::int64_t t = ((r + b) % m2 + m2) % m2;
            nb = r - t;
        }
        const std::int64_t nc = (nb * nb - D) / (4 * c);
        (void)a;
        return std::make_tuple(c, nb, nc);
    };
    std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> seen;
    std::int64_t cycles = 0;
    for (const auto& f : forms) {
        if (seen.count(f)) continue;
        ++cycles;
        auto g = f;
        for (std::size_t guard = 0; guard <= forms.size() + 1; ++guard) {
            seen.insert(g);
            g = rho(std::get<0>(g), std::get<1>(g), std::get<2>(g));
            if (g == f) break;
            if (!forms.count(g)) throw NumericInstability("reduction cycle left the reduced set");
        }
    }
    out.h = cycles;
    // Fundamental unit via the continued fraction period of the maximal order generator.
    std::int64_t Dn, P0, Q0;
    if (D % 4 == 1) {
        // (b + sqrt D)/2 with b the largest odd integer below sqrt D is reduced
        Dn = D;
        std::int64_t b = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(D))));
        while (b * b > D) --b;
        while ((b + 1) * (b + 1) < D) ++b;
        if (b % 2 == 0) --b;
        P0 = b;
        Q0 = 2;
    } else {
        Dn = D / 4;  // a0 + sqrt(m) is reduced
        std::int64_t a0 = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(Dn))));
        while (a0 * a0 > Dn) --a0;
        while ((a0 + 1) * (a0 + 1) <= Dn) ++a0;
        P0 = a0;
        Q0 = 1;
    }
    const double sq = std::sqrt(static_cast<double>(Dn));
    std::int64_t P = P0, Q = Q0;
    double log_eps = 0.0;
    int period = 0;
    do {
        const double x = (static_cast<double>(P) + sq) / static_cast<double>(Q);
        log_eps += std::log(x);
        const std::int64_t a = static_cast<std::int64_t>(std::floor(x));
        const std::int64_t Pn = a * Q - P;
        const std::int64_t Qn = (Dn - Pn * Pn) / Q;
        P = Pn;
        Q = Qn;
        ++period;
    } while (!(P == P0 && Q == Q0) && period < 10000000);
    out.unit_norm_minus_one = (period % 2 == 1);
    out.log_unit = out.unit_norm_minus_one ? 2 * log_eps : log_eps;
    return out;
}

std::int64_t class_number(std::int64_t D) {
    const ClassGroupData g = class_group_data(D);
    if (D < 0) return g.h;
    return g.unit_norm_minus_one ? g.h : g.h / 2;
}

double regulator(std::int64_t D) {
    if (D <= 0) throw DomainError("regulator requires D > 0");
    const ClassGroupData g = class_group_data(D);
    return g.unit_norm_minus_one ? g.log_unit / 2 : g.log_unit;
}

double L1_class_number_formula(std::int64_t D) {
    const ClassGroupData g = class_group_data(D);
    if (D < 0) return 2.0 * M_PI * static_cast<double>(g.h) / (g.w * std::sqrt(static_cast<double>(-D)));
    return static_cast<double>(g.h) * g.log_unit / std::sqrt(static_cast<double>(D));
}

double L1_smoothed_sum(std::int64_t D) {
    if (D == 1 || !is_fundamental_discriminant(D)) throw DomainError("smoothed sum requires a fundamental discriminant");
    const double q = static_cast<double>(D < 0 ? -D : D);
    const double c = std::sqrt(M_PI / q);
    const std::int64_t nmax = static_cast<std::int64_t>(std::ceil(std::sqrt(q * 45.0 / M_PI))) + 2;
    double sum = 0.0;
    for (std::int64_t n = 1; n <= nmax; ++n) {
        const int x = kronecker(D, n);
        if (x == 0) continue;
        const double nn = static_cast<double>(n);
        double term;
        if (D > 0) {
            term = std::erfc(nn * c) / nn + boost::math::expint(1, M_PI * nn * nn / q) / std::sqrt(q);
        } else {
            term = std::exp(-M_PI * nn * nn / q) / nn + (M_PI / std::sqrt(q)) * std::erfc(nn * c);
        }
        sum += x * term;
    }
    return sum;
}

}  // namespace tfc
