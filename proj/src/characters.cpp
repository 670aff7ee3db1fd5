#include "tfc/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "tfc/errors.hpp"

namespace tfc {

namespace {

std::int64_t primitive_root(std::int64_t m) {
    // m is an odd prime or 9
    std::int64_t phi = 0;
    for (std::int64_t r = 1; r < m; ++r)
        if (std::gcd(r, m) == 1) ++phi;
    auto fs = factor(phi);
    for (std::int64_t g = 2; g < m; ++g) {
        if (std::gcd(g, m) != 1) continue;
        bool ok = true;
        for (auto& [q, e] : fs) {
            std::int64_t x = 1;
            for (std::int64_t i = 0; i < phi / q; ++i) x = x * g % m;
            if (x == 1) ok = false;
        }
        if (ok) return g;
    }
    throw DomainError("no primitive root");
}

// Exponent table of the order-3 character g^j -> omega^(j mod 3) modulo m.
std::vector<int> cubic_component(std::int64_t m) {
    std::vector<int> t(static_cast<std::size_t>(m), -1);
    std::int64_t g = primitive_root(m), x = 1;
    for (int j = 0; t[static_cast<std::size_t>(x)] == -1; ++j) {
        t[static_cast<std::size_t>(x)] = j % 3;
        x = x * g % m;
    }
    return t;
}

}  // namespace

bool is_fundamental_discriminant(std::int64_t D) {
    if (D == 1) return true;
    if (D == 0) return false;
    std::int64_t r = ((D % 4) + 4) % 4;
    if (r == 1) return is_squarefree(D);
    if (r == 0) {
        std::int64_t m = D / 4;
        std::int64_t rm = ((m % 4) + 4) % 4;
        return (rm == 2 || rm == 3) && is_squarefree(m);
    }
    return false;
}

std::int64_t fundamental_discriminant_of_squarefree(std::int64_t d) {
    if (d == 1 || d == 0) throw DomainError("no quadratic field for d=" + std::to_string(d));
    std::int64_t r = ((d % 4) + 4) % 4;
    return r == 1 ? d : 4 * d;
}

QuadChar::QuadChar(std::int64_t D) : D_(D) {
    if (!is_fundamental_discriminant(D))
        throw DomainError(std::to_string(D) + " is not a fundamental discriminant");
}

std::int64_t QuadChar::d() const {
    if (is_trivial()) return 1;
    return (D_ % 4 == 0) ? D_ / 4 : D_;
}

std::vector<std::int64_t> QuadChar::ramified_primes() const {
    std::vector<std::int64_t> out;
    if (is_trivial()) return out;
    for (auto& [p, e] : factor(D_)) out.push_back(p);
    return out;
}

std::string QuadChar::name() const { return is_trivial() ? "1" : "chi_" + std::to_string(D_); }

CubicChar::CubicChar(std::int64_t modulus, std::vector<int> exponents)
    : q_(modulus), exps_(std::move(exponents)) {
    if (q_ < 1 || static_cast<std::int64_t>(exps_.size()) != q_)
        throw DomainError("cubic character table size must equal the modulus");
    label_ = q_ == 1 ? "1" : "cubic_" + std::to_string(q_);
}

int CubicChar::exponent(std::int64_t n) const {
    std::int64_t r = ((n % q_) + q_) % q_;
    if (q_ == 1) return 0;
    return exps_[static_cast<std::size_t>(r)];
}

std::complex<double> CubicChar::operator()(std::int64_t n) const {
    int k = exponent(n);
    if (k < 0) return {0.0, 0.0};
    const double a = 2.0 * M_PI * k / 3.0;
    return {std::cos(a), std::sin(a)};
}

CubicChar CubicChar::inverse() const {
    std::vector<int> e = exps_;
    for (auto& k : e)
        if (k > 0) k = 3 - k;
    CubicChar c(q_, e);
    c.label_ = label_ + "^-1";
    if (label_.size() > 3 && label_.substr(label_.size() - 3) == "^-1")
        c.label_ = label_.substr(0, label_.size() - 3);
    return c;
}

std::vector<std::int64_t> CubicChar::ramified_primes() const {
    std::vector<std::int64_t> out;
    if (q_ == 1) return out;
    for (auto& [p, e] : factor(q_)) out.push_back(p);
    return out;
}

std::string CubicChar::name() const { return label_; }

QuadChar quad_char_of(const Rational& d) {
    if (d == 0) throw DomainError("quad_char_of(0)");
    Integer k = squarefree_kernel(d);
    if (k == 1) throw DomainError("quad_char_of: argument is a rational square; use QuadChar::trivial()");
    return QuadChar(fundamental_discriminant_of_squarefree(to_i64(k)));
}

bool unramified_outside(const QuadChar& chi, const PlaceSet& S) {
    for (auto p : chi.ramified_primes())
        if (!S.contains(p)) return false;
    return true;
}

bool unramified_outside(const CubicChar& chi, const PlaceSet& S) {
    for (auto p : chi.ramified_primes())
        if (!S.contains(p)) return false;
    return true;
}

int chi_S(const QuadChar& chi, const Rational& alpha, const PlaceSet& S) {
    if (!unramified_outside(chi, S))
        throw DomainError(chi.name() + " is ramified outside " + S.name());
    if (alpha == 0) throw DomainError("chi_S of zero");
    int s = 1;
    const Integer num = numerator(alpha), den = denominator(alpha);
    for (const Integer* part : {&num, &den}) {
        if (*part == 1 || *part == -1) continue;
        for (auto& [p, e] : factor(*part)) {
            std::int64_t pp = to_i64(p);
            if (S.contains(pp)) continue;
            if (e % 2 && chi(pp) == -1) s = -s;
        }
    }
    return s;
}

int chi_S_exponent(const CubicChar& chi, const Rational& alpha, const PlaceSet& S) {
    if (!unramified_outside(chi, S))
        throw DomainError(chi.name() + " is ramified outside " + S.name());
    if (alpha == 0) throw DomainError("chi_S of zero");
    int k = 0;
    const Integer num = numerator(alpha), den = denominator(alpha);
    for (const Integer* part : {&num, &den}) {
        if (*part == 1 || *part == -1) continue;
        for (auto& [p, e] : factor(*part)) {
            std::int64_t pp = to_i64(p);
            if (S.contains(pp)) continue;
            k -= valuation(alpha, pp) * chi.exponent(pp);
        }
    }
    return ((k % 3) + 3) % 3;
}

std::complex<double> chi_S(const CubicChar& chi, const Rational& alpha, const PlaceSet& S) {
    const int k = chi_S_exponent(chi, alpha, S);
    const double a = 2.0 * M_PI * k / 3.0;
    return {std::cos(a), std::sin(a)};
}

std::vector<QuadChar> enum_quad_chars(const PlaceSet& S) {
    std::vector<std::int64_t> odd;
    for (auto p : S.primes())
        if (p != 2) odd.push_back(p);
    std::vector<std::int64_t> two_parts{1};
    if (S.contains_two()) two_parts = {1, -4, 8, -8};
    std::vector<QuadChar> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << odd.size()); ++mask) {
        std::int64_t oddD = 1;
        for (std::size_t i = 0; i < odd.size(); ++i)
            if (mask >> i & 1) oddD *= (odd[i] % 4 == 1) ? odd[i] : -odd[i];
        for (auto t : two_parts) out.emplace_back(oddD * t);
    }
    return out;
}

std::vector<CubicChar> enum_cubic_chars(const PlaceSet& S) {
    std::vector<std::int64_t> mods;
    for (auto p : S.primes()) {
        if (p == 3) mods.push_back(9);
        else if (p % 3 == 1) mods.push_back(p);
    }
    std::vector<std::vector<int>> comps;
    for (auto m : mods) comps.push_back(cubic_component(m));
    std::vector<CubicChar> out;
    std::set<std::vector<int>> seen;
    // choice[i] in {0,1,2}: power of the i-th component
    std::size_t total = 1;
    for (std::size_t i = 0; i < mods.size(); ++i) total *= 3;
    for (std::size_t code = 1; code < total; ++code) {
        std::vector<int> choice(mods.size());
        std::size_t c = code;
        for (auto& x : choice) {
            x = static_cast<int>(c % 3);
            c /= 3;
        }
        if (seen.count(choice)) continue;
        std::int64_t q = 1;
        std::string label = "cubic";
        for (std::size_t i = 0; i < mods.size(); ++i)
            if (choice[i]) {
                q *= mods[i];
                label += "_" + std::to_string(mods[i]) + (choice[i] == 1 ? "a" : "b");
            }
        std::vector<int> tab(static_cast<std::size_t>(q), -1);
        for (std::int64_t n = 0; n < q; ++n) {
            if (std::gcd(n, q) != 1) continue;
            int k = 0;
            for (std::size_t i = 0; i < mods.size(); ++i)
                if (choice[i]) k += choice[i] * comps[i][static_cast<std::size_t>(n % mods[i])];
            tab[static_cast<std::size_t>(n)] = k % 3;
        }
        CubicChar chi(q, tab);
        chi.label_ = label;
        std::vector<int> inv = choice;
        for (auto& x : inv) x = (3 - x) % 3;
        CubicChar chi_inv = chi.inverse();
        std::string inv_label = "cubic";
        for (std::size_t i = 0; i < mods.size(); ++i)
            if (inv[i]) inv_label += "_" + std::to_string(mods[i]) + (inv[i] == 1 ? "a" : "b");
        chi_inv.label_ = inv_label;
        seen.insert(choice);
        seen.insert(inv);
        out.push_back(chi);
        out.push_back(chi_inv);
    }
    return out;
}

std::int64_t conductor_outside(std::int64_t d, const PlaceSet& S) {
    if (d == 0 || d == 1) return 1;
    std::int64_t D = fundamental_discriminant_of_squarefree(d);
    std::int64_t N = 1;
    for (auto& [p, e] : factor(D))
        if (!S.contains(p)) N *= p;
    return N;
}

DiscClassSet disc_classes(const PlaceSet& S, const Rational& d_S, std::int64_t X, DiscKind kind) {
    DiscClassSet out;
    out.kind = kind;
    if (kind != DiscKind::Q && !S.contains_two())
        throw DomainError("discriminant class sets require 2 in S");
    if (kind == DiscKind::QUr) {
        const auto target = sclass_labels(d_S, S);
        std::vector<std::pair<std::int64_t, std::int64_t>> found;  // (|D|, d)
        for (const auto& chi : enum_quad_chars(S)) {
            if (chi.is_trivial()) continue;
            if (sclass_labels(Rational(chi.d()), S) == target)
                found.emplace_back(chi.conductor(), chi.d());
        }
        std::sort(found.begin(), found.end());
        for (auto& [a, d] : found) out.entries.push_back(d);
        return out;
    }
    if (X <= 0) throw DomainError("discriminant class set of this kind requires a bound X");
    std::vector<LocalClass> target;
    if (kind == DiscKind::QS) target = sclass_labels(d_S, S);
    std::vector<std::pair<std::int64_t, std::int64_t>> found;
    for (std::int64_t m = 1; m <= X; ++m) {
        if (!is_squarefree(m)) continue;
        for (std::int64_t d : {m, -m}) {
            if (d == 1) continue;
            std::int64_t D = fundamental_discriminant_of_squarefree(d);
            if ((D < 0 ? -D : D) > X) continue;
            if (kind == DiscKind::QS && sclass_labels(Rational(d), S) != target) continue;
            found.emplace_back(D < 0 ? -D : D, d);
        }
    }
    std::sort(found.begin(), found.end());
    for (auto& [a, d] : found) out.entries.push_back(d);
    return out;
}

}  // namespace tfc
