#include "tfc/arith.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <boost/multiprecision/miller_rabin.hpp>

#include "tfc/errors.hpp"

namespace tfc {

namespace {

Integer abs_int(const Integer& n) { return n < 0 ? Integer(-n) : n; }

std::int64_t mod_i64(const Integer& a, std::int64_t m) {
    Integer r = a % m;
    if (r < 0) r += m;
    return static_cast<std::int64_t>(r);
}

std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

std::int64_t gcd_i64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

Integer pollard_brent(const Integer& n, unsigned seed) {
    if (n % 2 == 0) return 2;
    std::mt19937_64 rng(seed);
    for (;;) {
        Integer y = Integer(rng()) % n, c = Integer(rng()) % n, g = 1, q = 1, x, ys;
        if (c == 0) c = 1;
        const int m = 128;
        int r = 1;
        while (g == 1) {
            x = y;
            for (int i = 0; i < r; ++i) y = (y * y + c) % n;
            int k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (int i = 0; i < std::min(m, r - k); ++i) {
                    y = (y * y + c) % n;
                    q = (q * abs_int(x - y)) % n;
                }
                g = boost::multiprecision::gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = (ys * ys + c) % n;
                g = boost::multiprecision::gcd(abs_int(x - ys), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_rec(const Integer& n, std::map<Integer, int>& out, unsigned seed) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    Integer d = pollard_brent(n, seed);
    factor_rec(d, out, seed + 1);
    factor_rec(n / d, out, seed + 1);
}

// Least positive residue in the coset of u modulo k-th powers of units mod m.
std::int64_t canonical_unit(std::int64_t u, std::int64_t m, int k) {
    std::int64_t best = m;
    for (std::int64_t c = 1; c < m; ++c) {
        if (gcd_i64(c, m) != 1) continue;
        std::int64_t ck = 1;
        for (int i = 0; i < k; ++i) ck = (ck * c) % m;
        std::int64_t r = (u % m) * ck % m;
        best = std::min(best, r);
    }
    return best;
}

int unit_modulus_exponent(std::int64_t p, int k) {
    if (k == 2 && p == 2) return 3;
    if (k == 3 && p == 3) return 2;
    return 1;
}

LocalClass local_power_class(const Rational& a, Place v, int k) {
    if (a == 0) throw DomainError("local class of zero");
    LocalClass c;
    c.place = v;
    c.power = k;
    if (v.is_infinite()) {
        c.val_mod = 0;
        c.unit = (k == 2 && a < 0) ? -1 : 1;
        return c;
    }
    const std::int64_t p = v.p();
    // a ~ num * den^(k-1) modulo k-th powers
    Integer n = numerator(a), d = denominator(a);
    Integer x = n;
    for (int i = 1; i < k; ++i) x *= d;
    int val = valuation(x, p);
    Integer u = x;
    for (int i = 0; i < val; ++i) u /= p;
    c.val_mod = ((val % k) + k) % k;
    const std::int64_t m = ipow(p, unit_modulus_exponent(p, k));
    std::int64_t ur = mod_i64(u, m);
    if (k == 2 && p != 2) {
        c.unit = kronecker(static_cast<std::int64_t>(ur), p) == 1 ? 1 : canonical_unit(ur, m, k);
    } else {
        c.unit = canonical_unit(ur, m, k);
    }
    return c;
}

template <class Rep>
std::vector<Rep> power_class_reps(const PlaceSet& S, std::int64_t bound, int k) {
    std::size_t total = 1;
    for (const auto& v : S.places()) total *= static_cast<std::size_t>(local_class_count(v, k));
    std::vector<Rep> reps;
    std::set<std::vector<LocalClass>> seen;
    for (std::int64_t m = 1; m <= bound && reps.size() < total; ++m) {
        for (std::int64_t sgn : {1, -1}) {
            const std::int64_t val = sgn * m;
            if (k == 2 && !is_squarefree(m)) continue;
            if (k == 3) {
                bool cube_free = true;
                for (auto& [q, e] : factor(m))
                    if (e >= 3) cube_free = false;
                if (!cube_free) continue;
            }
            auto labels = k == 2 ? sclass_labels(Rational(val), S) : cclass_labels(Rational(val), S);
            if (seen.insert(labels).second) reps.push_back(Rep{Integer(val), labels});
        }
    }
    if (reps.size() < total) {
        std::ostringstream os;
        os << "class representative scan exhausted bound " << bound << " for S=" << S.name()
           << " (" << reps.size() << " of " << total << " classes found)";
        throw DomainError(os.str());
    }
    return reps;
}

}  // namespace

Place Place::prime(std::int64_t p) {
    if (!is_prime(p)) throw DomainError("place must be a prime, got " + std::to_string(p));
    return Place(p);
}

std::string Place::name() const { return is_infinite() ? "inf" : std::to_string(p_); }

PlaceSet::PlaceSet(std::vector<std::int64_t> primes) : primes_(std::move(primes)) {
    for (auto p : primes_)
        if (!is_prime(p)) throw DomainError("S must consist of primes, got " + std::to_string(p));
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
}

PlaceSet PlaceSet::parse(const std::string& text) {
    std::vector<std::int64_t> ps;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.empty() || item == "inf" || item == "oo") continue;
        std::size_t pos = 0;
        long long p = 0;
        try {
            p = std::stoll(item, &pos);
        } catch (const std::exception&) {
            throw DomainError("cannot parse place '" + item + "'");
        }
        if (pos != item.size()) throw DomainError("cannot parse place '" + item + "'");
        ps.push_back(p);
    }
    return PlaceSet(ps);
}

std::vector<Place> PlaceSet::places() const {
    std::vector<Place> out{Place::infinity()};
    for (auto p : primes_) out.push_back(Place::prime(p));
    return out;
}

bool PlaceSet::contains(std::int64_t p) const {
    return std::binary_search(primes_.begin(), primes_.end(), p);
}

std::string PlaceSet::name() const {
    std::string s = "{inf";
    for (auto p : primes_) s += "," + std::to_string(p);
    return s + "}";
}

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    static const int small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (int q : small) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::mt19937 gen(12345);
    return boost::multiprecision::miller_rabin_test(n, 25, gen);
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    if (n < (std::int64_t(1) << 40)) {
        for (std::int64_t d = 3; d * d <= n; d += 2)
            if (n % d == 0) return false;
        return true;
    }
    return is_prime(Integer(n));
}

std::vector<std::pair<Integer, int>> factor(const Integer& n0) {
    if (n0 == 0) throw DomainError("factor(0)");
    Integer n = abs_int(n0);
    std::map<Integer, int> out;
    for (std::int64_t d = 2; d < 10000 && Integer(d) * d <= n; ++d) {
        while (n % d == 0) {
            out[Integer(d)] += 1;
            n /= d;
        }
    }
    if (n > 1) factor_rec(n, out, 1);
    return {out.begin(), out.end()};
}

std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n) {
    if (n == 0) throw DomainError("factor(0)");
    if (n < 0) n = -n;
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e) out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

int valuation(const Integer& n, std::int64_t p) {
    if (n == 0) throw DomainError("valuation of zero");
    Integer m = abs_int(n);
    int v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

int valuation(const Rational& a, std::int64_t p) {
    return valuation(numerator(a), p) - valuation(denominator(a), p);
}

Integer squarefree_part(const Integer& n) {
    if (n == 0) throw DomainError("squarefree part of zero");
    Integer r = n < 0 ? -1 : 1;
    for (auto& [q, e] : factor(n))
        if (e % 2) r *= q;
    return r;
}

Integer squarefree_kernel(const Rational& a) {
    if (a == 0) throw DomainError("square class of zero");
    return squarefree_part(numerator(a) * denominator(a));
}

Integer cubefree_kernel(const Rational& a) {
    if (a == 0) throw DomainError("cube class of zero");
    Integer x = numerator(a) * denominator(a) * denominator(a);
    Integer r = x < 0 ? -1 : 1;
    for (auto& [q, e] : factor(x))
        for (int i = 0; i < e % 3; ++i) r *= q;
    return r;
}

bool is_squarefree(const Integer& n) {
    if (n == 0) return false;
    for (auto& [q, e] : factor(n))
        if (e > 1) return false;
    return true;
}

bool is_squarefree(std::int64_t n) {
    if (n == 0) return false;
    if (n < 0) n = -n;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % (d * d) == 0) return false;
        if (n % d == 0) n /= d;
    }
    return true;
}

namespace {

const int kTab2[8] = {0, 1, 0, -1, 0, -1, 0, 1};

template <class T>
int jacobi_core(T a, T n) {
    // n odd positive, 0 <= a < n
    int k = 1;
    while (a != 0) {
        int v = 0;
        while (a % 2 == 0) {
            a /= 2;
            ++v;
        }
        if (v % 2) k *= kTab2[static_cast<int>(n % 8)];
        if (a % 4 == 3 && n % 4 == 3) k = -k;
        T r = a;
        a = n % r;
        n = r;
    }
    return n == 1 ? k : 0;
}

template <class T>
int kronecker_impl(T a, T n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int k = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) k = -k;
    }
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v > 0) {
        if (a % 2 == 0) return 0;
        if (v % 2) {
            T a8 = a % 8;
            if (a8 < 0) a8 += 8;
            k *= kTab2[static_cast<int>(a8)];
        }
    }
    T am = a % n;
    if (am < 0) am += n;
    return k * jacobi_core<T>(am, n);
}

}  // namespace

int kronecker(const Integer& a, const Integer& n) { return kronecker_impl<Integer>(a, n); }

int kronecker(std::int64_t a, std::int64_t n) { return kronecker_impl<std::int64_t>(a, n); }

int hilbert(const Rational& a, const Rational& b, Place v) {
    if (a == 0 || b == 0) throw DomainError("Hilbert symbol of zero");
    Integer x = squarefree_kernel(a), y = squarefree_kernel(b);
    if (v.is_infinite()) return (x < 0 && y < 0) ? -1 : 1;
    const std::int64_t p = v.p();
    int al = valuation(x, p), be = valuation(y, p);
    Integer u = x, w = y;
    if (al) u /= p;
    if (be) w /= p;
    if (p != 2) {
        int s = 1;
        if ((al * be) % 2 == 1 && p % 4 == 3) s = -s;
        if (be % 2) s *= kronecker(u, Integer(p));
        if (al % 2) s *= kronecker(w, Integer(p));
        return s;
    }
    const std::int64_t u8 = mod_i64(u, 8), w8 = mod_i64(w, 8);
    auto eps = [](std::int64_t t) { return static_cast<int>(((t - 1) / 2) % 2); };
    auto omega = [](std::int64_t t) { return static_cast<int>(((t * t - 1) / 8) % 2); };
    int e = eps(u8) * eps(w8) + al * omega(w8) + be * omega(u8);
    return (e % 2) ? -1 : 1;
}

std::string LocalClass::label() const {
    std::ostringstream os;
    os << place.name() << ":";
    if (place.is_infinite()) {
        os << (unit < 0 ? "-" : "+");
    } else {
        os << "v" << val_mod << "u" << unit;
    }
    return os.str();
}

LocalClass local_square_class(const Rational& a, Place v) { return local_power_class(a, v, 2); }
LocalClass local_cube_class(const Rational& a, Place v) { return local_power_class(a, v, 3); }

bool is_square_at(const Rational& a, Place v) {
    auto c = local_square_class(a, v);
    return c.val_mod == 0 && c.unit == 1;
}

bool is_cube_at(const Rational& a, Place v) {
    auto c = local_cube_class(a, v);
    return c.val_mod == 0 && c.unit == 1;
}

std::vector<LocalClass> local_class_set(Place v, int power) {
    std::vector<LocalClass> out;
    if (v.is_infinite()) {
        LocalClass c;
        c.place = v;
        c.power = power;
        out.push_back(c);
        if (power == 2) {
            c.unit = -1;
            out.push_back(c);
        }
        return out;
    }
    const std::int64_t p = v.p();
    const std::int64_t m = ipow(p, unit_modulus_exponent(p, power));
    std::set<std::int64_t> units;
    for (std::int64_t r = 1; r < m; ++r) {
        if (gcd_i64(r, m) != 1) continue;
        units.insert(local_power_class(Rational(r), v, power).unit);
    }
    for (int val = 0; val < power; ++val)
        for (auto u : units) {
            LocalClass c;
            c.place = v;
            c.power = power;
            c.val_mod = val;
            c.unit = u;
            out.push_back(c);
        }
    return out;
}

int local_class_count(Place v, int power) { return static_cast<int>(local_class_set(v, power).size()); }

std::vector<LocalClass> sclass_labels(const Rational& a, const PlaceSet& S) {
    std::vector<LocalClass> out;
    for (const auto& v : S.places()) out.push_back(local_square_class(a, v));
    return out;
}

std::vector<LocalClass> cclass_labels(const Rational& a, const PlaceSet& S) {
    std::vector<LocalClass> out;
    for (const auto& v : S.places()) out.push_back(local_cube_class(a, v));
    return out;
}

bool same_sclass(const Rational& a, const Rational& b, const PlaceSet& S) {
    return sclass_labels(a, S) == sclass_labels(b, S);
}

bool same_cclass(const Rational& a, const Rational& b, const PlaceSet& S) {
    return cclass_labels(a, S) == cclass_labels(b, S);
}

std::vector<SquareClassRep> sclass_reps(const PlaceSet& S, std::int64_t scan_bound) {
    return power_class_reps<SquareClassRep>(S, scan_bound, 2);
}

std::vector<CubeClassRep> cclass_reps(const PlaceSet& S, std::int64_t scan_bound) {
    return power_class_reps<CubeClassRep>(S, scan_bound, 3);
}

std::size_t sclass_index(const Rational& a, const std::vector<SquareClassRep>& reps,
                         const PlaceSet& S) {
    auto labels = sclass_labels(a, S);
    for (std::size_t i = 0; i < reps.size(); ++i)
        if (reps[i].local_labels == labels) return i;
    throw DomainError("square class not found among representatives");
}

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
    std::vector<std::int64_t> out;
    if (n < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
    for (std::int64_t i = 2; i <= n; ++i) {
        if (composite[static_cast<std::size_t>(i)]) continue;
        out.push_back(i);
        for (std::int64_t j = i * i; j <= n; j += i) composite[static_cast<std::size_t>(j)] = true;
    }
    return out;
}

std::int64_t to_i64(const Integer& n) {
    if (n > Integer(INT64_MAX) || n < Integer(INT64_MIN)) throw DomainError("integer out of 64-bit range");
    return static_cast<std::int64_t>(n);
}

}  // namespace tfc
