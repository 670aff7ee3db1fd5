#include "tfc/oracles.hpp"

#include <cmath>
#include <map>
#include <vector>

#include "tfc/errors.hpp"

namespace tfc::oracle {

namespace {

std::int64_t ipow(std::int64_t p, int k) {
    std::int64_t r = 1;
    while (k-- > 0) r *= p;
    return r;
}

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

// Removes even powers of p.
std::int64_t strip_squares(std::int64_t a, std::int64_t p) {
    while (a % (p * p) == 0) a /= p * p;
    return a;
}

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
    std::int64_t r = 1;
    b = mod(b, m);
    while (e > 0) {
        if (e & 1) r = static_cast<std::int64_t>(static_cast<__int128>(r) * b % m);
        b = static_cast<std::int64_t>(static_cast<__int128>(b) * b % m);
        e >>= 1;
    }
    return r;
}

// chi_D(p) at a prime: Euler's criterion for odd p, the residue of D mod 8 at p = 2.
int chi_at_prime(std::int64_t D, std::int64_t p) {
    if (D % p == 0) return 0;
    if (p == 2) return (mod(D, 8) == 1 || mod(D, 8) == 7) ? 1 : -1;
    return powmod(D, (p - 1) / 2, p) == 1 ? 1 : -1;
}

}  // namespace

int hilbert_bruteforce(std::int64_t a, std::int64_t b, std::int64_t p) {
    if (a == 0 || b == 0) throw DomainError("Hilbert symbol of zero");
    if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
    a = strip_squares(a, p);
    b = strip_squares(b, p);
    const std::int64_t m = ipow(p, p == 2 ? 6 : 3);
    const std::int64_t am = mod(a, m), bm = mod(b, m);
    std::vector<char> sq(static_cast<std::size_t>(m), 0), unit_sq(static_cast<std::size_t>(m), 0);
    for (std::int64_t z = 0; z < m; ++z) {
        const auto s = static_cast<std::size_t>(z * z % m);
        sq[s] = 1;
        if (z % p != 0) unit_sq[s] = 1;
    }
    for (std::int64_t x = 0; x < m; ++x)
        for (std::int64_t y = 0; y < m; ++y) {
            const auto v = static_cast<std::size_t>((am * (x * x % m) + bm * (y * y % m)) % m);
            const bool primitive_xy = x % p != 0 || y % p != 0;
            if (primitive_xy ? sq[v] : unit_sq[v]) return 1;
        }
    return -1;
}

int local_class_count_bruteforce(std::int64_t p, int k) {
    if (p == 0) return k % 2 == 0 ? 2 : 1;
    // units modulo p^m with m large enough that k-th powers are detected
    const int e = (p == 2 && k == 2) ? 3 : (p == 3 && k == 3) ? 2 : 1;
    const std::int64_t m = ipow(p, e);
    std::vector<char> power(static_cast<std::size_t>(m), 0);
    std::int64_t units = 0, powers = 0;
    for (std::int64_t u = 1; u < m; ++u) {
        if (u % p == 0) continue;
        ++units;
        std::int64_t v = 1;
        for (int i = 0; i < k; ++i) v = v * u % m;
        if (!power[static_cast<std::size_t>(v)]) {
            power[static_cast<std::size_t>(v)] = 1;
            ++powers;
        }
    }
    return static_cast<int>(k * (units / powers));
}

std::set<LocalInvariant> realizable_invariants_bruteforce(Place v, int height) {
    std::set<LocalInvariant> out;
    std::map<std::pair<std::int64_t, std::int64_t>, int> memo;
    auto symbol = [&](std::int64_t a, std::int64_t b) {
        auto key = std::minmax(a, b);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        const int h = hilbert_bruteforce(a, b, v.p());
        memo.emplace(key, h);
        return h;
    };
    // Reduce entries to p-squarefree representatives modulo a high power to share memo entries.
    auto reduce = [&](std::int64_t a) {
        if (v.is_infinite()) return a < 0 ? std::int64_t{-1} : std::int64_t{1};
        const std::int64_t p = v.p();
        a = strip_squares(a, p);
        int val = 0;
        while (a % p == 0) {
            a /= p;
            ++val;
        }
        const std::int64_t m = p == 2 ? 8 : p;
        return (val ? p : 1) * mod(a, m);
    };
    for (int a = -height; a <= height; ++a) {
        if (a == 0) continue;
        for (int b = -height; b <= height; ++b) {
            if (b == 0) continue;
            const std::int64_t ra = reduce(a), rb = reduce(b);
            const int eps = symbol(ra, ra) * symbol(ra, rb) * symbol(rb, rb);
            out.insert({local_square_class(Rational(-a * b), v), eps});
        }
    }
    return out;
}

int local_form_count_bruteforce(Place v, int height) {
    return static_cast<int>(realizable_invariants_bruteforce(v, height).size());
}

double dirichlet_partial_sum(std::int64_t D, double s, std::int64_t N) {
    if (N < 1) return 0.0;
    std::vector<std::int64_t> spf(static_cast<std::size_t>(N + 1), 0);
    for (std::int64_t i = 2; i <= N; ++i)
        if (spf[static_cast<std::size_t>(i)] == 0)
            for (std::int64_t j = i; j <= N; j += i)
                if (spf[static_cast<std::size_t>(j)] == 0) spf[static_cast<std::size_t>(j)] = i;
    std::vector<signed char> chi(static_cast<std::size_t>(N + 1), 0);
    chi[1] = 1;
    for (std::int64_t n = 2; n <= N; ++n) {
        const std::int64_t p = spf[static_cast<std::size_t>(n)];
        const std::int64_t r = n / p;
        const int cp = r % p == 0 ? chi[static_cast<std::size_t>(p)] : chi_at_prime(D, p);
        chi[static_cast<std::size_t>(n)] = static_cast<signed char>(cp * chi[static_cast<std::size_t>(r)]);
    }
    long double sum = 0;
    for (std::int64_t n = N; n >= 1; --n)
        if (chi[static_cast<std::size_t>(n)] != 0)
            sum += chi[static_cast<std::size_t>(n)] * std::pow(static_cast<long double>(n), -static_cast<long double>(s));
    return static_cast<double>(sum);
}

}  // namespace tfc::oracle
