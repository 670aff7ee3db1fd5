#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "tfc/arith.hpp"

namespace tfc {

// True for fundamental discriminants and for D = 1.
bool is_fundamental_discriminant(std::int64_t D);

// Fundamental discriminant of Q(sqrt(d)) for a squarefree integer d != 1.
std::int64_t fundamental_discriminant_of_squarefree(std::int64_t d);

// Real primitive character chi_D; D = 1 is the trivial character.
class QuadChar {
public:
    QuadChar() = default;
    explicit QuadChar(std::int64_t D);

    static QuadChar trivial() { return QuadChar(1); }

    std::int64_t D() const { return D_; }
    bool is_trivial() const { return D_ == 1; }
    std::int64_t conductor() const { return D_ < 0 ? -D_ : D_; }
    bool is_even() const { return D_ > 0; }
    // Squarefree d with Q(sqrt d) the field cut out by chi_D.
    std::int64_t d() const;
    std::vector<std::int64_t> ramified_primes() const;

    int operator()(std::int64_t n) const { return kronecker(D_, n); }
    std::string name() const;

    bool operator==(const QuadChar&) const = default;

private:
    std::int64_t D_ = 1;
};

// Primitive Dirichlet character of order dividing 3. Values are stored as
// exponents k in {0,1,2} of omega = exp(2 pi i / 3); -1 marks non-units.
class CubicChar {
public:
    CubicChar() = default;
    CubicChar(std::int64_t modulus, std::vector<int> exponents);

    static CubicChar trivial() { return CubicChar(1, {0}); }

    std::int64_t modulus() const { return q_; }
    bool is_trivial() const { return q_ == 1; }
    // -1 when gcd(n, q) > 1, else k with chi(n) = omega^k.
    int exponent(std::int64_t n) const;
    std::complex<double> operator()(std::int64_t n) const;
    CubicChar inverse() const;
    std::vector<std::int64_t> ramified_primes() const;
    std::string name() const;

    bool operator==(const CubicChar&) const = default;

private:
    std::int64_t q_ = 1;
    std::vector<int> exps_{0};
    std::string label_ = "1";

    friend std::vector<CubicChar> enum_cubic_chars(const PlaceSet& S);
};

// chi_d for the square class of a nonsquare rational d.
QuadChar quad_char_of(const Rational& d);

// prod_{v in S} chi_v(alpha), computed as prod_{p not in S} chi(p)^(-v_p(alpha)).
int chi_S(const QuadChar& chi, const Rational& alpha, const PlaceSet& S);
// Cubic case: returns the exponent k of omega.
int chi_S_exponent(const CubicChar& chi, const Rational& alpha, const PlaceSet& S);
std::complex<double> chi_S(const CubicChar& chi, const Rational& alpha, const PlaceSet& S);

bool unramified_outside(const QuadChar& chi, const PlaceSet& S);
bool unramified_outside(const CubicChar& chi, const PlaceSet& S);

// Quadratic characters unramified outside S, trivial character first.
std::vector<QuadChar> enum_quad_chars(const PlaceSet& S);
// Nontrivial cubic characters unramified outside S, each followed by its inverse.
std::vector<CubicChar> enum_cubic_chars(const PlaceSet& S);

enum class DiscKind { Q, QS, QUr };

struct DiscClassSet {
    DiscKind kind = DiscKind::QS;
    std::vector<std::int64_t> entries;  // squarefree d, ordered by |D|, then d
};

// Q(F,S,d_S) truncated at |D| <= X, or the finite set Q^ur(F,S,d_S).
DiscClassSet disc_classes(const PlaceSet& S, const Rational& d_S, std::int64_t X, DiscKind kind);

// N(f_d^S): product of primes outside S at which chi_d ramifies.
std::int64_t conductor_outside(std::int64_t d, const PlaceSet& S);

}  // namespace tfc
