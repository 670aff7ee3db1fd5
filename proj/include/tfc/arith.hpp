#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tfc {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// A place of Q: the archimedean place (p == 0) or a finite prime p.
class Place {
public:
    static Place infinity() { return Place(0); }
    static Place prime(std::int64_t p);

    bool is_infinite() const { return p_ == 0; }
    std::int64_t p() const { return p_; }
    std::string name() const;

    auto operator<=>(const Place&) const = default;

private:
    explicit Place(std::int64_t p) : p_(p) {}
    std::int64_t p_;
};

// A finite set of places that always contains the archimedean place.
class PlaceSet {
public:
    PlaceSet() = default;
    explicit PlaceSet(std::vector<std::int64_t> primes);
    PlaceSet(std::initializer_list<std::int64_t> primes)
        : PlaceSet(std::vector<std::int64_t>(primes)) {}

    // Parses "2,3,5"; the empty string gives {inf}.
    static PlaceSet parse(const std::string& text);

    const std::vector<std::int64_t>& primes() const { return primes_; }
    std::vector<Place> places() const;
    bool contains(std::int64_t p) const;
    bool contains_two() const { return contains(2); }
    std::size_t size() const { return primes_.size() + 1; }
    std::string name() const;

    bool operator==(const PlaceSet&) const = default;

private:
    std::vector<std::int64_t> primes_;
};

bool is_prime(const Integer& n);
bool is_prime(std::int64_t n);

// Prime factorization of |n|, primes ascending. n != 0.
std::vector<std::pair<Integer, int>> factor(const Integer& n);
std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n);

int valuation(const Integer& n, std::int64_t p);
int valuation(const Rational& a, std::int64_t p);

// Sign times the product of primes dividing n to an odd power.
Integer squarefree_part(const Integer& n);
// Squarefree integer in the class a (Q^x)^2.
Integer squarefree_kernel(const Rational& a);
bool is_squarefree(const Integer& n);
bool is_squarefree(std::int64_t n);
// Cube-free integer in the class a (Q^x)^3.
Integer cubefree_kernel(const Rational& a);

// Kronecker symbol (a/n), extended to all integers n.
int kronecker(const Integer& a, const Integer& n);
int kronecker(std::int64_t a, std::int64_t n);

// Hilbert symbol (a,b)_v for nonzero rationals.
int hilbert(const Rational& a, const Rational& b, Place v);

// Label of the coset of a in Q_v^x / (Q_v^x)^k for k = 2 or 3.
// infinite place: sign (for k = 3 always +1); finite p: valuation mod k
// and the least positive residue of the unit part modulo p^e in its coset
// of k-th powers (e = 1, or 3 for (p,k) = (2,2), or 2 for (p,k) = (3,3)).
struct LocalClass {
    Place place = Place::infinity();
    int power = 2;
    int val_mod = 0;
    std::int64_t unit = 1;

    std::string label() const;
    auto operator<=>(const LocalClass&) const = default;
};

LocalClass local_square_class(const Rational& a, Place v);
LocalClass local_cube_class(const Rational& a, Place v);
bool is_square_at(const Rational& a, Place v);
bool is_cube_at(const Rational& a, Place v);

// Number of cosets in Q_v^x / (Q_v^x)^k.
int local_class_count(Place v, int power);

// All coset labels of Q_v^x / (Q_v^x)^k, in a canonical order.
std::vector<LocalClass> local_class_set(Place v, int power);

struct SquareClassRep {
    Integer value;
    std::vector<LocalClass> local_labels;  // one per place of S, S order
};

struct CubeClassRep {
    Integer value;
    std::vector<LocalClass> local_labels;
};

// Label tuples over S.
std::vector<LocalClass> sclass_labels(const Rational& a, const PlaceSet& S);
std::vector<LocalClass> cclass_labels(const Rational& a, const PlaceSet& S);

// True when a/b lies in (Q_S^x)^2.
bool same_sclass(const Rational& a, const Rational& b, const PlaceSet& S);
bool same_cclass(const Rational& a, const Rational& b, const PlaceSet& S);

inline constexpr std::int64_t kDefaultScanBound = 10000;

// Representatives of Q^x/(Q^x cap (Q_S^x)^2) by an increasing scan over
// squarefree integers 1, -1, 2, -2, ...
std::vector<SquareClassRep> sclass_reps(const PlaceSet& S,
                                        std::int64_t scan_bound = kDefaultScanBound);
std::vector<CubeClassRep> cclass_reps(const PlaceSet& S,
                                      std::int64_t scan_bound = kDefaultScanBound);

// Index of the class of a in sclass_reps(S).
std::size_t sclass_index(const Rational& a, const std::vector<SquareClassRep>& reps,
                         const PlaceSet& S);

// Primes up to n (sieve of Eratosthenes).
std::vector<std::int64_t> primes_up_to(std::int64_t n);

std::int64_t to_i64(const Integer& n);

}  // namespace tfc
