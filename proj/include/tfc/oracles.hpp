#pragma once

#include <cstdint>
#include <set>

#include "tfc/arith.hpp"
#include "tfc/quadforms.hpp"

// Brute-force reference computations used to validate the library. They share
// no code with the routines they check.
namespace tfc::oracle {

// (a, b)_p by searching primitive solutions of a x^2 + b y^2 = z^2 modulo p^3
// (p odd) or 2^6; p = 0 is the real place.
int hilbert_bruteforce(std::int64_t a, std::int64_t b, std::int64_t p);

// |Q_p^x / (Q_p^x)^k| by counting unit classes modulo p^m (p = 0: the reals).
int local_class_count_bruteforce(std::int64_t p, int k);

// Realizable (class of -det, epsilon) pairs at v from diag(a, b) with
// 0 < |a|, |b| <= height, epsilon via hilbert_bruteforce.
std::set<LocalInvariant> realizable_invariants_bruteforce(Place v, int height);

// Number of epsilon values realizable per class of -det at v, summed over classes.
int local_form_count_bruteforce(Place v, int height);

// sum_{n <= N} chi_D(n) n^{-s} with chi_D computed from quadratic residues of primes.
double dirichlet_partial_sum(std::int64_t D, double s, std::int64_t N);

}  // namespace tfc::oracle
