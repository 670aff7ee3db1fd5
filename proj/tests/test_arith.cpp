#include <gtest/gtest.h>

#include <random>
#include <set>

#include "tfc/arith.hpp"
#include "tfc/errors.hpp"
#include "tfc/oracles.hpp"

using namespace tfc;

namespace {

const Place inf = Place::infinity();

// Legendre symbol by listing the nonzero squares mod p.
int legendre_by_listing(std::int64_t a, std::int64_t p) {
    a = ((a % p) + p) % p;
    if (a == 0) return 0;
    for (std::int64_t x = 1; x < p; ++x)
        if (x * x % p == a) return 1;
    return -1;
}

}  // namespace

TEST(Kronecker, SpecExamples) {
    EXPECT_EQ(kronecker(-4, 3), -1);
    EXPECT_EQ(kronecker(5, 5), 0);
    EXPECT_EQ(kronecker(8, 7), 1);
}

TEST(Kronecker, MatchesListedResiduesAtOddPrimes) {
    for (std::int64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31})
        for (std::int64_t a = -60; a <= 60; ++a) EXPECT_EQ(kronecker(a, p), legendre_by_listing(a, p)) << a << " " << p;
}

TEST(Kronecker, PeriodicForFundamentalDiscriminants) {
    for (std::int64_t D : {-4, 5, 8, -8, -3, 12, -7, 13, -15, 24})
        for (std::int64_t n = 1; n <= 200; ++n) EXPECT_EQ(kronecker(D, n), kronecker(D, n + std::abs(D)));
}

TEST(Hilbert, SpecExamples) {
    for (std::int64_t b : {-7, -1, 2, 3, 10})
        for (auto v : {inf, Place::prime(2), Place::prime(3), Place::prime(5)}) EXPECT_EQ(hilbert(1, b, v), 1);
    EXPECT_EQ(hilbert(-1, -1, inf), -1);
    EXPECT_EQ(hilbert(-1, -1, Place::prime(2)), -1);
}

TEST(Hilbert, MatchesBruteForceSolvability) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> dist(-300, 300);
    for (int i = 0; i < 300; ++i) {
        const std::int64_t a = dist(rng), b = dist(rng);
        if (a == 0 || b == 0) continue;
        for (std::int64_t p : {0, 2, 3, 5, 7}) {
            const Place v = p == 0 ? inf : Place::prime(p);
            EXPECT_EQ(hilbert(a, b, v), oracle::hilbert_bruteforce(a, b, p)) << a << "," << b << " at " << p;
        }
    }
}

TEST(Hilbert, SymmetryAndSquareInvariance) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::int64_t> dist(-500, 500);
    for (int i = 0; i < 200; ++i) {
        const std::int64_t a = dist(rng), b = dist(rng), c = dist(rng);
        if (a == 0 || b == 0 || c == 0) continue;
        for (auto v : {inf, Place::prime(2), Place::prime(3), Place::prime(7)}) {
            EXPECT_EQ(hilbert(a, b, v), hilbert(b, a, v));
            EXPECT_EQ(hilbert(Rational(a) * c * c, b, v), hilbert(a, b, v));
            EXPECT_EQ(hilbert(Rational(a) / (c * c), b, v), hilbert(a, b, v));
        }
    }
}

TEST(Hilbert, ProductFormulaOnRationals) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::int64_t> dist(-2000, 2000);
    for (int i = 0; i < 100; ++i) {
        const std::int64_t p1 = dist(rng), q1 = dist(rng), p2 = dist(rng), q2 = dist(rng);
        if (!p1 || !q1 || !p2 || !q2) continue;
        const Rational a = Rational(p1) / q1, b = Rational(p2) / q2;
        std::set<std::int64_t> primes{2};
        for (std::int64_t n : {p1, q1, p2, q2})
            for (const auto& [p, e] : factor(n)) primes.insert(p);
        int prod = hilbert(a, b, inf);
        for (auto p : primes) prod *= hilbert(a, b, Place::prime(p));
        EXPECT_EQ(prod, 1);
    }
}

TEST(SquareClasses, SpecExamples) {
    EXPECT_TRUE(is_square_at(17, Place::prime(2)));
    EXPECT_FALSE(is_square_at(2, Place::prime(2)));
    EXPECT_FALSE(is_square_at(-1, inf));
    EXPECT_TRUE(is_square_at(Rational(9, 4), Place::prime(3)));
    EXPECT_FALSE(is_square_at(3, Place::prime(2)));
}

TEST(SquareClasses, AgreesWithResidueListingAtOddPrimes) {
    for (std::int64_t p : {3, 5, 7, 11})
        for (std::int64_t a = 1; a <= 200; ++a) {
            if (a % p == 0) continue;
            EXPECT_EQ(is_square_at(a, Place::prime(p)), legendre_by_listing(a, p) == 1);
        }
}

TEST(SquareClasses, TwoAdicUnitsBySquaresModEight) {
    for (std::int64_t a = 1; a < 400; a += 2) EXPECT_EQ(is_square_at(a, Place::prime(2)), a % 8 == 1) << a;
}

TEST(SquareClasses, LocalCountsMatchBruteForce) {
    for (std::int64_t p : {0, 2, 3, 5, 7, 13}) {
        const Place v = p == 0 ? inf : Place::prime(p);
        EXPECT_EQ(local_class_count(v, 2), oracle::local_class_count_bruteforce(p, 2));
        EXPECT_EQ(local_class_count(v, 3), oracle::local_class_count_bruteforce(p, 3));
    }
}

TEST(SquareClassReps, SpecExamples) {
    const auto r0 = sclass_reps(PlaceSet{});
    ASSERT_EQ(r0.size(), 2u);
    EXPECT_EQ(r0[0].value, 1);
    EXPECT_EQ(r0[1].value, -1);

    const PlaceSet S{2};
    const auto reps = sclass_reps(S);
    ASSERT_EQ(reps.size(), 16u);
    std::set<Integer> got;
    for (const auto& r : reps) got.insert(r.value);
    for (std::int64_t v : {1, 2, 3, 5, 6, 7, 10, 14}) {
        EXPECT_TRUE(got.count(v)) << v;
        EXPECT_TRUE(got.count(-v)) << -v;
    }
    EXPECT_TRUE(same_sclass(17, 1, S));
    EXPECT_EQ(sclass_index(17, reps, S), sclass_index(1, reps, S));
}

TEST(SquareClassReps, BijectionOntoLocalLabels) {
    for (const PlaceSet& S : {PlaceSet{2}, PlaceSet{2, 3}, PlaceSet{2, 5}, PlaceSet{3, 7}}) {
        const auto reps = sclass_reps(S);
        std::size_t expected = 1;
        for (const auto& v : S.places()) expected *= static_cast<std::size_t>(oracle::local_class_count_bruteforce(v.p(), 2));
        EXPECT_EQ(reps.size(), expected) << S.name();
        std::set<std::vector<LocalClass>> labels;
        for (const auto& r : reps) {
            EXPECT_EQ(r.local_labels, sclass_labels(Rational(r.value), S));
            labels.insert(r.local_labels);
        }
        EXPECT_EQ(labels.size(), reps.size());
    }
}

TEST(CubeClassReps, SpecExamples) {
    const auto r0 = cclass_reps(PlaceSet{});
    ASSERT_EQ(r0.size(), 1u);
    EXPECT_EQ(r0[0].value, 1);
    const auto r2 = cclass_reps(PlaceSet{2});
    ASSERT_EQ(r2.size(), 3u);
    std::set<Integer> got;
    for (const auto& r : r2) got.insert(r.value);
    EXPECT_EQ(got, (std::set<Integer>{1, 2, 4}));
    EXPECT_EQ(cclass_reps(PlaceSet{2, 7}).size(), 27u);
    EXPECT_EQ(cclass_reps(PlaceSet{2, 3}).size(), 27u);
}

TEST(Factorization, ValuationAndKernels) {
    EXPECT_EQ(valuation(Rational(48, 5), 2), 4);
    EXPECT_EQ(valuation(Rational(48, 5), 5), -1);
    EXPECT_EQ(squarefree_kernel(Rational(-12, 5)), -15);
    EXPECT_EQ(cubefree_kernel(Rational(16)), 2);
    EXPECT_TRUE(is_squarefree(std::int64_t{30}));
    EXPECT_FALSE(is_squarefree(std::int64_t{18}));
    std::int64_t prod = 1;
    for (const auto& [p, e] : factor(std::int64_t{360360}))
        for (int i = 0; i < e; ++i) prod *= p;
    EXPECT_EQ(prod, 360360);
}

TEST(PlaceSetParsing, AcceptsListsAndRejectsNonPrimes) {
    EXPECT_EQ(PlaceSet::parse("2,3").name(), PlaceSet({2, 3}).name());
    EXPECT_EQ(PlaceSet::parse("").size(), 1u);
    EXPECT_THROW(PlaceSet::parse("2,x"), DomainError);
    EXPECT_THROW(PlaceSet({4}), DomainError);
}
