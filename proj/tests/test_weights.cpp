#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tfc/errors.hpp"
#include "tfc/weights.hpp"

using namespace tfc;

namespace {

const PlaceSet S2{2};

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(1, 40), den(1, 9), sign(0, 1);
    const Rational r = Rational(num(rng)) / den(rng);
    return sign(rng) ? r : Rational(-r);
}

// Lower-order brute evaluation of sum_s w_s / theta_s at a small generic lambda.
double direct_sum_gsp(const NuGSp& nu, const TruncParam& T, const PlaceSet& S, double l1, double l2) {
    double sum = 0.0;
    for (auto s : all_weyl_gsp()) sum += w_table(s, {l1, l2}, nu, T, S) / theta(s, {l1, l2});
    return sum;
}

}  // namespace

TEST(Norms, HeightsOverS) {
    EXPECT_DOUBLE_EQ(abs_S(3, S2), 3.0);
    EXPECT_DOUBLE_EQ(abs_S(12, S2), 3.0);
    EXPECT_DOUBLE_EQ(abs_S(Rational(1) / 2, S2), 1.0);
    EXPECT_DOUBLE_EQ(abs_S(2, PlaceSet{2, 3}), 1.0);
    EXPECT_DOUBLE_EQ(abs_S(-5, PlaceSet{}), 5.0);
    EXPECT_DOUBLE_EQ(norm_S({1, 3}, S2), std::sqrt(10.0));
    EXPECT_DOUBLE_EQ(norm_S({2, 4}, S2), std::sqrt(20.0) / 2);
}

TEST(VTable, SpecExamples) {
    const SpectralParam lam{0.3, -0.7};
    const TruncParam T{1.5, 0.25};
    NuGSp n;
    EXPECT_NEAR(v_table(WeylGSp::e, lam, n, T, S2), std::exp(0.3 * 1.5 - 0.7 * 0.25), 1e-15);
    EXPECT_NEAR(v_table(WeylGSp::s0, lam, n, {}, S2), 1.0, 1e-15);
    n.n24 = 3;
    EXPECT_NEAR(v_table(WeylGSp::s2, {1, 0}, n, {}, S2), 1 / std::sqrt(10.0), 1e-15);
}

TEST(WTable, ThetaPolynomials) {
    const SpectralParam lam{0.37, -0.81};
    EXPECT_NEAR(theta(WeylGSp::e, lam), lam.l1 * lam.l2, 1e-15);
    EXPECT_NEAR(theta(WeylGSp::s1s2, lam), lam.l1 * lam.l2, 1e-15);
    NuGSp nu;
    nu.n12 = 1;
    nu.n24 = 1;
    const TruncParam T{0.4, 1.1};
    EXPECT_NEAR(w_table(WeylGSp::e, lam, nu, T, S2), std::exp(lam.l1 * T.T1 + lam.l2 * T.T2), 1e-15);
}

TEST(WTable, SumIsSmoothNearZero) {
    NuGSp nu;
    nu.n12 = 3;
    nu.n24 = Rational(5) / 2;
    const TruncParam T{0.7, 0.2};
    const double closed = w_M0(nu, T, S2);
    // the chamber sum has size O(1) at small lambda although each term is O(1/lambda^2)
    const double v = direct_sum_gsp(nu, T, S2, 1.3e-3, 0.7e-3);
    EXPECT_NEAR(v, closed, 0.05 * (1 + std::abs(closed)));
}

TEST(WM0, SpecExamples) {
    NuGSp nu;
    nu.n12 = 1;
    nu.n24 = 1;
    EXPECT_DOUBLE_EQ(w_M0(nu, {0, 0}, S2), 0.0);
    EXPECT_DOUBLE_EQ(w_M0(nu, {1, 1}, S2), 2.0);
    nu.n12 = 3;
    EXPECT_NEAR(w_M0(nu, {0, 0}, S2), 2 * std::log(3.0) * std::log(3.0), 1e-14);
    nu.n12 = 0;
    EXPECT_THROW(w_M0(nu, {}, S2), DomainError);
}

TEST(WM0, SignSymmetry) {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 20; ++i) {
        NuGSp nu;
        nu.n12 = random_rational(rng);
        nu.n24 = random_rational(rng);
        const TruncParam T{0.3 * i, 1.0 - 0.05 * i};
        NuGSp flipped = nu;
        flipped.n12 = -nu.n12;
        EXPECT_DOUBLE_EQ(w_M0(nu, T, S2), w_M0(flipped, T, S2));
        flipped.n24 = -nu.n24;
        EXPECT_DOUBLE_EQ(w_M0(nu, T, S2), w_M0(flipped, T, S2));
    }
}

TEST(WM1M2, SpecExamples) {
    NuGSp nu;
    nu.n13 = 1;
    nu.n24 = 1;  // det Y = 1
    EXPECT_DOUBLE_EQ(w_M1(nu, {0, 0}, S2), 0.0);
    EXPECT_DOUBLE_EQ(w_M1(nu, {0.5, 0}, S2), 1.0);
    NuGSp n2;
    n2.n12 = 1;
    EXPECT_NEAR(w_M2_u(1, n2, {0, 0}, S2), 0.0, 1e-15);
    EXPECT_NEAR(w_M2_u(1, n2, {0, 0}, PlaceSet{}), -std::log(2.0), 1e-15);
    nu.n14 = 1;  // det Y = 0
    EXPECT_THROW(w_M1(nu, {}, S2), DomainError);
    EXPECT_THROW(w_M2_u(0, n2, {}, S2), DomainError);
}

TEST(WGL3, ClosedForms) {
    NuGL3 nu;
    nu.n13 = 3;
    nu.n23 = 4;
    EXPECT_NEAR(w_Mprime_gl3(nu, {0.5, 0.25}, PlaceSet{}), std::log(5.0) + 0.75, 1e-15);
    NuGL3 n0;
    n0.n12 = 1;
    n0.n23 = 1;
    EXPECT_DOUBLE_EQ(w_M0_gl3(n0, {0, 0}, S2), 0.0);
}

TEST(WeightFactors, VanishAtUnitHeightsAndZeroT) {
    NuGSp nu;
    nu.n12 = 1;
    nu.n13 = 1;
    nu.n24 = 1;
    nu.n14 = 0;
    EXPECT_DOUBLE_EQ(w_M0(nu, {}, S2), 0.0);
    EXPECT_DOUBLE_EQ(w_M1(nu, {}, S2), 0.0);
    EXPECT_DOUBLE_EQ(w_M1_u(1, nu, {}, S2), 0.0);
    NuGL3 g;
    g.n12 = 1;
    g.n23 = 1;
    EXPECT_DOUBLE_EQ(w_M0_gl3(g, {}, S2), 0.0);
    EXPECT_DOUBLE_EQ(w_Mprime_gl3_u(1, g, {}, S2), 0.0);
}

TEST(FamilyLimit, MatchesClosedFormsOnRandomData) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> tdist(-1.0, 2.0);
    LimitConfig lc;
    for (int i = 0; i < 6; ++i) {
        const PlaceSet S = i % 2 ? PlaceSet{2, 3} : PlaceSet{2};
        const TruncParam T{tdist(rng), tdist(rng)};
        NuGSp nu;
        nu.n12 = random_rational(rng);
        nu.n13 = random_rational(rng);
        nu.n14 = random_rational(rng);
        nu.n24 = random_rational(rng);
        const Rational u = random_rational(rng);
        EXPECT_NEAR(gm_family_limit(gsp2_M0_family(nu, T, S), 2, lc).value, w_M0(nu, T, S), 1e-6);
        NuGSp n1 = nu;
        n1.n12 = 0;
        if (n1.n13 * n1.n24 != n1.n14 * n1.n14) {
            EXPECT_NEAR(gm_family_limit(gsp2_M1_family(n1, T, S), 1, lc).value, w_M1(n1, T, S), 1e-6);
        }
        EXPECT_NEAR(gm_family_limit(gsp2_M1_u_family(u, n1, T, S), 1, lc).value, w_M1_u(u, n1, T, S), 1e-6);
        NuGSp n2 = nu;
        n2.n24 = 0;
        EXPECT_NEAR(gm_family_limit(gsp2_M2_family(n2, T, S), 1, lc).value, w_M2(n2, T, S), 1e-6);
        EXPECT_NEAR(gm_family_limit(gsp2_M2_u_family(u, n2, T, S), 1, lc).value, w_M2_u(u, n2, T, S), 1e-6);
        NuGL3 g;
        g.n12 = random_rational(rng);
        g.n13 = random_rational(rng);
        g.n23 = random_rational(rng);
        EXPECT_NEAR(gm_family_limit(gl3_M0_family(g, T, S), 2, lc).value, w_M0_gl3(g, T, S), 1e-6);
        NuGL3 g1 = g;
        g1.n12 = 0;
        EXPECT_NEAR(gm_family_limit(gl3_Mprime_family(g1, T, S), 1, lc).value, w_Mprime_gl3(g1, T, S), 1e-6);
        EXPECT_NEAR(gm_family_limit(gl3_Mprime_u_family(u, g1, T, S), 1, lc).value, w_Mprime_gl3_u(u, g1, T, S),
                    1e-6);
    }
}

TEST(FamilyLimit, ConstantFamilyIsFinite) {
    // {c e^{a l}/l, c e^{b l}/(-l)} tends to c (a - b)
    const double c = 2.5, a = 0.75, b = -1.25;
    std::vector<FamilyMember> fam{
        {[=](const Real& l1, const Real&) { return Real(c) * exp(Real(a) * l1); },
         [](const Real& l1, const Real&) { return l1; }},
        {[=](const Real& l1, const Real&) { return Real(c) * exp(Real(b) * l1); },
         [](const Real& l1, const Real&) { return Real(-l1); }},
    };
    const auto r = gm_family_limit(fam, 1);
    EXPECT_NEAR(r.value, c * (a - b), 1e-10);
    EXPECT_LT(r.error, 1e-8);
}

TEST(FamilyLimit, InvalidFamilyIsFlagged) {
    // a lone 1/l member has no limit
    std::vector<FamilyMember> fam{{[](const Real&, const Real&) { return Real(1); },
                                   [](const Real& l1, const Real&) { return l1; }}};
    EXPECT_THROW(gm_family_limit(fam, 1), NumericInstability);
}

TEST(FamilyLimit, DeterministicForFixedSeed) {
    NuGSp nu;
    nu.n12 = 5;
    nu.n24 = Rational(3) / 4;
    const auto a = gm_family_limit(gsp2_M0_family(nu, {0.3, 0.6}, S2), 2);
    const auto b = gm_family_limit(gsp2_M0_family(nu, {0.3, 0.6}, S2), 2);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.error, b.error);
}
