#include <gtest/gtest.h>

#include <boost/math/constants/constants.hpp>
#include <cmath>

#include "tfc/errors.hpp"
#include "tfc/lfun.hpp"
#include "tfc/shintani.hpp"

using namespace tfc;

namespace {

const double kPi = boost::math::constants::pi<double>();

double d(const Real& x) { return x.convert_to<double>(); }

}  // namespace

TEST(XiPartial, EmptyBelowSmallestDiscriminant) {
    EXPECT_EQ(xi_partial(2.0, -1, PlaceSet{2}, 3), 0.0);
}

TEST(XiPartial, SingleTermExample) {
    PrecisionScope scope(30);
    const PlaceSet S{2};
    // d = -1 is the only member of the class of -1 with |D| <= 4
    const double beta4 = 0.9889445517411053;
    const double term = (kPi / 4) / beta4;
    const double prefactor = d(zetaS(3, S) * zetaS(4, S) / zetaS(2, S));
    EXPECT_NEAR(xi_partial(2.0, -1, S, 4), prefactor * term, 1e-12);
}

TEST(XiPartial, MonotoneInX) {
    const PlaceSet S{2};
    for (Rational alpha : {Rational(-1), Rational(2), Rational(5)}) {
        double last = 0.0;
        for (std::int64_t X : {100, 400, 1600, 6400, 25600}) {
            const double v = xi_partial(1.7, alpha, S, X);
            EXPECT_GE(v, last);
            last = v;
        }
        EXPECT_GT(last, 0.0);
    }
}

TEST(XiPartial, DependsOnlyOnSquareClass) {
    const PlaceSet S{2};
    EXPECT_DOUBLE_EQ(xi_partial(1.8, -1, S, 5000), xi_partial(1.8, -17, S, 5000));
    EXPECT_DOUBLE_EQ(xi_partial(1.8, 2, S, 5000), xi_partial(1.8, Rational(9, 2), S, 5000));
}

TEST(XiPartial, Preconditions) {
    EXPECT_THROW(xi_partial(1.5, -1, PlaceSet{2}, 1000), DomainError);
    EXPECT_THROW(xi_partial(2.0, -1, PlaceSet{3}, 1000), DomainError);
}

TEST(Residue, ExactTargets) {
    EXPECT_DOUBLE_EQ(shintani_residue_exact(PlaceSet{2}), 0.125);
    EXPECT_DOUBLE_EQ(shintani_residue_exact(PlaceSet{}), 0.5);
    EXPECT_DOUBLE_EQ(shintani_residue_exact(PlaceSet{2, 3}), 1.0 / 24);
}

TEST(Residue, EstimatesAgreeAcrossClasses) {
    const PlaceSet S{2};
    ShintaniConfig config;
    const auto a = shintani_analyze(-1, S, config);
    const auto b = shintani_analyze(2, S, config);
    EXPECT_NEAR(a.residue_estimate, 0.125, 0.05 * 0.125);
    EXPECT_NEAR(b.residue_estimate, 0.125, 0.05 * 0.125);
    EXPECT_NEAR(a.residue_estimate, b.residue_estimate, 0.05 * 0.125);
    EXPECT_GT(a.residue_estimate, 0.0);
    for (const auto& [eps, v] : a.grid_values) EXPECT_TRUE(std::isfinite(v));
}

TEST(Residue, TruncatedResidueGrowsWithX) {
    const PlaceSet S{2};
    const double eps = 0.1;
    double last = 0.0;
    for (std::int64_t X : {1000, 10000, 100000}) {
        const double v = eps * xi_partial(1.5 + eps, -1, S, X);
        EXPECT_GT(v, last);
        last = v;
    }
}

TEST(Constant, StableUnderDoublingX) {
    const PlaceSet S{2};
    ShintaniConfig c1, c2;
    c1.X = 50000;
    c2.X = 100000;
    const double a = shintani_constant(-1, S, c1), b = shintani_constant(-1, S, c2);
    EXPECT_LE(std::abs(a - b), 0.02 * std::abs(b));
}

TEST(Constant, InvariantUnderRepresentative) {
    const PlaceSet S{2};
    ShintaniConfig config;
    const auto a = shintani_analyze(-1, S, config);
    const auto b = shintani_analyze(-17, S, config);
    EXPECT_NEAR(a.constant_CF, b.constant_CF, a.constant_error + b.constant_error + 1e-12);
}

TEST(Constant, TailModelSelfCheck) {
    ShintaniConfig config;
    for (Rational alpha : {Rational(-1), Rational(2), Rational(-2)}) {
        const auto r = shintani_analyze(alpha, PlaceSet{2}, config);
        EXPECT_GT(r.diagnostics.tail_check_ratio, 0.8);
        EXPECT_LT(r.diagnostics.tail_check_ratio, 1.2);
    }
}

TEST(Constant, ConfigValidation) {
    ShintaniConfig config;
    config.X = 500;
    EXPECT_THROW(config.validate(), DomainError);
    config = {};
    config.eps_grid = {0.1, 0.2};
    EXPECT_THROW(config.validate(), DomainError);
    config = {};
    config.eps_grid = {0.1, -0.05};
    EXPECT_THROW(config.validate(), DomainError);
}

TEST(LocalFactor, SpecExamples) {
    EXPECT_EQ(local_factor(3, 2.0, Twist::ChiD, true), 0.0);
    const double expected = 1 / (1 - std::pow(3.0, -3)) / (1 - std::pow(3.0, -4)) * (1 - std::pow(3.0, -2)) *
                            (1 - std::pow(3.0, -4));
    EXPECT_NEAR(local_factor(3, 2.0, Twist::Trivial, false, 1), expected, 1e-15);
    EXPECT_NEAR(local_factor(5, 60.0, Twist::Trivial, false, 1), 1 - 1.0 / 25, 1e-15);
    EXPECT_NEAR(local_factor(5, 60.0, Twist::ChiD, false, -1), 1 - 1.0 / 25, 1e-15);
}

TEST(LocalFactor, TwistedUnramifiedClosedForm) {
    for (std::int64_t p : {3, 5, 7})
        for (double s : {1.6, 2.0, 3.0})
            EXPECT_NEAR(local_factor(p, s, Twist::ChiD, false, 1),
                        (1 - std::pow(double(p), -2.0)) / (1 - std::pow(double(p), -2 * s + 1)), 1e-15);
}

TEST(EulerAssembly, TwistedPathsAgree) {
    const auto r = euler_assembly_check(-1, 2.0, PlaceSet{2}, 2000000);
    EXPECT_NEAR(r.product_path, r.direct_path, 1e-6 * std::abs(r.direct_path));
    const auto r2 = euler_assembly_check(2, 2.5, PlaceSet{2}, 2000000);
    EXPECT_NEAR(r2.product_path, r2.direct_path, 1e-6 * std::abs(r2.direct_path));
}

TEST(EulerAssembly, RamifiedOutsideSVanishes) {
    const auto r = euler_assembly_check(-3, 2.0, PlaceSet{2}, 100000);
    EXPECT_EQ(r.product_path, 0.0);
}

TEST(EulerAssembly, TrivialTwistReproducesXiSummand) {
    const auto r = euler_assembly_trivial(-1, 2.0, PlaceSet{2}, 2000000);
    EXPECT_NEAR(r.product_path, r.direct_path, 1e-6 * std::abs(r.direct_path));
    EXPECT_NEAR(r.direct_path, xi_partial(2.0, -1, PlaceSet{2}, 4), 1e-12);
}
