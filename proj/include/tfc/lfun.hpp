#pragma once

#include <cstdint>

#include <boost/multiprecision/mpfr.hpp>

#include "tfc/arith.hpp"
#include "tfc/characters.hpp"

namespace tfc {

using Real = boost::multiprecision::mpfr_float;

struct PrecisionConfig {
    int working_digits = 30;
};

// Sets the default mpfr precision (working digits plus guard digits) for the
// lifetime of the object and restores the previous value afterwards.
class PrecisionScope {
public:
    explicit PrecisionScope(int digits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

    static int current_digits();

private:
    unsigned previous_;
    int previous_digits_;
};

struct RealDual {
    Real v;  // value
    Real d;  // derivative in s
};

struct ComplexR {
    Real re;
    Real im;
};

// zeta(s,a) - 1/(s-1) and its s-derivative, by Euler-Maclaurin; valid at s = 1.
RealDual hurwitz_regular(const Real& s, const Real& a);
// zeta(s,a) and its s-derivative for s != 1.
RealDual hurwitz_zeta(const Real& s, const Real& a);

// Stieltjes constants gamma_0 (Euler's constant) and gamma_1.
Real stieltjes_gamma0();
Real stieltjes_gamma1();

// zeta^S(s) = zeta(s) prod_{p in S}(1 - p^-s).
Real zetaS(const Real& s, const PlaceSet& S);
// L^S(s, chi); chi must be unramified outside S. For the trivial character
// s = 1 is rejected.
Real LS(const Real& s, const QuadChar& chi, const PlaceSet& S);
ComplexR LS(const Real& s, const CubicChar& chi, const PlaceSet& S);
// d/ds L^S(s, chi).
Real deriv_LS(const Real& s, const QuadChar& chi, const PlaceSet& S);
ComplexR deriv_LS(const Real& s, const CubicChar& chi, const PlaceSet& S);

// Laurent data at s = 1: L^S(s,chi) = residue/(s-1) + c0 + c1 (s-1) + O((s-1)^2).
struct LaurentData {
    Real center = 1;
    Real residue;
    Real c0;
    Real c1;
};
LaurentData laurent_at_1(const QuadChar& chi, const PlaceSet& S);

struct ComplexLaurentData {
    ComplexR c0;
    ComplexR c1;
};
ComplexLaurentData laurent_at_1(const CubicChar& chi, const PlaceSet& S);

// c_F^S = prod_{p in S} (1 - 1/p).
Real residue_cFS(const PlaceSet& S);

// Class group data of a fundamental discriminant. For D < 0: h and w; for
// D > 0: narrow class number and log of the totally positive fundamental unit.
struct ClassGroupData {
    std::int64_t D = 0;
    std::int64_t h = 0;        // D < 0: class number; D > 0: narrow class number h+
    int w = 2;                 // number of roots of unity (D < 0)
    double log_unit = 0.0;     // D > 0: log of the totally positive fundamental unit
    bool unit_norm_minus_one = false;
};
ClassGroupData class_group_data(std::int64_t D);
std::int64_t class_number(std::int64_t D);  // wide class number
// log of the fundamental unit of the maximal order, D > 0.
double regulator(std::int64_t D);

// L(1, chi_D) (primitive, no Euler factors removed) in double precision.
double L1_class_number_formula(std::int64_t D);
double L1_smoothed_sum(std::int64_t D);

}  // namespace tfc
