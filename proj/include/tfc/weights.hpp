#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tfc/arith.hpp"
#include "tfc/lfun.hpp"

namespace tfc {

// T = T1 alpha_1^vee + T2 alpha_2^vee
struct TruncParam {
    double T1 = 0.0;
    double T2 = 0.0;
};

// lambda = l1 varpi_1 + l2 varpi_2
struct SpectralParam {
    double l1 = 0.0;
    double l2 = 0.0;
};

// Entries of nu(n12, n13, n14, n24) in GSp(2).
struct NuGSp {
    Rational n12 = 0, n13 = 0, n14 = 0, n24 = 0;
};

// Entries of u(n12, n13, n23) in GL(3).
struct NuGL3 {
    Rational n12 = 0, n13 = 0, n23 = 0;
};

enum class WeylGSp { e, s0, s2, s0s1, s0s2, s1, s0s1s2, s1s2 };
enum class WeylGL3 { e, s12, s23, s123, s132, s13 };

const std::vector<WeylGSp>& all_weyl_gsp();
const std::vector<WeylGL3>& all_weyl_gl3();
std::string to_string(WeylGSp s);
std::string to_string(WeylGL3 s);

// |x|_S = prod_{v in S} |x|_v
double abs_S(const Rational& x, const PlaceSet& S);
// ||x||_S = prod_{v in S} ||x||_v: Euclidean at infinity, max norm at finite places.
double norm_S(const std::vector<Rational>& x, const PlaceSet& S);

// v_{sP_0}(lambda, n, T)
double v_table(WeylGSp s, const SpectralParam& lam, const NuGSp& n, const TruncParam& T, const PlaceSet& S);
double v_table(WeylGL3 s, const SpectralParam& lam, const NuGL3& n, const TruncParam& T, const PlaceSet& S);

// w_{sP_0}(lambda, 1, nu, T) = exp(c1 l1 + c2 l2); returns (c1, c2).
std::pair<double, double> w_exponents(WeylGSp s, const NuGSp& nu, const TruncParam& T, const PlaceSet& S);
std::pair<double, double> w_exponents(WeylGL3 s, const NuGL3& nu, const TruncParam& T, const PlaceSet& S);
double w_table(WeylGSp s, const SpectralParam& lam, const NuGSp& nu, const TruncParam& T, const PlaceSet& S);
double w_table(WeylGL3 s, const SpectralParam& lam, const NuGL3& nu, const TruncParam& T, const PlaceSet& S);

// theta_{sP_0}(lambda)
double theta(WeylGSp s, const SpectralParam& lam);
double theta(WeylGL3 s, const SpectralParam& lam);
Real theta(WeylGSp s, const Real& l1, const Real& l2);
Real theta(WeylGL3 s, const Real& l1, const Real& l2);

// Closed-form weight factors for GSp(2).
double w_M0(const NuGSp& nu, const TruncParam& T, const PlaceSet& S);
// nu = nu(0, n13, n14, n24); Y = [[n13, n14], [n14, n24]].
double w_M1(const NuGSp& nu, const TruncParam& T, const PlaceSet& S);
// u = nu(u12, 0, 0, 0) times nu(0, n13, n14, n24).
double w_M1_u(const Rational& u12, const NuGSp& nu, const TruncParam& T, const PlaceSet& S);
// nu = nu(n12, n13, n14, 0).
double w_M2(const NuGSp& nu, const TruncParam& T, const PlaceSet& S);
// u = nu(0, 0, 0, u24) times nu(n12, n13, n14, 0).
double w_M2_u(const Rational& u24, const NuGSp& nu, const TruncParam& T, const PlaceSet& S);

// Closed-form weight factors for GL(3).
double w_M0_gl3(const NuGL3& nu, const TruncParam& T, const PlaceSet& S);
// nu = u(0, n13, n23)
double w_Mprime_gl3(const NuGL3& nu, const TruncParam& T, const PlaceSet& S);
// u = u(u12, 0, 0) times u(0, n13, n23)
double w_Mprime_gl3_u(const Rational& u12, const NuGL3& nu, const TruncParam& T, const PlaceSet& S);

// A member of a (G,M)-family: its value and theta polynomial as functions of (l1, l2).
struct FamilyMember {
    std::function<Real(const Real&, const Real&)> value;
    std::function<Real(const Real&, const Real&)> theta;
};

struct LimitResult {
    double value = 0.0;
    double error = 0.0;
};

struct LimitConfig {
    int digits = 50;
    std::uint64_t seed = 20240611;
    int levels = 9;         // t_k = t0 2^{-k}, k < levels
    double t0 = 0.1;
    double tolerance = 1e-8;  // error above tolerance * (1 + |value|) raises NumericInstability
};

// lim_{lambda -> 0} sum_P value_P(lambda) / theta_P(lambda) along two seeded generic rays.
LimitResult gm_family_limit(const std::vector<FamilyMember>& members, int dims, const LimitConfig& config = {});

// Families built from the tabulated limiting members.
std::vector<FamilyMember> gsp2_M0_family(const NuGSp& nu, const TruncParam& T, const PlaceSet& S);
std::vector<FamilyMember> gsp2_M1_family(const NuGSp& nu, const TruncParam& T, const PlaceSet& S);
std::vector<FamilyMember> gsp2_M1_u_family(const Rational& u12, const NuGSp& nu, const TruncParam& T,
                                           const PlaceSet& S);
std::vector<FamilyMember> gsp2_M2_family(const NuGSp& nu, const TruncParam& T, const PlaceSet& S);
std::vector<FamilyMember> gsp2_M2_u_family(const Rational& u24, const NuGSp& nu, const TruncParam& T,
                                           const PlaceSet& S);
std::vector<FamilyMember> gl3_M0_family(const NuGL3& nu, const TruncParam& T, const PlaceSet& S);
std::vector<FamilyMember> gl3_Mprime_family(const NuGL3& nu, const TruncParam& T, const PlaceSet& S);
std::vector<FamilyMember> gl3_Mprime_u_family(const Rational& u12, const NuGL3& nu, const TruncParam& T,
                                              const PlaceSet& S);

}  // namespace tfc
