#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tfc/arith.hpp"
#include "tfc/characters.hpp"

namespace tfc {

enum class L1Method { ClassNumberFormula, SmoothedSum };

std::string to_string(L1Method m);

// L(1, chi_D) for a fundamental discriminant D (primitive, no Euler factors removed).
using L1Provider = std::function<double(std::int64_t D)>;

// Default provider for a method, without caching.
L1Provider direct_L1_provider(L1Method method);

struct ShintaniConfig {
    std::int64_t X = 100000;                         // bound on |D|
    std::vector<double> eps_grid{0.2, 0.15, 0.1, 0.05};  // sorted descending
    L1Method L1_method = L1Method::ClassNumberFormula;
    bool tail_model = true;
    int digits = 30;
    double instability_tol = 0.1;  // relative disagreement that raises NumericInstability
    L1Provider L1_lookup;          // optional override, e.g. a cached provider

    void validate() const;
};

struct ShintaniDiagnostics {
    std::size_t n_terms = 0;
    std::int64_t S_part = 0;        // common S-part c of |D| over the class
    double Y = 0.0;                 // bound on N(f_d^S) = X / c
    double kappa0 = 0.0;            // fitted mean density at eps = 0
    double tail_check_ratio = 0.0;  // observed / predicted sum over (Y/2, Y]
    double kappa_half_Y = 0.0;      // fitted density using only N(f) <= Y/2
};

struct ShintaniResult {
    std::vector<std::pair<double, double>> grid_values;  // (eps, truncated xi^S(3/2+eps))
    std::vector<std::pair<double, double>> model_values; // (eps, tail-corrected xi^S(3/2+eps))
    double residue_exact = 0.0;     // 2^{-|S|} c_F^S
    double residue_estimate = 0.0;
    double residue_error = 0.0;
    double constant_CF = 0.0;
    double constant_error = 0.0;
    ShintaniDiagnostics diagnostics;
};

// Exact residue 2^{-|S|} prod_{p in S}(1 - 1/p) of xi^S(s; d_S) at s = 3/2.
double shintani_residue_exact(const PlaceSet& S);

// Truncated xi^S(s; alpha) summed over the class of alpha with |D| <= X.
double xi_partial(double s, const Rational& alpha, const PlaceSet& S, std::int64_t X,
                  const L1Provider& L1 = {});

double residue_at_pole(const Rational& alpha, const PlaceSet& S, const ShintaniConfig& config);
double shintani_constant(const Rational& alpha, const PlaceSet& S, const ShintaniConfig& config);
// Full analysis: grid values, residue estimate and the constant, with error bars.
ShintaniResult shintani_analyze(const Rational& alpha, const PlaceSet& S, const ShintaniConfig& config);

enum class Twist { Trivial, ChiD };

// Normalized unramified local factor at p not in S. chi_p is chi_d(p) (0 when
// chi_{d,p} is ramified). For the twisted case with chi_{d,p} ramified, returns 0.
double local_factor(std::int64_t p, double s, Twist twist, bool ramified, int chi_p = 1);

struct EulerAssembly {
    double product_path = 0.0;
    double direct_path = 0.0;
};

inline constexpr std::int64_t kDefaultEulerPrimeBound = 50000000;

// Twisted path: L^S(1,chi_d) prod_{p <= P, p not in S} local_factor(p, s, chi_d)
// against L^S(1,chi_d) zeta^S(2s-1)/zeta^S(2).
EulerAssembly euler_assembly_check(std::int64_t d, double s, const PlaceSet& S,
                                   std::int64_t prime_bound = kDefaultEulerPrimeBound);
// Trivial-twist path against the single-class summand of xi_partial.
EulerAssembly euler_assembly_trivial(std::int64_t d, double s, const PlaceSet& S,
                                     std::int64_t prime_bound = kDefaultEulerPrimeBound);

}  // namespace tfc
