#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tfc/arith.hpp"
#include "tfc/quadforms.hpp"
#include "tfc/shintani.hpp"

namespace tfc {

// Volumes enter every coefficient as symbolic factors; the default 1 lets callers
// rescale to their own Haar measure normalization.
struct VolumeParams {
    double vol_M0 = 1.0;
    double vol_M1 = 1.0;
    double vol_M2 = 1.0;
    double vol_Mprime = 1.0;
    double vol_G = 1.0;

    void validate() const;
};

struct CoeffConfig {
    VolumeParams vol;
    ShintaniConfig shintani;
    int digits = 30;

    void validate() const;
};

struct NamedFactor {
    std::string name;
    double value = 0.0;
};

// value = prefactor * volume * prod(factors)
struct CoeffTerm {
    Rational prefactor = 1;
    std::string volume_symbol;
    double volume = 1.0;
    std::vector<NamedFactor> factors;
    double value = 0.0;
    double error = 0.0;
};

struct CoeffResult {
    std::vector<CoeffTerm> terms;
    double value = 0.0;
    double error = 0.0;
    std::string provenance;
};

// c_F = 1 for F = Q.
CoeffResult coeff_gl2(const PlaceSet& S, const CoeffConfig& config = {});
CoeffResult coeff_sl2(const PlaceSet& S, const Rational& alpha, const CoeffConfig& config = {});
// type is OrbitType::Min for u' and OrbitType::Reg for u''.
CoeffResult coeff_gl3(const PlaceSet& S, OrbitType type, const CoeffConfig& config = {});
CoeffResult coeff_sl3(const PlaceSet& S, OrbitType type, const Rational& alpha, const CoeffConfig& config = {});
CoeffResult coeff_gsp2(const PlaceSet& S, const OrbitClass& orbit, const CoeffConfig& config = {});
CoeffResult coeff_sp2(const PlaceSet& S, const OrbitClass& orbit, const CoeffConfig& config = {});
// Dispatches on orbit.group; the trivial orbit gives vol_G.
CoeffResult coeff_orbit(const PlaceSet& S, const OrbitClass& orbit, const CoeffConfig& config = {});

// The Shintani constant C_F(S, alpha) with its error bar, memoized per S-square class.
struct ShintaniConstant {
    double value = 0.0;
    double error = 0.0;
};
ShintaniConstant shintani_constant_cached(const Rational& alpha, const PlaceSet& S, const ShintaniConfig& config);
void clear_shintani_constant_cache();

enum class ExampleFamily { GL2, SL2, U11, GL2xGL2 };  // the centralizer examples
enum class ExampleUnipotent { Identity, U, U10, U01, UAlpha1 };

std::string to_string(ExampleFamily f);
std::string to_string(ExampleUnipotent u);
ExampleFamily parse_example_family(const std::string& s);
ExampleUnipotent parse_example_unipotent(const std::string& s);

struct ExampleParams {
    ExampleUnipotent u = ExampleUnipotent::U;
    Rational alpha = 1;
    std::int64_t d = 0;  // E = Q(sqrt d) for the unitary family, d squarefree
};

// a^{G_sigma}(S, u) for the centralizer example families. Volumes are read from
// config.vol and refer to the Levi subgroups of the centralizer.
CoeffResult centralizer_example_coeff(ExampleFamily family, const ExampleParams& params, const PlaceSet& S,
                                      const CoeffConfig& config = {});

struct EndoscopicDiff {
    CoeffResult sp2;
    CoeffResult gsp2;
    double direct = 0.0;        // sp2.value - gsp2.value
    double direct_error = 0.0;
    CoeffResult predicted;      // closed form of the difference
};

// Sp(2) orbit of the given type against the matched GSp(2) orbit. alpha is used
// for Min and Reg, x for Sub.
EndoscopicDiff endoscopic_diff(const PlaceSet& S, OrbitType type, const Rational& alpha,
                               const std::optional<SymForm2>& x, const CoeffConfig& config = {});

}  // namespace tfc
