#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tfc/arith.hpp"

namespace tfc {

// Nondegenerate rational symmetric matrix [[a, b], [b, c]].
class SymForm2 {
public:
    SymForm2(Rational a, Rational b, Rational c);
    static SymForm2 diag(const Rational& alpha, const Rational& beta);
    // x_alpha = diag(1, -alpha)
    static SymForm2 frak_x(const Rational& alpha);

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Rational& c() const { return c_; }
    Rational det() const { return a_ * c_ - b_ * b_; }
    // g^T x g for a 2x2 matrix g = [[g11, g12], [g21, g22]].
    SymForm2 congruent(const Rational& g11, const Rational& g12, const Rational& g21, const Rational& g22) const;
    std::string str() const;

    bool operator==(const SymForm2&) const = default;

private:
    Rational a_, b_, c_;
};

// Rational diagonalization (alpha, beta) with alpha*beta/det a square.
std::pair<Rational, Rational> diagonalize(const SymForm2& x);

// epsilon_v(x) = (alpha,alpha)_v (alpha,beta)_v (beta,beta)_v for a diagonalization.
int hasse(const SymForm2& x, Place v);
// Same invariant for the diagonal form diag(alpha, beta).
int hasse_diag(const Rational& alpha, const Rational& beta, Place v);
std::vector<int> hasse_profile(const SymForm2& x, const PlaceSet& S);

enum class FormRel { Sim, SimPrime };  // ~_S and ~'_S

struct FormClassId {
    std::vector<LocalClass> neg_det_labels;  // S-square class of -det(x)
    std::vector<int> hasse;                  // empty for ~_S
    auto operator<=>(const FormClassId&) const = default;
};

FormClassId classify_form(const SymForm2& x, const PlaceSet& S, FormRel rel);
bool is_equiv(const SymForm2& x, const SymForm2& y, const PlaceSet& S, FormRel rel);

inline constexpr int kDefaultFormHeight = 50;

// Locally realizable pairs (square class of -det, epsilon_v) at v, found by
// enumerating diagonal forms diag(a, b) with integers 0 < |a|, |b| <= height.
struct LocalInvariant {
    LocalClass neg_det;
    int eps = 1;
    auto operator<=>(const LocalInvariant&) const = default;
};
std::vector<LocalInvariant> realizable_local_invariants(Place v, int height = kDefaultFormHeight);
// epsilon values realizable at v for a given class of -det.
std::vector<int> realizable_eps(Place v, const LocalClass& neg_det, int height = kDefaultFormHeight);

// Representatives of V^ss(F)/~_S (one diag(1,-alpha) per square class) or of
// V^ss(F)/~'_S (diag(u,-alpha u) for every realizable Hasse tuple).
std::vector<SymForm2> enum_form_classes(const PlaceSet& S, FormRel rel, int height = kDefaultFormHeight,
                                        std::int64_t scan_bound = kDefaultScanBound);

enum class GroupTag { GL2, SL2, GL3, SL3, GSp2, Sp2 };
enum class OrbitType { Trivial, Min, Sub, Reg };

std::string to_string(GroupTag g);
std::string to_string(OrbitType t);
GroupTag parse_group(const std::string& s);
OrbitType parse_orbit_type(const std::string& s);

struct OrbitClass {
    GroupTag group = GroupTag::GL2;
    OrbitType type = OrbitType::Trivial;
    std::optional<Rational> alpha;     // square or cube class representative
    std::optional<SymForm2> x;         // n_sub parameter
    bool distinguished = false;        // x ~ x_1 under the group's relation
    std::string name() const;
};

// The set (U_G(F))_{G,S}.
std::vector<OrbitClass> unipotent_orbit_set(GroupTag G, const PlaceSet& S);

enum class SigmaKind { Z, Sigma1, Sigma2, Sigma3, Sigma4, Sigma5, Sigma6 };

struct SigmaDescriptor {
    SigmaKind kind = SigmaKind::Z;
    Rational z = 1;
    Rational x = 0;
    Rational y = 0;
    Rational alpha = 0;
};

struct CentralizerClass {
    SigmaKind sigma_kind = SigmaKind::Z;
    std::string centralizer_tag;
    int iota_order = 1;
    int eps_flag = 1;
    int split_center_rank = 1;
    bool eps_ambiguous = false;  // the rank is derived rather than stated
    SigmaDescriptor sigma;
};

std::string to_string(SigmaKind k);
SigmaKind parse_sigma_kind(const std::string& s);

CentralizerClass centralizer_classify(const SigmaDescriptor& sigma);

}  // namespace tfc
