#pragma once

#include <optional>

#include "tfc/coeff.hpp"
#include "tfc/quadforms.hpp"

namespace tfc {

// A unipotent class in the centralizer G_sigma. For sigma central, orbit is a
// unipotent class of G itself; otherwise example carries the centralizer data.
struct CentralizerUnipotent {
    std::optional<OrbitClass> orbit;
    ExampleParams example;
};

// a^G(S, sigma u) = eps^G(sigma) |iota^G(sigma)|^{-1} a^{G_sigma}(S, u).
CoeffResult descent_coeff(const CentralizerClass& sigma, const CentralizerUnipotent& u, const PlaceSet& S,
                          const CoeffConfig& config = {});

}  // namespace tfc
