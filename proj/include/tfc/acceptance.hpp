#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tfc/shintani.hpp"

namespace tfc {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;    // deterministic summary of the measured quantities
    double seconds = 0.0;  // wall time, reported separately from detail
};

struct AcceptanceOptions {
    L1Provider L1;  // optional provider for L(1, chi_D), e.g. a cached one
    std::uint64_t seed = 20240611;
};

inline constexpr int kInProcessCriteria = 10;

// Criteria 1..10; the determinism criterion needs a separate process.
CriterionResult run_criterion(int id, const AcceptanceOptions& options = {});
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

}  // namespace tfc
