#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cfmm/axioms.hpp"
#include "cfmm/model.hpp"

namespace cfmm {

enum class CheckStatus { Passed, Failed, Skipped };

struct PropertyCheck {
    std::string name;
    CheckStatus status = CheckStatus::Passed;
    std::string detail;  // hypotheses when skipped, witness description when failed
    std::optional<Witness> witness;
};

struct PropertyReport {
    std::string model;
    std::vector<PropertyCheck> checks;

    bool all_passed() const;
    const PropertyCheck* find(const std::string& name) const;
};

struct SuiteConfig {
    /// Relative tolerance on identities (split, homogeneity, round trip).
    double rel_tol = 1e-8;
    /// Reserve states the swap properties are exercised at.
    std::vector<Reserves> reserves{{1.0, 1.0}, {100.0, 7.0}, {5.0, 2000.0}, {0.02, 3.0}};
    /// Trade sizes as multiples of the deposited-side reserve.
    std::vector<double> trade_fractions{0.01, 0.1, 1.0, 10.0};
};

/// Swap and oracle properties, each gated on the axioms the verifier finds
/// for this model. `axioms` may be supplied to avoid recomputing them.
PropertyReport check_theorem_suite(const AmmModel& model, const GridConfig& grid = {},
                                   const SuiteConfig& cfg = {},
                                   const AxiomReport* axioms = nullptr);

}  // namespace cfmm
