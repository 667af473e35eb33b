#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cfmm/model.hpp"

namespace cfmm {

struct GridConfig {
    /// Log-spaced axis shared by both reserves.
    double lo = 1e-3;
    double hi = 1e3;
    int points = 16;
    /// Limit probes sit at 10^{+-1 .. +-probe_decades} times the held reserve.
    int probe_decades = 8;
    std::vector<double> qc_lambdas{0.25, 0.5, 0.75};
    std::vector<double> si_factors{1e-2, 0.5, 2.0, 1e2};
    /// Multiplies every tolerance below.
    double tol_scale = 1.0;

    /// Throws DomainError unless 0 < lo < hi, points >= 8 and probe_decades >= 2.
    void validate() const;
    std::vector<double> axis() const;
};

enum class VerdictKind { Satisfied, Violated, NotApplicable };

/// Concrete evidence of a violation: the points involved, the values that
/// were compared, and the auxiliary parameter (lambda, t, probe) if any.
struct Witness {
    std::vector<Reserves> points;
    std::vector<double> values;
    double parameter = 0.0;
    std::string description;
};

struct TrendSample {
    double probe = 0.0;
    double value = 0.0;
};

struct AxiomVerdict {
    Axiom axiom = Axiom::Continuous;
    VerdictKind kind = VerdictKind::Satisfied;
    /// Certified by sampling only; no closed-form argument backs it.
    bool numeric_only = false;
    double tolerance = 0.0;
    std::string detail;
    std::optional<Witness> witness;
    /// Probe sequence for the limit axioms (UfB, UfA, I+).
    std::vector<TrendSample> trend;
};

struct AxiomReport {
    std::string model;
    GridConfig grid;
    std::vector<AxiomVerdict> verdicts;  // in kAllAxioms order

    const AxiomVerdict& at(Axiom a) const { return verdicts[static_cast<std::size_t>(a)]; }
    bool satisfied(Axiom a) const { return at(a).kind == VerdictKind::Satisfied; }
};

AxiomVerdict check_axiom(const AmmModel& model, Axiom axiom, const GridConfig& grid = {});
AxiomReport check_all(const AmmModel& model, const GridConfig& grid = {});

/// Axioms whose verdict disagrees with the claimed pattern (holds /
/// not-applicable / numeric-only).
std::vector<Axiom> claim_mismatches(const AxiomReport& report, const AxiomClaims& claims);

}  // namespace cfmm
