#pragma once

#include "cfmm/model.hpp"

namespace cfmm {

struct PricePartials {
    double a = 0.0;  // dP/dA
    double b = 0.0;  // dP/dB
};

struct PriceSecondPartials {
    double aa = 0.0;
    double ab = 0.0;
    double bb = 0.0;
};

struct OraclePoint {
    double price = 0.0;
    double p_a = 0.0;
    double p_b = 0.0;
    double p_aa = 0.0;
    double p_ab = 0.0;
    double p_bb = 0.0;
    DerivativeSource source = DerivativeSource::Analytic;
};

/// Marginal units of B per unit of A, u_A / u_B, from each family's closed form.
double price(const AmmModel& model, Reserves r);

PricePartials price_partials(const AmmModel& model, Reserves r);
PriceSecondPartials price_second_partials(const AmmModel& model, Reserves r);
OraclePoint oracle_point(const AmmModel& model, Reserves r);

/// P_B P_AA - (P P_B + P_A) P_AB + P P_A P_BB. Nonnegative for models whose
/// pooling increases liquidity.
double liquidity_condition(const AmmModel& model, Reserves r);
double liquidity_condition(const OraclePoint& o);

/// Magnitude of the largest of the three terms, floored at 1, for tolerances.
double liquidity_condition_scale(const OraclePoint& o);

}  // namespace cfmm
