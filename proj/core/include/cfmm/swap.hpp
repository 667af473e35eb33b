#pragma once

#include <optional>

#include "cfmm/model.hpp"

namespace cfmm {

struct SwapQuote {
    double input_amount = 0.0;
    double output_amount = 0.0;
    Reserves post_reserves;
    /// Output per unit input; empty when the input is zero.
    std::optional<double> avg_price;
    /// The whole counter reserve was paid out because no interior output
    /// restores the pre-trade utility (possible only without UfB).
    bool exhausts_reserve = false;
    /// The exact remaining reserve lies below the smallest positive double;
    /// the quote is the best representable one and post_reserves keeps the
    /// smallest feasible remaining reserve found.
    bool below_resolution = false;
};

/// Y(x; a, b): units of B paid for depositing x units of A. Largest y in
/// [0, b] with u(a + x, b - y) >= u(a, b).
SwapQuote swap_y(const AmmModel& model, double x, Reserves r);

/// X(y; a, b): units of A paid for depositing y units of B.
SwapQuote swap_x(const AmmModel& model, double y, Reserves r);

/// X(Y(x; a, b); a + x, b - Y(x; a, b)).
double round_trip(const AmmModel& model, double x, Reserves r);

struct PoolingPlan {
    double delta_a = 0.0;  // alpha
    double delta_b = 0.0;  // beta
    double price_before = 0.0;
    double price_after = 0.0;
};

/// Deposit alpha units of A together with the beta units of B that leave the
/// oracle unchanged. Scale-invariant models (and mStable, whose price is
/// constant) use beta = (b / a) alpha; other models solve for beta.
/// Throws InfeasiblePooling when no beta attains the price.
PoolingPlan pool_deposit(const AmmModel& model, Reserves r, double delta_a);

/// Mirror of pool_deposit: deposit beta units of B and solve for alpha.
PoolingPlan pool_deposit_b(const AmmModel& model, Reserves r, double delta_b);

}  // namespace cfmm
