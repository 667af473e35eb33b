#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cfmm/fees.hpp"
#include "cfmm/model.hpp"

namespace cfmm {

/// A price-preserving injection (alpha, beta) into reserves (a, b), priced
/// with fee level gamma. Construction rejects injections that move the
/// oracle by more than 1e-9 relative.
class DivergenceSetup {
public:
    DivergenceSetup(AmmModel model, FeeLevel gamma, Reserves base, double alpha, double beta);

    /// alpha = delta a, beta = delta b.
    static DivergenceSetup proportional(AmmModel model, FeeLevel gamma, Reserves base,
                                        double delta);
    /// Deposit alpha of A; beta from pool_deposit.
    static DivergenceSetup pool_a(AmmModel model, FeeLevel gamma, Reserves base, double alpha);
    /// Deposit beta of B; alpha from pool_deposit_b.
    static DivergenceSetup pool_b(AmmModel model, FeeLevel gamma, Reserves base, double beta);

    const AmmModel& model() const noexcept { return model_; }
    FeeLevel gamma() const noexcept { return gamma_; }
    Reserves base() const noexcept { return base_; }
    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    /// Set when beta / b equals alpha / a.
    std::optional<double> delta() const noexcept { return delta_; }

    Reserves pooled() const noexcept { return {base_.a + alpha_, base_.b + beta_}; }
    double initial_price() const noexcept { return p0_; }
    /// Share of the pooled value owned by the injection at the initial price.
    double pool_share() const noexcept { return share_; }

private:
    AmmModel model_;
    FeeLevel gamma_;
    Reserves base_;
    double alpha_;
    double beta_;
    std::optional<double> delta_;
    double p0_;
    double share_;
};

/// Pooled reserves after a signed trade: z >= 0 deposits z of A and pays
/// Y_gamma(z); z < 0 deposits -z of B and pays X_gamma(-z).
Reserves post_trade_reserves(const DivergenceSetup& s, double z);

/// Signed trade z whose post-trade oracle equals p (z > 0 below the initial
/// price, z < 0 above). Throws UnreachablePrice when no trade attains p.
double solve_trade_for_price(const DivergenceSetup& s, double p);

/// Divergence loss as a function of the trade, zero at z = 0.
double divergence_at_trade(const DivergenceSetup& s, double z);

/// Divergence loss as a function of the post-trade price.
double divergence_at_price(const DivergenceSetup& s, double p);

/// delta / (1 + delta) [Y_gamma(x_p) - p x_p] (mirrored above the initial
/// price). Valid for scale-invariant models with a proportional injection;
/// throws DomainError when the setup has no delta.
double divergence_simplified(const DivergenceSetup& s, double p);

/// Prices next to the initial price where the divergence loss is negative.
/// A side without gains next to the initial price contributes the initial
/// price itself as endpoint (trade 0).
struct GainInterval {
    double p_low = 0.0;   // p_*
    double p_high = 0.0;  // p^*
    double z_low = 0.0;   // trade reaching p_* (>= 0)
    double z_high = 0.0;  // trade reaching p^* (<= 0)
};

/// Scalar roots of 1 - 2t^(1-g) + t^(2-g) on (0, 1) and of 1 - 2t + t^(2-g)
/// on (1, inf) for the constant-product family, g in (0, 1).
double constant_product_t_low(double gamma);
double constant_product_t_high(double gamma);

/// Price interval around the initial price where pooling gains. Closed form
/// for the constant-product family with gamma in (0, 1); numeric otherwise.
std::optional<GainInterval> gain_interval(const DivergenceSetup& s);

/// Numeric search on both sides of z = 0: scan until the price has moved by
/// a factor 1e3, then bisect the first sign change of the divergence loss.
/// Empty when neither side gains, or when gains persist over a whole scan.
std::optional<GainInterval> gain_interval_numeric(const DivergenceSetup& s);

enum class CoordinateKind { Trade, Price };

struct DivergenceSample {
    double coordinate = 0.0;
    double delta = 0.0;
    std::string branch;  // "buyA" (z < 0), "sellA" (z > 0) or "origin"
};

struct DivergenceCurve {
    CoordinateKind coordinate_kind = CoordinateKind::Trade;
    std::vector<DivergenceSample> samples;  // ordered by coordinate
    std::optional<GainInterval> gain_interval;
};

/// n evenly spaced trades over [z_min, z_max] plus z = 0 when it lies inside.
DivergenceCurve sample_divergence_trades(const DivergenceSetup& s, double z_min, double z_max,
                                         int n, bool with_gain_interval = true);

/// Divergence loss at the given prices.
DivergenceCurve sample_divergence_prices(const DivergenceSetup& s,
                                         const std::vector<double>& prices,
                                         bool with_gain_interval = true);

}  // namespace cfmm
