#pragma once

#include <optional>
#include <vector>

#include "cfmm/model.hpp"
#include "cfmm/ode.hpp"

namespace cfmm {

/// Fraction gamma in [0, 1] withheld from each marginal unit.
class FeeLevel {
public:
    explicit FeeLevel(double gamma);
    double gamma() const noexcept { return gamma_; }

private:
    double gamma_;
};

enum class FeeMethod {
    Ode,         // integrated marginal-price ODE
    ClosedForm,  // explicit formula
    FeeLess,     // gamma = 0, delegated to the fee-less swap
    Zero         // gamma = 1 or zero input
};

struct FeeSwapResult {
    double input = 0.0;
    double output = 0.0;
    Reserves post_reserves;
    FeeMethod method = FeeMethod::Ode;
    OdeStats stats;
    /// Intermediate (input, output) states requested through FeeOptions.
    std::vector<OdeCheckpoint> path;
    /// Remaining paying reserve fell below double resolution before the end
    /// of the input; output is then the full reserve to rounding and
    /// post_reserves holds the last resolved (upper-bound) remaining reserve.
    bool below_resolution = false;
};

struct FeeOptions {
    /// Integrate even when gamma = 0.
    bool force_ode = false;
    /// Use the closed form when the model has one.
    bool prefer_closed_form = false;
    double rtol = 1e-10;
    /// Inputs at which to record the partial output along the integration.
    std::vector<double> checkpoints;
};

/// Y_gamma(x; a, b): solves Y' = (1 - gamma) P(a + s, b - Y), Y(0) = 0 on [0, x].
/// Throws IntegrationFailure when the step size underflows or the reserve is
/// exhausted.
FeeSwapResult swap_y_fee(const AmmModel& model, FeeLevel gamma, double x, Reserves r,
                         const FeeOptions& opts = {});

/// X_gamma(y; a, b): solves X' = (1 - gamma) / P(a - X, b + s), X(0) = 0 on [0, y].
FeeSwapResult swap_x_fee(const AmmModel& model, FeeLevel gamma, double y, Reserves r,
                         const FeeOptions& opts = {});

/// Explicit Y_gamma / X_gamma for the constant-product family (Uniswap V2 and
/// the log SDAMM) and the sinh SDAMM with q = 1. Empty for other models.
std::optional<FeeSwapResult> swap_y_fee_closed(const AmmModel& model, FeeLevel gamma, double x,
                                               Reserves r);
std::optional<FeeSwapResult> swap_x_fee_closed(const AmmModel& model, FeeLevel gamma, double y,
                                               Reserves r);

/// Quote under a fee that is not applied at the margin.
struct AltFeeQuote {
    double output = 0.0;
    Reserves post_reserves;
    double fee_a = 0.0;  // retained by the pool in A
    double fee_b = 0.0;  // retained by the pool in B
};

/// Fee taken from the sold asset: Y((1 - gamma) x; a, b). The pool keeps gamma x.
AltFeeQuote swap_fee_on_sold(const AmmModel& model, FeeLevel gamma, double x, Reserves r);

/// Fee taken from the bought asset: (1 - gamma) Y(x; a, b). The pool keeps gamma Y.
AltFeeQuote swap_fee_on_bought(const AmmModel& model, FeeLevel gamma, double x, Reserves r);

struct BidAsk {
    double bid = 0.0;
    double ask = 0.0;
};

/// bid = (1 - gamma) P, ask = P / (1 - gamma). Requires gamma in (0, 1).
BidAsk bid_ask(const AmmModel& model, FeeLevel gamma, Reserves r);

}  // namespace cfmm
