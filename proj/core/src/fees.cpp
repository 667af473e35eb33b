#include "cfmm/fees.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cfmm/errors.hpp"
#include "cfmm/oracle.hpp"
#include "cfmm/swap.hpp"
#include "utility_expr.hpp"

namespace cfmm {

FeeLevel::FeeLevel(double gamma) : gamma_(gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        std::ostringstream os;
        os.precision(12);
        os << "fee level must lie in [0,1], got " << gamma;
        throw DomainError(os.str());
    }
}

namespace {

void require_amount(double v, const char* what) {
    if (!std::isfinite(v) || v < 0.0) {
        std::ostringstream os;
        os.precision(12);
        os << what << " must be finite and >= 0, got " << v;
        throw DomainError(os.str());
    }
}

bool constant_product(const AmmModel& m) {
    if (m.kind() == ModelKind::UniswapV2) return true;
    const auto* s = std::get_if<params::Sdamm>(&m.params());
    return s != nullptr && std::holds_alternative<LogUtility>(s->U);
}

const SinhUtility* sinh_q1(const AmmModel& m) {
    const auto* s = std::get_if<params::Sdamm>(&m.params());
    if (s == nullptr) return nullptr;
    const auto* u = std::get_if<SinhUtility>(&s->U);
    return (u != nullptr && u->q == 1.0) ? u : nullptr;
}

// asinh(exp(L)) without overflow.
double asinh_exp(double L) {
    if (L > 0.0) return L + std::log1p(std::sqrt(1.0 + std::exp(-2.0 * L)));
    return std::asinh(std::exp(L));
}

// Payout of the closed forms, paying reserve `pay` for input `in` deposited
// on reserve `keep`.
std::optional<double> closed_payout(const AmmModel& m, double g, double in, double keep,
                                    double pay) {
    if (constant_product(m)) {
        return -pay * std::expm1(-(1.0 - g) * std::log1p(in / keep));
    }
    if (const auto* s = sinh_q1(m)) {
        const double C = s->C;
        const double L = (1.0 - g) * (detail::log_sinh(C * keep) - detail::log_sinh(C * (keep + in))) +
                         detail::log_sinh(C * pay);
        return pay - asinh_exp(L) / C;
    }
    return std::nullopt;
}

FeeSwapResult trivial(double in, Reserves r, bool pay_b, FeeMethod method) {
    FeeSwapResult res;
    res.input = in;
    res.method = method;
    res.post_reserves = pay_b ? Reserves{r.a + in, r.b} : Reserves{r.a, r.b + in};
    return res;
}

// The state is v = log(w / cap), w the remaining paying reserve, so that a
// nearly drained pool keeps full relative precision in w:
//   dv/ds = -(1 - gamma) P / w   (P replaced by 1/P when A pays).
FeeSwapResult integrate_fee(const AmmModel& model, double g, double in, Reserves r, bool pay_b,
                            const FeeOptions& opts) {
    const double cap = pay_b ? r.b : r.a;
    auto state = [&](double s, double w) {
        return pay_b ? Reserves{r.a + s, w} : Reserves{w, r.b + s};
    };
    ScalarRhs rhs = [&](double s, double v) -> std::optional<double> {
        const double w = cap * std::exp(v);
        if (!(w >= std::numeric_limits<double>::min()) || !(v <= 0.0)) return std::nullopt;
        const double p = price(model, state(s, w));
        if (!std::isfinite(p) || !(p > 0.0)) return std::nullopt;
        const double rate = -(1.0 - g) * (pay_b ? p : 1.0 / p) / w;
        if (!std::isfinite(rate)) return std::nullopt;
        return rate;
    };
    OdeOptions o;
    o.rtol = opts.rtol;
    o.atol = 1e-12;
    const OdeResult res = integrate_dp45(rhs, 0.0, 0.0, in, o, opts.checkpoints);
    auto payout = [cap](double v) { return -cap * std::expm1(v); };

    FeeSwapResult out;
    out.input = in;
    out.method = FeeMethod::Ode;
    out.stats = res.stats;
    for (const auto& cp : res.checkpoints) out.path.push_back({cp.t, payout(cp.y)});
    double w = cap * std::exp(res.y);
    if (res.status != OdeStatus::Completed) {
        // Payout is nondecreasing in the input, so once the remaining reserve
        // is under half an ulp of the cap the rounded payout is the cap. That
        // only stands if the reserve cannot reach zero: the path never lowers
        // utility, and utility is -inf on the drained axis.
        const bool below_ulp = w < 0.5 * std::numeric_limits<double>::epsilon() * cap;
        const bool undrainable = utility(model, state(in, 0.0)) == -std::numeric_limits<double>::infinity();
        if (!(below_ulp && undrainable && res.status == OdeStatus::StepUnderflow)) {
            std::ostringstream os;
            os.precision(12);
            const double y = payout(res.y);
            if (y >= cap * (1.0 - 1e-9)) {
                os << "fee swap exhausts the paying reserve " << cap << " at input " << res.t;
            } else if (res.status == OdeStatus::TooManySteps) {
                os << "fee swap integration exceeded its step budget at input " << res.t;
            } else {
                os << "fee swap step size underflow at input " << res.t << " (output " << y << ")";
            }
            throw IntegrationFailure(os.str(), res.t, y);
        }
        out.below_resolution = true;
        // Pad the path with the checkpoints the integration did not reach.
        for (double t : opts.checkpoints) {
            if (t > res.t && t <= in) out.path.push_back({t, cap});
        }
    }
    out.output = out.below_resolution ? cap : payout(res.y);
    out.post_reserves = state(in, w);
    return out;
}

FeeSwapResult fee_swap(const AmmModel& model, FeeLevel gamma, double in, Reserves r, bool pay_b,
                       const FeeOptions& opts) {
    require_amount(in, pay_b ? "fee swap input x" : "fee swap input y");
    require_interior(r);
    const double g = gamma.gamma();
    if (g == 1.0 || in == 0.0) return trivial(in, r, pay_b, FeeMethod::Zero);
    if (g == 0.0 && !opts.force_ode) {
        const SwapQuote q = pay_b ? swap_y(model, in, r) : swap_x(model, in, r);
        FeeSwapResult res;
        res.input = in;
        res.output = q.output_amount;
        res.post_reserves = q.post_reserves;
        res.method = FeeMethod::FeeLess;
        return res;
    }
    if (opts.prefer_closed_form) {
        auto c = pay_b ? swap_y_fee_closed(model, gamma, in, r) : swap_x_fee_closed(model, gamma, in, r);
        if (c) return *c;
    }
    return integrate_fee(model, g, in, r, pay_b, opts);
}

std::optional<FeeSwapResult> fee_closed(const AmmModel& model, FeeLevel gamma, double in,
                                        Reserves r, bool pay_b) {
    require_amount(in, pay_b ? "fee swap input x" : "fee swap input y");
    require_interior(r);
    const auto out = pay_b ? closed_payout(model, gamma.gamma(), in, r.a, r.b)
                           : closed_payout(model, gamma.gamma(), in, r.b, r.a);
    if (!out) return std::nullopt;
    FeeSwapResult res = trivial(in, r, pay_b, FeeMethod::ClosedForm);
    res.output = *out;
    if (pay_b) res.post_reserves.b -= *out;
    else res.post_reserves.a -= *out;
    return res;
}

}  // namespace

FeeSwapResult swap_y_fee(const AmmModel& model, FeeLevel gamma, double x, Reserves r,
                         const FeeOptions& opts) {
    return fee_swap(model, gamma, x, r, true, opts);
}

FeeSwapResult swap_x_fee(const AmmModel& model, FeeLevel gamma, double y, Reserves r,
                         const FeeOptions& opts) {
    return fee_swap(model, gamma, y, r, false, opts);
}

std::optional<FeeSwapResult> swap_y_fee_closed(const AmmModel& model, FeeLevel gamma, double x,
                                               Reserves r) {
    return fee_closed(model, gamma, x, r, true);
}

std::optional<FeeSwapResult> swap_x_fee_closed(const AmmModel& model, FeeLevel gamma, double y,
                                               Reserves r) {
    return fee_closed(model, gamma, y, r, false);
}

AltFeeQuote swap_fee_on_sold(const AmmModel& model, FeeLevel gamma, double x, Reserves r) {
    require_amount(x, "swap input x");
    const double g = gamma.gamma();
    const SwapQuote q = swap_y(model, (1.0 - g) * x, r);
    AltFeeQuote res;
    res.output = q.output_amount;
    res.fee_a = g * x;
    res.post_reserves = {r.a + x, q.post_reserves.b};
    return res;
}

AltFeeQuote swap_fee_on_bought(const AmmModel& model, FeeLevel gamma, double x, Reserves r) {
    const double g = gamma.gamma();
    const SwapQuote q = swap_y(model, x, r);
    AltFeeQuote res;
    res.output = (1.0 - g) * q.output_amount;
    res.fee_b = g * q.output_amount;
    res.post_reserves = {r.a + x, r.b - res.output};
    return res;
}

BidAsk bid_ask(const AmmModel& model, FeeLevel gamma, Reserves r) {
    const double g = gamma.gamma();
    if (!(g > 0.0 && g < 1.0)) throw DomainError("bid/ask requires a fee level in (0,1)");
    const double p = price(model, r);
    return {(1.0 - g) * p, p / (1.0 - g)};
}

}  // namespace cfmm
