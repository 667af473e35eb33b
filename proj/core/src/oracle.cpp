#include "cfmm/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "cfmm/errors.hpp"
#include "utility_expr.hpp"

namespace cfmm {

namespace {

double sinh_marginal(double z, const SinhUtility& s) {
    const double w = s.C * std::pow(z, s.q);
    return s.C * s.q * std::pow(z, s.q - 1.0) / std::tanh(w);
}

double dodo_price(double x, double y, const params::Dodo& d) {
    const double X = d.external_price * x;
    if (d.C == 0.0) return d.external_price;
    if (X <= y) {
        const double g = detail::dodo_half_depth(X, y, d.C);
        return d.external_price * (2.0 * (1.0 - d.C) * (X - g) + y) / X;
    }
    const double g = detail::dodo_half_depth(y, X, d.C);
    return d.external_price * y / (2.0 * (1.0 - d.C) * (y - g) + X);
}

}  // namespace

double price(const AmmModel& model, Reserves r) {
    require_interior(r, "oracle reserves");
    const double x = r.a;
    const double y = r.b;
    return std::visit(
        [&](const auto& m) -> double {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, params::UniswapV2>) {
                return y / x;
            } else if constexpr (std::is_same_v<M, params::Balancer>) {
                return m.w * y / ((1.0 - m.w) * x);
            } else if constexpr (std::is_same_v<M, params::UniswapV3>) {
                return (m.beta + y) / (m.alpha + x);
            } else if constexpr (std::is_same_v<M, params::MStable>) {
                return 1.0;
            } else if constexpr (std::is_same_v<M, params::StableSwap>) {
                return (m.C + y) / (m.C + x);
            } else if constexpr (std::is_same_v<M, params::LStableSwap>) {
                return y * ((m.C + 1.0) * x + y) / (x * (x + (m.C + 1.0) * y));
            } else if constexpr (std::is_same_v<M, params::Curve>) {
                const double D = curve_invariant(x, y, m.C);
                return y * (m.C * (2.0 * x + y) - (m.C - 1.0) * D) /
                       (x * (m.C * (x + 2.0 * y) - (m.C - 1.0) * D));
            } else if constexpr (std::is_same_v<M, params::Dodo>) {
                return dodo_price(x, y, m);
            } else {
                if (std::holds_alternative<LogUtility>(m.U)) return y / x;
                if (const auto* s = std::get_if<SinhUtility>(&m.U)) {
                    return sinh_marginal(x, *s) / sinh_marginal(y, *s);
                }
                const Gradient g = utility_gradient(model, r);
                return g.a / g.b;
            }
        },
        model.params());
}

OraclePoint oracle_point(const AmmModel& model, Reserves r) {
    const UtilityJet j = utility_jet(model, r);
    const double uA = j.eval.grad.a;
    const double uB = j.eval.grad.b;
    const Hessian& H = j.eval.hess;
    const ThirdPartials& T = j.third;

    // P = N / D with N = u_A, D = u_B.
    OraclePoint o;
    o.source = j.third_source;
    o.price = price(model, r);
    const double Q = uA / uB;
    const double NA = H.aa, NB = H.ab, DA = H.ab, DB = H.bb;
    o.p_a = (NA - Q * DA) / uB;
    o.p_b = (NB - Q * DB) / uB;
    o.p_aa = (T.aaa - 2.0 * o.p_a * DA - Q * T.aab) / uB;
    o.p_ab = (T.aab - o.p_b * DA - o.p_a * DB - Q * T.abb) / uB;
    o.p_bb = (T.abb - 2.0 * o.p_b * DB - Q * T.bbb) / uB;
    return o;
}

PricePartials price_partials(const AmmModel& model, Reserves r) {
    require_interior(r, "oracle reserves");
    const UtilityEval e = evaluate(model, r);
    const double uA = e.grad.a;
    const double uB = e.grad.b;
    return {(uB * e.hess.aa - uA * e.hess.ab) / (uB * uB),
            (uB * e.hess.ab - uA * e.hess.bb) / (uB * uB)};
}

PriceSecondPartials price_second_partials(const AmmModel& model, Reserves r) {
    const OraclePoint o = oracle_point(model, r);
    return {o.p_aa, o.p_ab, o.p_bb};
}

double liquidity_condition(const OraclePoint& o) {
    return o.p_b * o.p_aa - (o.price * o.p_b + o.p_a) * o.p_ab + o.price * o.p_a * o.p_bb;
}

double liquidity_condition(const AmmModel& model, Reserves r) {
    return liquidity_condition(oracle_point(model, r));
}

double liquidity_condition_scale(const OraclePoint& o) {
    return std::max({1.0, std::abs(o.p_b * o.p_aa), std::abs(o.price * o.p_b * o.p_ab),
                     std::abs(o.p_a * o.p_ab), std::abs(o.price * o.p_a * o.p_bb)});
}

}  // namespace cfmm
