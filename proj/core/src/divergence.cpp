#include "cfmm/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cfmm/errors.hpp"
#include "cfmm/oracle.hpp"
#include "cfmm/swap.hpp"

namespace cfmm {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

bool constant_product(const AmmModel& m) {
    if (m.kind() == ModelKind::UniswapV2) return true;
    const auto* s = std::get_if<params::Sdamm>(&m.params());
    return s != nullptr && std::holds_alternative<LogUtility>(s->U);
}

// Post-trade reserves for depositing `amount` into `from` on one side, or
// nothing when the trade exhausts the paying reserve.
std::optional<Reserves> step(const DivergenceSetup& s, Reserves from, double amount, bool sell_a) {
    if (amount == 0.0) return from;
    try {
        if (s.gamma().gamma() == 0.0) {
            const SwapQuote q = sell_a ? swap_y(s.model(), amount, from) : swap_x(s.model(), amount, from);
            if (q.exhausts_reserve) return std::nullopt;
            return q.post_reserves;
        }
        const FeeSwapResult r = sell_a ? swap_y_fee(s.model(), s.gamma(), amount, from)
                                       : swap_x_fee(s.model(), s.gamma(), amount, from);
        if (!(r.post_reserves.a > 0.0 && r.post_reserves.b > 0.0)) return std::nullopt;
        return r.post_reserves;
    } catch (const IntegrationFailure&) {
        return std::nullopt;
    }
}

// Post-trade states at ascending positive amounts, from one integration
// when the fee path is used.
std::vector<Reserves> side_states(const DivergenceSetup& s, bool sell_a,
                                  const std::vector<double>& amounts) {
    std::vector<Reserves> out;
    if (amounts.empty()) return out;
    const Reserves P = s.pooled();
    const double g = s.gamma().gamma();
    if (g == 0.0 || g == 1.0) {
        for (double z : amounts) {
            auto st = step(s, P, z, sell_a);
            if (!st) throw DomainError("trade of size " + fmt(z) + " exhausts the pool");
            out.push_back(*st);
        }
        return out;
    }
    FeeOptions o;
    o.checkpoints = amounts;
    const FeeSwapResult r = sell_a ? swap_y_fee(s.model(), s.gamma(), amounts.back(), P, o)
                                   : swap_x_fee(s.model(), s.gamma(), amounts.back(), P, o);
    for (const auto& cp : r.path) {
        out.push_back(sell_a ? Reserves{P.a + cp.t, P.b - cp.y} : Reserves{P.a - cp.y, P.b + cp.t});
    }
    return out;
}

double delta_at(const DivergenceSetup& s, Reserves post, double p) {
    return p * s.alpha() + s.beta() - s.pool_share() * (p * post.a + post.b);
}

struct Solved {
    double z;
    Reserves post;
};

Solved solve_state(const DivergenceSetup& s, double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("target price must be positive, got " + fmt(p));
    const double P0 = s.initial_price();
    const Reserves start = s.pooled();
    if (p == P0) return {0.0, start};
    const bool sell_a = p < P0;
    const double scale = sell_a ? start.a : start.b;
    auto beyond = [&](double pr) { return sell_a ? pr <= p : pr >= p; };

    // Walk outward, continuing each trade from the last state short of p.
    double lo = 0.0;
    Reserves lo_state = start;
    double hi = 1e-3 * scale;
    Reserves hi_state{};
    for (;;) {
        auto st = step(s, lo_state, hi - lo, sell_a);
        const double last = price(s.model(), lo_state);
        if (!st || hi > 1e30 * scale) {
            const double lo_p = sell_a ? last : P0;
            const double hi_p = sell_a ? P0 : last;
            throw UnreachablePrice("price " + fmt(p) + " is not reachable by a single trade; reachable [" +
                                       fmt(lo_p) + ", " + fmt(hi_p) + "] on this side",
                                   lo_p, hi_p);
        }
        if (beyond(price(s.model(), *st))) {
            hi_state = *st;
            break;
        }
        lo = hi;
        lo_state = *st;
        hi *= 4.0;
    }

    double best_z = hi;
    Reserves best = hi_state;
    double best_err = std::abs(price(s.model(), hi_state) - p);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        auto st = step(s, lo_state, mid - lo, sell_a);
        if (!st) {
            hi = mid;
            continue;
        }
        const double pr = price(s.model(), *st);
        const double err = std::abs(pr - p);
        if (err < best_err) {
            best_err = err;
            best_z = mid;
            best = *st;
        }
        if (err <= 1e-13 * p) break;
        if (beyond(pr)) {
            hi = mid;
        } else {
            lo = mid;
            lo_state = *st;
        }
    }
    return {sell_a ? best_z : -best_z, best};
}

double bisect_sign_change(const DivergenceSetup& s, double lo, double hi, bool sell_a) {
    const Reserves P = s.pooled();
    auto f = [&](double z) {
        auto st = step(s, P, z, sell_a);
        return delta_at(s, *st, price(s.model(), *st));
    };
    // f(lo) < 0 <= f(hi)
    for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Amount beyond which the oracle has moved by `factor`, or the largest
// feasible amount before exhaustion.
double search_limit(const DivergenceSetup& s, bool sell_a, double factor) {
    const Reserves P = s.pooled();
    const double P0 = s.initial_price();
    const double scale = sell_a ? P.a : P.b;
    double z = 1e-6 * scale;
    double last_ok = 0.0;
    while (z < 1e15 * scale) {
        auto st = step(s, P, z, sell_a);
        if (!st) break;
        last_ok = z;
        const double pr = price(s.model(), *st);
        if (sell_a ? pr <= P0 / factor : pr >= P0 * factor) break;
        z *= 2.0;
    }
    return last_ok;
}

// Sign-change location on one side of z = 0: no gains next to the origin,
// a root, or gains persisting over the whole search range.
struct SideRoot {
    enum Kind { NoGain, Root, Open } kind = NoGain;
    double z = 0.0;
};

SideRoot side_root_within(const DivergenceSetup& s, bool sell_a, double factor) {
    const Reserves P = s.pooled();
    const double scale = sell_a ? P.a : P.b;
    const double z_min = 1e-6 * scale;
    const double z_max = search_limit(s, sell_a, factor);
    if (!(z_max > z_min)) return {};
    constexpr int n = 400;
    std::vector<double> zs(n);
    const double ratio = std::log(z_max / z_min) / (n - 1);
    for (int i = 0; i < n; ++i) zs[i] = z_min * std::exp(ratio * i);
    zs.back() = z_max;
    const auto states = side_states(s, sell_a, zs);
    auto d = [&](int i) { return delta_at(s, states[i], price(s.model(), states[i])); };
    if (!(d(0) < 0.0)) return {};
    for (int i = 1; i < n; ++i) {
        if (d(i) >= 0.0) return {SideRoot::Root, bisect_sign_change(s, zs[i - 1], zs[i], sell_a)};
    }
    return {SideRoot::Open, z_max};
}

// The scan starts where the oracle has moved by 1e3 and widens while the
// gains persist to the end of the range.
SideRoot side_root(const DivergenceSetup& s, bool sell_a) {
    SideRoot r;
    for (double factor : {1e3, 1e6, 1e12}) {
        r = side_root_within(s, sell_a, factor);
        if (r.kind != SideRoot::Open) break;
    }
    return r;
}

}  // namespace

DivergenceSetup::DivergenceSetup(AmmModel model, FeeLevel gamma, Reserves base, double alpha,
                                 double beta)
    : model_(std::move(model)), gamma_(gamma), base_(base), alpha_(alpha), beta_(beta) {
    require_interior(base_, "base reserves");
    if (!(std::isfinite(alpha) && std::isfinite(beta) && alpha >= 0.0 && beta >= 0.0) ||
        (alpha == 0.0 && beta == 0.0)) {
        throw DomainError("injection must be nonnegative, finite and not both zero");
    }
    p0_ = price(model_, base_);
    const double pooled_price = price(model_, pooled());
    if (std::abs(pooled_price - p0_) > 1e-9 * p0_) {
        throw DomainError("injection (" + fmt(alpha) + ", " + fmt(beta) +
                          ") is not price-preserving: price moves from " + fmt(p0_) + " to " +
                          fmt(pooled_price));
    }
    share_ = (p0_ * alpha_ + beta_) / (p0_ * (base_.a + alpha_) + base_.b + beta_);
    if (alpha_ > 0.0 && std::abs(beta_ * base_.a - alpha_ * base_.b) <= 1e-15 * beta_ * base_.a) {
        delta_ = alpha_ / base_.a;
    }
}

DivergenceSetup DivergenceSetup::proportional(AmmModel model, FeeLevel gamma, Reserves base,
                                              double delta) {
    if (!(std::isfinite(delta) && delta > 0.0)) throw DomainError("delta must be > 0");
    require_interior(base, "base reserves");
    DivergenceSetup s(std::move(model), gamma, base, delta * base.a, delta * base.b);
    s.delta_ = delta;
    return s;
}

DivergenceSetup DivergenceSetup::pool_a(AmmModel model, FeeLevel gamma, Reserves base,
                                        double alpha) {
    const PoolingPlan plan = pool_deposit(model, base, alpha);
    return DivergenceSetup(std::move(model), gamma, base, plan.delta_a, plan.delta_b);
}

DivergenceSetup DivergenceSetup::pool_b(AmmModel model, FeeLevel gamma, Reserves base,
                                        double beta) {
    const PoolingPlan plan = pool_deposit_b(model, base, beta);
    return DivergenceSetup(std::move(model), gamma, base, plan.delta_a, plan.delta_b);
}

Reserves post_trade_reserves(const DivergenceSetup& s, double z) {
    if (!std::isfinite(z)) throw DomainError("trade must be finite");
    auto st = step(s, s.pooled(), std::abs(z), z >= 0.0);
    if (!st) throw DomainError("trade of size " + fmt(z) + " exhausts the pool");
    return *st;
}

double solve_trade_for_price(const DivergenceSetup& s, double p) { return solve_state(s, p).z; }

double divergence_at_trade(const DivergenceSetup& s, double z) {
    if (z == 0.0) return 0.0;
    const Reserves post = post_trade_reserves(s, z);
    return delta_at(s, post, price(s.model(), post));
}

double divergence_at_price(const DivergenceSetup& s, double p) {
    const Solved sol = solve_state(s, p);
    if (sol.z == 0.0) return 0.0;
    return delta_at(s, sol.post, p);
}

double divergence_simplified(const DivergenceSetup& s, double p) {
    if (!s.delta()) throw DomainError("simplified divergence needs a proportional injection");
    const double d = *s.delta();
    const Solved sol = solve_state(s, p);
    const Reserves P = s.pooled();
    if (sol.z == 0.0) return 0.0;
    if (sol.z > 0.0) {
        const double Y = P.b - sol.post.b;
        return d / (1.0 + d) * (Y - p * sol.z);
    }
    const double X = P.a - sol.post.a;
    return d / (1.0 + d) * (p * X + sol.z);
}

double constant_product_t_low(double g) {
    if (!(g > 0.0 && g < 1.0)) throw DomainError("fee level must lie in (0,1)");
    auto f = [g](double t) { return 1.0 - 2.0 * std::pow(t, 1.0 - g) + std::pow(t, 2.0 - g); };
    // f(0) = 1 and f is negative at its minimiser t_m.
    double lo = 0.0;
    double hi = 2.0 * (1.0 - g) / (2.0 - g);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double constant_product_t_high(double g) {
    if (!(g > 0.0 && g < 1.0)) throw DomainError("fee level must lie in (0,1)");
    auto f = [g](double t) { return 1.0 - 2.0 * t + std::pow(t, 2.0 - g); };
    double lo = std::pow(1.0 + g, 1.0 / (1.0 - g));
    double hi = lo + (lo * (1.0 - g) - 1.0) / (g * (1.0 - g));
    while (f(hi) < 0.0) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::optional<GainInterval> gain_interval(const DivergenceSetup& s) {
    const double g = s.gamma().gamma();
    if (!constant_product(s.model()) || !(g > 0.0 && g < 1.0)) return gain_interval_numeric(s);
    const double tl = constant_product_t_low(g);
    const double th = constant_product_t_high(g);
    const double P0 = s.initial_price();
    const Reserves P = s.pooled();
    GainInterval gi;
    gi.p_low = P0 * std::pow(tl, 2.0 - g);
    gi.p_high = P0 * std::pow(th, 2.0 - g);
    gi.z_low = P.a * (1.0 - tl) / tl;
    gi.z_high = -P.b * (th - 1.0);
    return gi;
}

std::optional<GainInterval> gain_interval_numeric(const DivergenceSetup& s) {
    const SideRoot lo = side_root(s, true);
    const SideRoot hi = side_root(s, false);
    if (lo.kind == SideRoot::Open || hi.kind == SideRoot::Open) return std::nullopt;
    if (lo.kind == SideRoot::NoGain && hi.kind == SideRoot::NoGain) return std::nullopt;
    GainInterval gi;
    gi.z_low = lo.z;
    gi.z_high = hi.kind == SideRoot::Root ? -hi.z : 0.0;
    gi.p_low = lo.kind == SideRoot::Root ? price(s.model(), post_trade_reserves(s, gi.z_low))
                                         : s.initial_price();
    gi.p_high = hi.kind == SideRoot::Root ? price(s.model(), post_trade_reserves(s, gi.z_high))
                                          : s.initial_price();
    return gi;
}

DivergenceCurve sample_divergence_trades(const DivergenceSetup& s, double z_min, double z_max,
                                         int n, bool with_gain_interval) {
    if (!(std::isfinite(z_min) && std::isfinite(z_max) && z_min <= z_max) || n < 1) {
        throw DomainError("trade sweep needs finite z_min <= z_max and at least one sample");
    }
    std::vector<double> zs;
    for (int i = 0; i < n; ++i) {
        zs.push_back(n == 1 ? z_min : z_min + (z_max - z_min) * i / (n - 1));
    }
    if (z_min <= 0.0 && z_max >= 0.0) zs.push_back(0.0);
    std::sort(zs.begin(), zs.end());
    zs.erase(std::unique(zs.begin(), zs.end()), zs.end());

    std::vector<double> pos;
    std::vector<double> neg;
    for (double z : zs) {
        if (z > 0.0) pos.push_back(z);
        if (z < 0.0) neg.push_back(-z);
    }
    std::reverse(neg.begin(), neg.end());
    const auto pos_states = side_states(s, true, pos);
    const auto neg_states = side_states(s, false, neg);

    DivergenceCurve c;
    c.coordinate_kind = CoordinateKind::Trade;
    for (std::size_t i = neg.size(); i-- > 0;) {
        const Reserves& st = neg_states[i];
        c.samples.push_back({-neg[i], delta_at(s, st, price(s.model(), st)), "buyA"});
    }
    if (z_min <= 0.0 && z_max >= 0.0) c.samples.push_back({0.0, 0.0, "origin"});
    for (std::size_t i = 0; i < pos.size(); ++i) {
        const Reserves& st = pos_states[i];
        c.samples.push_back({pos[i], delta_at(s, st, price(s.model(), st)), "sellA"});
    }
    if (with_gain_interval) c.gain_interval = gain_interval(s);
    return c;
}

DivergenceCurve sample_divergence_prices(const DivergenceSetup& s,
                                         const std::vector<double>& prices,
                                         bool with_gain_interval) {
    std::vector<double> ps = prices;
    std::sort(ps.begin(), ps.end());
    const double P0 = s.initial_price();
    DivergenceCurve c;
    c.coordinate_kind = CoordinateKind::Price;
    for (double p : ps) {
        const char* branch = p < P0 ? "sellA" : (p > P0 ? "buyA" : "origin");
        c.samples.push_back({p, divergence_at_price(s, p), branch});
    }
    if (with_gain_interval) c.gain_interval = gain_interval(s);
    return c;
}

}  // namespace cfmm
