#include "cfmm/swap.hpp"

#include <cmath>
#include <sstream>

#include "cfmm/errors.hpp"
#include "cfmm/oracle.hpp"

namespace cfmm {

namespace {

void require_amount(double v, const char* what) {
    if (!std::isfinite(v) || v < 0.0) {
        std::ostringstream os;
        os.precision(12);
        os << what << " must be finite and >= 0, got " << v;
        throw DomainError(os.str());
    }
}

struct Solved {
    double out;
    double left;  // remaining paying reserve, carried exactly
    bool exhausts;
    bool below_resolution = false;
};

// Largest payout in [0, cap] keeping utility at or above its pre-trade level,
// solved for the remaining reserve w = cap - out so that nearly drained pools
// keep full relative precision in w. `pay_b` selects which reserve pays. Only
// the paying reserve needs to be positive, which lets round_trip chain off a
// reserve-exhausting quote.
Solved solve_payout(const AmmModel& model, double in, Reserves r, bool pay_b) {
    const double cap = pay_b ? r.b : r.a;
    auto point = [&](double w) {
        return pay_b ? Reserves{r.a + in, w} : Reserves{w, r.b + in};
    };
    const double u0 = utility(model, r);
    auto g = [&](double w) { return utility(model, point(w)) - u0; };

    const double gcap = g(cap);
    const double g0 = g(0.0);
    if (g0 >= 0.0) {
        if (utility(model, point(0.0)) == utility(model, point(cap))) {
            throw ModelViolation("utility is flat in the paid asset; strict monotonicity fails");
        }
        return {cap, 0.0, true};
    }
    if (gcap < -1e-12 * (1.0 + std::abs(u0))) {
        throw ModelViolation("utility decreases in the deposited asset");
    }
    if (in == 0.0) return {0.0, cap, false};

    // hi stays feasible throughout.
    double lo = 0.0;
    double hi = cap;
    for (int i = 0; i < 200 && hi - lo > 1e-12 * cap; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) >= 0.0 ? hi : lo) = mid;
    }
    bool underflow = false;
    if (lo == 0.0) {
        // Root below the linear resolution: bracket it geometrically.
        double t = hi;
        while (t > 0.0 && g(t) >= 0.0) {
            hi = t;
            t *= 1e-8;
        }
        lo = t;
        underflow = lo == 0.0;
    }
    // The linear phase leaves a bracket that can still be wide relative to
    // a root near 1e-12 cap; refine geometrically.
    if (lo > 0.0) {
        for (int i = 0; i < 200 && hi / lo - 1.0 > 1e-13; ++i) {
            const double mid = std::sqrt(lo) * std::sqrt(hi);  // lo * hi may underflow
            if (mid <= lo || mid >= hi) break;
            (g(mid) >= 0.0 ? hi : lo) = mid;
        }
    }

    // Newton polish: g'(w) = u_pay.
    double w = hi;
    double gw = g(w);
    for (int i = 0; i < 6 && gw != 0.0; ++i) {
        const Gradient d = utility_gradient(model, point(w));
        const double slope = pay_b ? d.b : d.a;
        if (!(slope > 0.0) || !std::isfinite(slope)) break;
        const double next = w - gw / slope;
        if (!(next >= lo && next <= hi) || next == w || next <= 0.0) break;
        const double gn = g(next);
        if (!(std::abs(gn) < std::abs(gw))) break;
        w = next;
        gw = gn;
    }
    return {cap - w, w, false, underflow};
}

SwapQuote make_quote(double in, Solved s, Reserves r, bool pay_b) {
    SwapQuote q;
    q.input_amount = in;
    q.output_amount = s.out;
    q.exhausts_reserve = s.exhausts;
    q.below_resolution = s.below_resolution;
    q.post_reserves = pay_b ? Reserves{r.a + in, s.left} : Reserves{s.left, r.b + in};
    if (in > 0.0) q.avg_price = s.out / in;
    return q;
}

}  // namespace

SwapQuote swap_y(const AmmModel& model, double x, Reserves r) {
    require_amount(x, "swap input x");
    require_interior(r);
    return make_quote(x, solve_payout(model, x, r, true), r, true);
}

SwapQuote swap_x(const AmmModel& model, double y, Reserves r) {
    require_amount(y, "swap input y");
    require_interior(r);
    return make_quote(y, solve_payout(model, y, r, false), r, false);
}

double round_trip(const AmmModel& model, double x, Reserves r) {
    const SwapQuote first = swap_y(model, x, r);
    const Reserves mid = first.post_reserves;
    return solve_payout(model, first.output_amount, mid, false).out;
}

namespace {

bool proportional_pooling(const AmmModel& model) {
    return model.kind() == ModelKind::MStable || model.claims(Axiom::ScaleInvariant);
}

// Root of a monotone function f on [0, inf) with f(0) <= 0, by geometric
// bracketing then bisection. Returns nullopt when no bracket is found.
template <class F>
std::optional<double> monotone_root(F f, double guess, double* last_hi) {
    double lo = 0.0;
    double hi = guess > 0.0 ? guess : 1.0;
    int grow = 0;
    while (f(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++grow > 400 || !std::isfinite(hi)) {
            *last_hi = lo;
            return std::nullopt;
        }
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

PoolingPlan pool_deposit(const AmmModel& model, Reserves r, double delta_a) {
    require_amount(delta_a, "pooling deposit alpha");
    require_interior(r);
    PoolingPlan plan;
    plan.delta_a = delta_a;
    plan.price_before = price(model, r);
    const double A = r.a + delta_a;
    if (proportional_pooling(model) || delta_a == 0.0) {
        plan.delta_b = r.b / r.a * delta_a;
    } else {
        auto f = [&](double beta) { return price(model, {A, r.b + beta}) - plan.price_before; };
        if (f(0.0) >= 0.0) {
            plan.delta_b = 0.0;
        } else {
            double last = 0.0;
            auto beta = monotone_root(f, r.b / r.a * delta_a, &last);
            if (!beta) {
                const double lo = price(model, {A, r.b});
                const double hi = price(model, {A, r.b + last});
                std::ostringstream os;
                os.precision(12);
                os << "no deposit of B restores price " << plan.price_before
                   << "; achievable range [" << lo << ", " << hi << "]";
                throw InfeasiblePooling(os.str(), lo, hi);
            }
            plan.delta_b = *beta;
        }
    }
    plan.price_after = price(model, {A, r.b + plan.delta_b});
    return plan;
}

PoolingPlan pool_deposit_b(const AmmModel& model, Reserves r, double delta_b) {
    require_amount(delta_b, "pooling deposit beta");
    require_interior(r);
    PoolingPlan plan;
    plan.delta_b = delta_b;
    plan.price_before = price(model, r);
    const double B = r.b + delta_b;
    if (proportional_pooling(model) || delta_b == 0.0) {
        plan.delta_a = r.a / r.b * delta_b;
    } else {
        auto f = [&](double alpha) { return plan.price_before - price(model, {r.a + alpha, B}); };
        if (f(0.0) >= 0.0) {
            plan.delta_a = 0.0;
        } else {
            double last = 0.0;
            auto alpha = monotone_root(f, r.a / r.b * delta_b, &last);
            if (!alpha) {
                const double hi = price(model, {r.a, B});
                const double lo = price(model, {r.a + last, B});
                std::ostringstream os;
                os.precision(12);
                os << "no deposit of A restores price " << plan.price_before
                   << "; achievable range [" << lo << ", " << hi << "]";
                throw InfeasiblePooling(os.str(), lo, hi);
            }
            plan.delta_a = *alpha;
        }
    }
    plan.price_after = price(model, {r.a + plan.delta_a, B});
    return plan;
}

}  // namespace cfmm
