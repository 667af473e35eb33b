#include "cfmm/ode.hpp"

#include <algorithm>
#include <cmath>

namespace cfmm {

namespace {

// Dormand-Prince tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// Difference between the 5th and embedded 4th order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

OdeResult integrate_dp45(const ScalarRhs& f, double t0, double y0, double t1,
                         const OdeOptions& opts, const std::vector<double>& checkpoints) {
    OdeResult res;
    res.t = t0;
    res.y = y0;
    const double span = t1 - t0;
    if (!(span > 0.0)) return res;

    auto k1o = f(t0, y0);
    if (!k1o) {
        res.status = OdeStatus::StepUnderflow;
        return res;
    }
    double k1 = *k1o;
    double t = t0;
    double y = y0;
    double h = 1e-3 * span;
    const double h_min = 1e-14 * std::max(std::abs(t0), std::abs(t1));
    std::size_t next_cp = 0;
    while (next_cp < checkpoints.size() && checkpoints[next_cp] <= t0) {
        if (checkpoints[next_cp] == t0) res.checkpoints.push_back({t0, y0});
        ++next_cp;
    }

    // One trial step of size hs from (t, y). Empty when a stage leaves the domain.
    struct Trial {
        double y_new, k_end, err;
    };
    auto trial = [&](double hs, double t_end) -> std::optional<Trial> {
        auto k2 = f(t + c2 * hs, y + hs * a21 * k1);
        if (!k2) return std::nullopt;
        auto k3 = f(t + c3 * hs, y + hs * (a31 * k1 + a32 * *k2));
        if (!k3) return std::nullopt;
        auto k4 = f(t + c4 * hs, y + hs * (a41 * k1 + a42 * *k2 + a43 * *k3));
        if (!k4) return std::nullopt;
        auto k5 = f(t + c5 * hs, y + hs * (a51 * k1 + a52 * *k2 + a53 * *k3 + a54 * *k4));
        if (!k5) return std::nullopt;
        auto k6 = f(t + hs, y + hs * (a61 * k1 + a62 * *k2 + a63 * *k3 + a64 * *k4 + a65 * *k5));
        if (!k6) return std::nullopt;
        const double y_new = y + hs * (b1 * k1 + b3 * *k3 + b4 * *k4 + b5 * *k5 + b6 * *k6);
        if (!std::isfinite(y_new)) return std::nullopt;
        auto k7 = f(t_end, y_new);
        if (!k7) return std::nullopt;
        const double err_abs =
            std::abs(hs * (e1 * k1 + e3 * *k3 + e4 * *k4 + e5 * *k5 + e6 * *k6 + e7 * *k7));
        const double scale = opts.atol + opts.rtol * std::max(std::abs(y), std::abs(y_new));
        return Trial{y_new, *k7, err_abs / scale};
    };

    while (t < t1) {
        if (res.stats.steps + res.stats.rejected >= opts.max_steps) {
            res.status = OdeStatus::TooManySteps;
            return res;
        }
        if (h < h_min) {
            res.status = OdeStatus::StepUnderflow;
            return res;
        }
        double target = t1;
        if (next_cp < checkpoints.size() && checkpoints[next_cp] < t1) target = std::min(target, checkpoints[next_cp]);
        const bool lands = t + h >= target;
        const double hs = lands ? target - t : h;
        const double t_end = lands ? target : t + hs;

        const auto tr = trial(hs, t_end);
        if (!tr) {
            ++res.stats.rejected;
            h = 0.25 * hs;
            continue;
        }
        if (tr->err > 1.0) {
            ++res.stats.rejected;
            h = hs * std::clamp(0.9 * std::pow(tr->err, -0.2), 0.1, 0.5);
            continue;
        }

        ++res.stats.steps;
        res.stats.max_error_estimate = std::max(res.stats.max_error_estimate, tr->err);
        t = t_end;
        y = tr->y_new;
        k1 = tr->k_end;
        res.t = t;
        res.y = y;

        if (opts.y_cap && y >= *opts.y_cap * (1.0 - 1e-13)) {
            res.y = std::min(y, *opts.y_cap * (1.0 - 1e-13));
            res.status = OdeStatus::CapReached;
            return res;
        }
        while (next_cp < checkpoints.size() && checkpoints[next_cp] <= t) {
            res.checkpoints.push_back({checkpoints[next_cp], y});
            ++next_cp;
        }
        const double grow =
            tr->err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(tr->err, -0.2), 0.2, 5.0);
        // A step shortened to land on a target does not shrink the next one.
        h = std::max(h, hs) * (lands ? std::min(grow, 1.0) : grow);
    }
    res.status = OdeStatus::Completed;
    return res;
}

}  // namespace cfmm
