#pragma once

// Utility closed forms written once, generic over the scalar type so the same
// expression serves plain evaluation (double) and forward-mode derivatives
// (boost autodiff jets).

#include <cmath>
#include <type_traits>
#include <utility>

#include <boost/math/differentiation/autodiff.hpp>

#include "cfmm/model.hpp"

namespace cfmm::detail {

namespace ad = boost::math::differentiation;

template <std::size_t N>
using Jet = ad::autodiff_fvar<double, N, N>;

inline double value_of(double v) { return v; }

template <class T>
double value_of(const T& v) {
    return static_cast<double>(v);
}

template <class T>
T log_sinh(const T& w) {
    using std::exp;
    using std::log;
    using std::sinh;
    // sinh overflows long before log(sinh) does.
    if (value_of(w) > 1.0) return w + log(1.0 - exp(-2.0 * w)) - std::log(2.0);
    return log(sinh(w));
}

template <class T>
T sinh_utility(const T& z, const SinhUtility& s) {
    using std::pow;
    if (s.q == 1.0) return log_sinh(s.C * z);
    return log_sinh(s.C * pow(z, s.q));
}

/// Positive root g of C g^2 + 2(1-C) m g - m((1-C) m + n) = 0, written in the
/// cancellation-free form m((1-C)m + n) / (R + (1-C)m).
template <class T>
T dodo_half_depth(const T& m, const T& n, double C) {
    using std::sqrt;
    const T s = (1.0 - C) * m;
    const T R = sqrt(s * s + C * m * (s + n));
    return m * (s + n) / (R + s);
}

template <class T>
T dodo_utility(const T& x, const T& y, const params::Dodo& p) {
    using std::log;
    const T X = p.external_price * x;
    if (p.C == 0.0) return log(X + y);
    if (value_of(X) <= value_of(y)) return log(2.0 * dodo_half_depth(X, y, p.C));
    return log(2.0 * dodo_half_depth(y, X, p.C));
}

/// Lift the converged Curve depth into jet arithmetic: each Newton step on the
/// cubic doubles the number of exact Taylor orders, so three steps recover
/// everything up to third order.
template <class T>
T curve_depth(const T& x, const T& y, double C) {
    const double d0 = curve_invariant(value_of(x), value_of(y), C);
    if constexpr (std::is_same_v<T, double>) {
        return d0;
    } else {
        T d = d0 + 0.0 * x;
        const T xy = x * y;
        for (int i = 0; i < 3; ++i) {
            const T f = d * d * d + 4.0 * (C - 1.0) * xy * d - 4.0 * C * (x + y) * xy;
            const T fp = 3.0 * d * d + 4.0 * (C - 1.0) * xy;
            d = d - f / fp;
        }
        return d;
    }
}

template <class T>
T utility_expr(const ModelParams& p, const T& x, const T& y) {
    using std::log;
    return std::visit(
        [&](const auto& m) -> T {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, params::UniswapV2>) {
                return log(x) + log(y);
            } else if constexpr (std::is_same_v<M, params::Balancer>) {
                return m.w * log(x) + (1.0 - m.w) * log(y);
            } else if constexpr (std::is_same_v<M, params::UniswapV3>) {
                return log(m.alpha + x) + log(m.beta + y);
            } else if constexpr (std::is_same_v<M, params::MStable>) {
                return log(x + y);
            } else if constexpr (std::is_same_v<M, params::StableSwap>) {
                return log(m.C * (x + y) + x * y);
            } else if constexpr (std::is_same_v<M, params::LStableSwap>) {
                return m.C * log(x + y) + log(x) + log(y);
            } else if constexpr (std::is_same_v<M, params::Curve>) {
                return log(curve_depth(x, y, m.C));
            } else if constexpr (std::is_same_v<M, params::Dodo>) {
                return dodo_utility(x, y, m);
            } else {
                return std::visit(
                    [&](const auto& U) -> T {
                        using V = std::decay_t<decltype(U)>;
                        if constexpr (std::is_same_v<V, LogUtility>) {
                            return log(x) + log(y);
                        } else if constexpr (std::is_same_v<V, SinhUtility>) {
                            return sinh_utility(x, U) + sinh_utility(y, U);
                        } else {
                            if constexpr (std::is_same_v<T, double>) {
                                return U.U(x) + U.U(y);
                            } else {
                                throw std::logic_error("custom utility has no jet evaluation");
                            }
                        }
                    },
                    m.U);
            }
        },
        p);
}

template <std::size_t N>
Jet<N> utility_jet_expr(const ModelParams& p, double x, double y) {
    auto vars = ad::make_ftuple<double, N, N>(x, y);
    const Jet<N> X = std::get<0>(vars);
    const Jet<N> Y = std::get<1>(vars);
    return utility_expr<Jet<N>>(p, X, Y);
}

}  // namespace cfmm::detail
