#include "cfmm/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cfmm/errors.hpp"
#include "utility_expr.hpp"

namespace cfmm {

namespace {

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

void check_param(bool ok, const char* key, const std::string& what) {
    if (!ok) throw ModelError(what, key);
}

void validate(const ModelParams& p) {
    std::visit(
        [](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, params::Balancer>) {
                check_param(std::isfinite(m.w) && m.w > 0.0 && m.w < 1.0, "w",
                            "balancer weight w must lie in (0,1), got " + fmt(m.w));
            } else if constexpr (std::is_same_v<M, params::UniswapV3>) {
                check_param(finite_positive(m.alpha), "alpha",
                            "uniswap-v3 alpha must be > 0, got " + fmt(m.alpha));
                check_param(finite_positive(m.beta), "beta",
                            "uniswap-v3 beta must be > 0, got " + fmt(m.beta));
            } else if constexpr (std::is_same_v<M, params::StableSwap> ||
                                 std::is_same_v<M, params::LStableSwap>) {
                check_param(finite_positive(m.C), "C", "C must be > 0, got " + fmt(m.C));
            } else if constexpr (std::is_same_v<M, params::Curve>) {
                check_param(std::isfinite(m.C) && m.C >= 1.0, "C",
                            "curve C must be >= 1, got " + fmt(m.C));
            } else if constexpr (std::is_same_v<M, params::Dodo>) {
                check_param(finite_positive(m.external_price), "P",
                            "dodo external price P must be > 0, got " + fmt(m.external_price));
                check_param(std::isfinite(m.C) && m.C >= 0.0 && m.C <= 1.0, "C",
                            "dodo C must lie in [0,1], got " + fmt(m.C));
            } else if constexpr (std::is_same_v<M, params::Sdamm>) {
                if (const auto* s = std::get_if<SinhUtility>(&m.U)) {
                    check_param(finite_positive(s->C), "C",
                                "sinh C must be > 0, got " + fmt(s->C));
                    check_param(std::isfinite(s->q) && s->q > 0.0 && s->q <= 1.0, "q",
                                "sinh q must lie in (0,1], got " + fmt(s->q));
                } else if (const auto* c = std::get_if<CustomUtility>(&m.U)) {
                    check_param(static_cast<bool>(c->U), "U", "custom utility has no function");
                }
            }
        },
        p);
}

const params::Sdamm* as_sdamm(const ModelParams& p) { return std::get_if<params::Sdamm>(&p); }

bool is_custom(const ModelParams& p) {
    const auto* s = as_sdamm(p);
    return s != nullptr && std::holds_alternative<CustomUtility>(s->U);
}

// Central-difference derivatives of a univariate utility, relative steps.
struct UnivariateDerivs {
    double d1, d2, d3;
};

UnivariateDerivs fd_univariate(const std::function<double(double)>& U, double z) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double h1 = std::cbrt(eps) * z;
    const double h2 = std::pow(eps, 0.25) * z;
    const double h3 = std::pow(eps, 0.2) * z;
    const double d1 = (U(z + h1) - U(z - h1)) / (2.0 * h1);
    const double d2 = (U(z + h2) - 2.0 * U(z) + U(z - h2)) / (h2 * h2);
    const double d3 =
        (U(z + 2.0 * h3) - 2.0 * U(z + h3) + 2.0 * U(z - h3) - U(z - 2.0 * h3)) /
        (2.0 * h3 * h3 * h3);
    return {d1, d2, d3};
}

UtilityJet custom_jet(const CustomUtility& c, Reserves z) {
    const auto dx = fd_univariate(c.U, z.a);
    const auto dy = fd_univariate(c.U, z.b);
    UtilityJet j;
    j.eval.value = c.U(z.a) + c.U(z.b);
    j.eval.grad = {dx.d1, dy.d1};
    j.eval.hess = {dx.d2, 0.0, dy.d2};
    j.eval.grad_source = DerivativeSource::FiniteDifference;
    j.eval.hess_source = DerivativeSource::FiniteDifference;
    j.third = {dx.d3, 0.0, 0.0, dy.d3};
    j.third_source = DerivativeSource::FiniteDifference;
    return j;
}

}  // namespace

void require_interior(const Reserves& r, std::string_view what) {
    if (!(std::isfinite(r.a) && std::isfinite(r.b) && r.a > 0.0 && r.b > 0.0)) {
        std::ostringstream os;
        os.precision(12);
        os << what << " must be strictly positive and finite, got (" << r.a << ", " << r.b
           << ")";
        throw DomainError(os.str());
    }
}

std::string_view axiom_label(Axiom a) {
    switch (a) {
        case Axiom::UnboundedBelow: return "UfB";
        case Axiom::UnboundedAbove: return "UfA";
        case Axiom::StrictMonotone: return "SM";
        case Axiom::Continuous: return "C";
        case Axiom::Quasiconcave: return "QC";
        case Axiom::ScaleInvariant: return "SI";
        case Axiom::InadaPlus: return "I+";
        case Axiom::SingleCrossing: return "SC";
        case Axiom::PoolingLiquidity: return "P-cond";
    }
    return "?";
}

AmmModel AmmModel::uniswap_v2() { return AmmModel(params::UniswapV2{}); }
AmmModel AmmModel::mstable() { return AmmModel(params::MStable{}); }

AmmModel AmmModel::balancer(double w) {
    ModelParams p = params::Balancer{w};
    validate(p);
    return AmmModel(std::move(p));
}

AmmModel AmmModel::uniswap_v3(double alpha, double beta) {
    ModelParams p = params::UniswapV3{alpha, beta};
    validate(p);
    return AmmModel(std::move(p));
}

AmmModel AmmModel::stableswap(double C) {
    ModelParams p = params::StableSwap{C};
    validate(p);
    return AmmModel(std::move(p));
}

AmmModel AmmModel::lstableswap(double C) {
    ModelParams p = params::LStableSwap{C};
    validate(p);
    return AmmModel(std::move(p));
}

AmmModel AmmModel::curve(double C) {
    ModelParams p = params::Curve{C};
    validate(p);
    return AmmModel(std::move(p));
}

AmmModel AmmModel::dodo(double external_price, double C) {
    ModelParams p = params::Dodo{external_price, C};
    validate(p);
    return AmmModel(std::move(p));
}

AmmModel AmmModel::sdamm(UnivariateUtility U) {
    ModelParams p = params::Sdamm{std::move(U)};
    validate(p);
    return AmmModel(std::move(p));
}

ModelKind AmmModel::kind() const noexcept { return static_cast<ModelKind>(params_.index()); }

std::string AmmModel::kind_name() const {
    switch (kind()) {
        case ModelKind::UniswapV2: return "uniswap-v2";
        case ModelKind::Balancer: return "balancer";
        case ModelKind::UniswapV3: return "uniswap-v3";
        case ModelKind::MStable: return "mstable";
        case ModelKind::StableSwap: return "stableswap";
        case ModelKind::LStableSwap: return "lstableswap";
        case ModelKind::Curve: return "curve";
        case ModelKind::Dodo: return "dodo";
        case ModelKind::Sdamm: break;
    }
    const auto& U = std::get<params::Sdamm>(params_).U;
    if (std::holds_alternative<LogUtility>(U)) return "sdamm-log";
    if (std::holds_alternative<SinhUtility>(U)) return "sdamm-sinh";
    return "sdamm-custom";
}

std::string AmmModel::label() const {
    return std::visit(
        [](const auto& m) -> std::string {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, params::UniswapV2>) {
                return "Uniswap V2";
            } else if constexpr (std::is_same_v<M, params::Balancer>) {
                return "Balancer(w=" + fmt(m.w) + ")";
            } else if constexpr (std::is_same_v<M, params::UniswapV3>) {
                return "Uniswap V3(alpha=" + fmt(m.alpha) + ",beta=" + fmt(m.beta) + ")";
            } else if constexpr (std::is_same_v<M, params::MStable>) {
                return "mStable";
            } else if constexpr (std::is_same_v<M, params::StableSwap>) {
                return "StableSwap(C=" + fmt(m.C) + ")";
            } else if constexpr (std::is_same_v<M, params::LStableSwap>) {
                return "L.StableSwap(C=" + fmt(m.C) + ")";
            } else if constexpr (std::is_same_v<M, params::Curve>) {
                return "Curve(C=" + fmt(m.C) + ")";
            } else if constexpr (std::is_same_v<M, params::Dodo>) {
                return "Dodo(P=" + fmt(m.external_price) + ",C=" + fmt(m.C) + ")";
            } else {
                if (std::holds_alternative<LogUtility>(m.U)) return "SDAMM(log)";
                if (const auto* s = std::get_if<SinhUtility>(&m.U)) {
                    return "SDAMM(sinh,C=" + fmt(s->C) + ",q=" + fmt(s->q) + ")";
                }
                return "SDAMM(" + std::get<CustomUtility>(m.U).name + ")";
            }
        },
        params_);
}

AxiomClaims AmmModel::claims() const {
    AxiomClaims c{};
    auto set = [&c](Axiom a, bool holds) { c[static_cast<std::size_t>(a)].holds = holds; };
    for (Axiom a : kAllAxioms) set(a, true);

    switch (kind()) {
        case ModelKind::UniswapV2:
        case ModelKind::Balancer:
        case ModelKind::LStableSwap:
            break;
        case ModelKind::UniswapV3:
        case ModelKind::StableSwap:
            set(Axiom::UnboundedBelow, false);
            set(Axiom::ScaleInvariant, false);
            break;
        case ModelKind::MStable:
            set(Axiom::UnboundedBelow, false);
            set(Axiom::InadaPlus, false);
            break;
        case ModelKind::Curve:
            for (Axiom a : {Axiom::Quasiconcave, Axiom::SingleCrossing, Axiom::PoolingLiquidity}) {
                c[static_cast<std::size_t>(a)].numeric_only = true;
            }
            break;
        case ModelKind::Dodo: {
            auto& pc = c[static_cast<std::size_t>(Axiom::PoolingLiquidity)];
            pc = AxiomClaim{false, false, true};
            // C = 0 collapses to a linear (mStable-type) utility.
            if (std::get<params::Dodo>(params_).C == 0.0) {
                set(Axiom::UnboundedBelow, false);
                set(Axiom::InadaPlus, false);
            }
            break;
        }
        case ModelKind::Sdamm: {
            const auto& U = std::get<params::Sdamm>(params_).U;
            if (const auto* s = std::get_if<SinhUtility>(&U)) {
                set(Axiom::ScaleInvariant, false);
                if (s->q == 1.0) set(Axiom::InadaPlus, false);
            } else if (std::holds_alternative<CustomUtility>(U)) {
                for (Axiom a : kAllAxioms) set(a, false);
            }
            break;
        }
    }
    return c;
}

bool AmmModel::has_analytic_derivatives() const noexcept { return !is_custom(params_); }

std::vector<AmmModel> real_world_catalog() {
    return {AmmModel::uniswap_v2(),     AmmModel::balancer(0.3),
            AmmModel::uniswap_v3(1.0, 1.0), AmmModel::mstable(),
            AmmModel::stableswap(1.0),  AmmModel::lstableswap(1.0),
            AmmModel::curve(2.0),       AmmModel::dodo(1.5, 0.5)};
}

AmmModel default_sdamm() { return AmmModel::sdamm_sinh(1.0, 0.8); }

double curve_invariant(double x, double y, double C) {
    if (!(std::isfinite(C) && C >= 1.0)) throw DomainError("curve invariant requires C >= 1");
    if (!(x >= 0.0 && y >= 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
        throw DomainError("curve invariant requires finite x, y >= 0");
    }
    if (x == 0.0 || y == 0.0) return 0.0;

    // D is homogeneous of degree one; solve on the simplex x + y = 1.
    const double s = x + y;
    const double xs = x / s;
    const double ys = y / s;
    const double xy = xs * ys;
    const double k1 = 4.0 * (C - 1.0) * xy;
    const double k0 = 4.0 * C * xy;  // 4C (x+y) xy with x+y = 1
    auto f = [&](double d) { return (d * d + k1) * d - k0; };

    double lo = 0.0;
    double hi = 2.0;  // 2(x+y)
    for (int i = 0; i < 200 && hi - lo > 1e-6 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    // f is increasing and convex on [0, inf): Newton from the right endpoint
    // decreases monotonically onto the root.
    double d = hi;
    for (int i = 0; i < 60; ++i) {
        const double fd = f(d);
        if (fd <= 0.0) break;
        const double next = d - fd / (3.0 * d * d + k1);
        if (!(next < d) || next < lo) break;
        d = next;
    }
    return d * s;
}

double utility(const AmmModel& model, Reserves z) {
    if (std::isnan(z.a) || std::isnan(z.b)) throw DomainError("utility: NaN reserve");
    if (z.a < 0.0 || z.b < 0.0) throw DomainError("utility: point outside the closed quadrant");
    if (const auto* d = std::get_if<params::Dodo>(&model.params());
        d != nullptr && d->C > 0.0 && (z.a == 0.0 || z.b == 0.0)) {
        return -std::numeric_limits<double>::infinity();
    }
    return detail::utility_expr<double>(model.params(), z.a, z.b);
}

Gradient utility_gradient(const AmmModel& model, Reserves z) {
    require_interior(z, "utility_gradient point");
    if (is_custom(model.params())) return custom_jet(std::get<CustomUtility>(as_sdamm(model.params())->U), z).eval.grad;
    const auto j = detail::utility_jet_expr<1>(model.params(), z.a, z.b);
    return {j.derivative(1, 0), j.derivative(0, 1)};
}

Hessian utility_hessian(const AmmModel& model, Reserves z) {
    return evaluate(model, z).hess;
}

UtilityEval evaluate(const AmmModel& model, Reserves z) {
    require_interior(z, "evaluate point");
    if (is_custom(model.params())) {
        return custom_jet(std::get<CustomUtility>(as_sdamm(model.params())->U), z).eval;
    }
    const auto j = detail::utility_jet_expr<2>(model.params(), z.a, z.b);
    UtilityEval e;
    e.value = j.derivative(0, 0);
    e.grad = {j.derivative(1, 0), j.derivative(0, 1)};
    e.hess = {j.derivative(2, 0), j.derivative(1, 1), j.derivative(0, 2)};
    return e;
}

UtilityJet utility_jet(const AmmModel& model, Reserves z) {
    require_interior(z, "utility_jet point");
    if (is_custom(model.params())) {
        return custom_jet(std::get<CustomUtility>(as_sdamm(model.params())->U), z);
    }
    const auto j = detail::utility_jet_expr<3>(model.params(), z.a, z.b);
    UtilityJet out;
    out.eval.value = j.derivative(0, 0);
    out.eval.grad = {j.derivative(1, 0), j.derivative(0, 1)};
    out.eval.hess = {j.derivative(2, 0), j.derivative(1, 1), j.derivative(0, 2)};
    out.third = {j.derivative(3, 0), j.derivative(2, 1), j.derivative(1, 2), j.derivative(0, 3)};
    return out;
}

}  // namespace cfmm
