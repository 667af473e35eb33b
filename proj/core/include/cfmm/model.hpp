#pragma once

#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cfmm {

/// Pool holdings of asset A and asset B. Operations that need an interior
/// point validate strict positivity themselves; a zero component only shows
/// up as a boundary argument to `utility` or as the post-trade state of a
/// reserve-exhausting quote.
struct Reserves {
    double a = 0.0;
    double b = 0.0;

    friend bool operator==(const Reserves&, const Reserves&) = default;
};

/// Throws DomainError unless both components are finite and strictly positive.
void require_interior(const Reserves& r, std::string_view what = "reserves");

// ---------------------------------------------------------------------------
// Axioms

enum class Axiom : int {
    UnboundedBelow,   // (UfB)
    UnboundedAbove,   // (UfA)
    StrictMonotone,   // (SM)
    Continuous,       // (C)
    Quasiconcave,     // (QC)
    ScaleInvariant,   // (SI)
    InadaPlus,        // (I+)
    SingleCrossing,   // (SC)
    PoolingLiquidity  // oracle curvature condition for liquidity-increasing pooling
};

inline constexpr std::array<Axiom, 9> kAllAxioms = {
    Axiom::UnboundedBelow, Axiom::UnboundedAbove, Axiom::StrictMonotone,
    Axiom::Continuous,     Axiom::Quasiconcave,   Axiom::ScaleInvariant,
    Axiom::InadaPlus,      Axiom::SingleCrossing, Axiom::PoolingLiquidity};

/// Short column label: "UfB", "UfA", "SM", "C", "QC", "SI", "I+", "SC", "P-cond".
std::string_view axiom_label(Axiom a);

struct AxiomClaim {
    bool holds = false;
    bool numeric_only = false;    // established only by numerical verification
    bool not_applicable = false;  // the property is not studied for this model
};

using AxiomClaims = std::array<AxiomClaim, kAllAxioms.size()>;

inline const AxiomClaim& claim_for(const AxiomClaims& c, Axiom a) {
    return c[static_cast<std::size_t>(a)];
}

// ---------------------------------------------------------------------------
// Model catalog

enum class ModelKind {
    UniswapV2,
    Balancer,
    UniswapV3,
    MStable,
    StableSwap,
    LStableSwap,
    Curve,
    Dodo,
    Sdamm
};

/// Univariate building blocks for symmetric decomposable models
/// u(x, y) = U(x) + U(y).
struct LogUtility {};

/// U(z) = log(sinh(C z^q)), C > 0, q in (0, 1].
struct SinhUtility {
    double C = 1.0;
    double q = 1.0;
};

/// User-supplied U. Derivatives are taken by finite differences.
struct CustomUtility {
    std::string name;
    std::function<double(double)> U;
};

using UnivariateUtility = std::variant<LogUtility, SinhUtility, CustomUtility>;

namespace params {
struct UniswapV2 {};
struct Balancer { double w; };
struct UniswapV3 { double alpha; double beta; };
struct MStable {};
struct StableSwap { double C; };
struct LStableSwap { double C; };
struct Curve { double C; };
struct Dodo { double external_price; double C; };
struct Sdamm { UnivariateUtility U; };
}  // namespace params

using ModelParams =
    std::variant<params::UniswapV2, params::Balancer, params::UniswapV3, params::MStable,
                 params::StableSwap, params::LStableSwap, params::Curve, params::Dodo,
                 params::Sdamm>;

/// One utility family together with its parameters. Instances are immutable
/// and always carry parameters inside their stated domain; the factories
/// throw ModelError otherwise.
class AmmModel {
public:
    static AmmModel uniswap_v2();
    static AmmModel balancer(double w);
    static AmmModel uniswap_v3(double alpha, double beta);
    static AmmModel mstable();
    static AmmModel stableswap(double C);
    static AmmModel lstableswap(double C);
    static AmmModel curve(double C);
    static AmmModel dodo(double external_price, double C);
    static AmmModel sdamm(UnivariateUtility U);
    static AmmModel sdamm_sinh(double C, double q) { return sdamm(SinhUtility{C, q}); }

    ModelKind kind() const noexcept;
    const ModelParams& params() const noexcept { return params_; }

    /// Descriptor kind string, e.g. "uniswap-v2", "sdamm-sinh".
    std::string kind_name() const;
    /// Human readable name with parameters, e.g. "Curve(C=2)".
    std::string label() const;

    /// Axioms the model is known to satisfy (Table-1 pattern of the family,
    /// refined by parameter where the family's behaviour depends on it).
    AxiomClaims claims() const;
    bool claims(Axiom a) const { return claim_for(claims(), a).holds; }

    /// False only for SDAMMs built from a CustomUtility.
    bool has_analytic_derivatives() const noexcept;

private:
    explicit AmmModel(ModelParams p) : params_(std::move(p)) {}
    ModelParams params_;
};

/// The eight real-world families with default parameters, in table order:
/// Uniswap V2, Balancer, Uniswap V3, mStable, StableSwap, L.StableSwap,
/// Curve, Dodo.
std::vector<AmmModel> real_world_catalog();

/// Default sinh SDAMM used in reports (C = 1, q = 0.8).
AmmModel default_sdamm();

// ---------------------------------------------------------------------------
// Utility evaluation

enum class DerivativeSource { Analytic, FiniteDifference };

struct Gradient {
    double a = 0.0;  // u_A
    double b = 0.0;  // u_B
};

struct Hessian {
    double aa = 0.0;
    double ab = 0.0;
    double bb = 0.0;
};

/// Third partials (u_AAA, u_AAB, u_ABB, u_BBB).
struct ThirdPartials {
    double aaa = 0.0;
    double aab = 0.0;
    double abb = 0.0;
    double bbb = 0.0;
};

struct UtilityEval {
    double value = 0.0;
    Gradient grad;
    Hessian hess;
    DerivativeSource grad_source = DerivativeSource::Analytic;
    DerivativeSource hess_source = DerivativeSource::Analytic;
};

/// u(z) on the closed quadrant. Boundary points return the model's limit
/// value: -inf for models unbounded from below, finite otherwise.
double utility(const AmmModel& model, Reserves z);

/// Partials on the open quadrant. Derivatives are exact (forward-mode
/// automatic differentiation through the closed forms; implicit
/// differentiation of the cubic for Curve) except for custom SDAMM
/// utilities, which fall back to central differences.
Gradient utility_gradient(const AmmModel& model, Reserves z);
Hessian utility_hessian(const AmmModel& model, Reserves z);
UtilityEval evaluate(const AmmModel& model, Reserves z);

struct UtilityJet {
    UtilityEval eval;
    ThirdPartials third;
    DerivativeSource third_source = DerivativeSource::Analytic;
};

/// Value and all partials up to third order.
UtilityJet utility_jet(const AmmModel& model, Reserves z);

/// Unique nonnegative root D of D^3 + 4(C-1)xyD - 4C(x+y)xy = 0 (C >= 1).
/// Bisection on [0, 2(x+y)] followed by Newton polish.
double curve_invariant(double x, double y, double C);

}  // namespace cfmm
