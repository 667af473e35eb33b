#include "cfmm/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cfmm/errors.hpp"
#include "cfmm/oracle.hpp"

namespace cfmm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSlopeMin = 0.01;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

std::string fmt(Reserves r) { return "(" + fmt(r.a) + ", " + fmt(r.b) + ")"; }

bool is_custom(const AmmModel& m) { return !m.has_analytic_derivatives(); }

AxiomVerdict violated(AxiomVerdict v, Witness w) {
    v.kind = VerdictKind::Violated;
    v.detail = w.description;
    v.witness = std::move(w);
    return v;
}

// Either coordinate order: `swap` exchanges the roles of A and B so that
// every one-sided check is run on both reserves.
Reserves oriented(double moving, double held, bool swap) {
    return swap ? Reserves{held, moving} : Reserves{moving, held};
}

AxiomVerdict check_unbounded_below(const AmmModel& m, const GridConfig& g, AxiomVerdict v) {
    const auto axis = g.axis();
    for (double s : axis) {
        for (bool swap : {false, true}) {
            const Reserves z = oriented(0.0, s, swap);
            const double u = utility(m, z);
            if (u != -kInf) {
                return violated(v, {{z}, {u}, 0.0, "u" + fmt(z) + " = " + fmt(u) + " is finite"});
            }
        }
    }
    for (double x : axis) {
        for (double y : axis) {
            const double u = utility(m, {x, y});
            if (!std::isfinite(u)) {
                return violated(v, {{{x, y}}, {u}, 0.0,
                                    "u" + fmt(Reserves{x, y}) + " is not finite in the interior"});
            }
        }
    }
    for (int k = 1; k <= g.probe_decades; ++k) {
        const double e = std::pow(10.0, -k);
        v.trend.push_back({e, utility(m, {1.0, e})});
    }
    v.detail = "u = -inf on both axes and finite in the interior";
    return v;
}

AxiomVerdict check_unbounded_above(const AmmModel& m, const GridConfig& g, AxiomVerdict v) {
    const std::vector<double> held{g.lo, 1.0, g.hi};
    for (double s : held) {
        for (bool swap : {false, true}) {
            std::vector<TrendSample> tr;
            for (int k = 1; k <= g.probe_decades; ++k) {
                const double x = s * std::pow(10.0, k);
                tr.push_back({x, utility(m, oriented(x, s, swap))});
            }
            for (std::size_t i = 1; i < tr.size(); ++i) {
                if (!(tr[i].value > tr[i - 1].value)) {
                    const Reserves z0 = oriented(tr[i - 1].probe, s, swap);
                    const Reserves z1 = oriented(tr[i].probe, s, swap);
                    return violated(v, {{z0, z1}, {tr[i - 1].value, tr[i].value}, 0.0,
                                        "u does not increase from " + fmt(z0) + " to " + fmt(z1)});
                }
            }
            const double growth = tr.back().value - tr.front().value;
            if (!(growth >= 1.0)) {
                const Reserves z0 = oriented(tr.front().probe, s, swap);
                const Reserves z1 = oriented(tr.back().probe, s, swap);
                return violated(v, {{z0, z1}, {tr.front().value, tr.back().value}, growth,
                                    "u grows by only " + fmt(growth) + " between " + fmt(z0) +
                                        " and " + fmt(z1)});
            }
            if (s == 1.0 && !swap) v.trend = tr;
        }
    }
    v.detail = "u increases along every probe sequence with growth >= 1";
    return v;
}

AxiomVerdict check_strict_monotone(const AmmModel& m, const GridConfig& g, AxiomVerdict v) {
    const auto axis = g.axis();
    const std::size_t n = axis.size();
    std::vector<double> u(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) u[i * n + j] = utility(m, {axis[i], axis[j]});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double base = u[i * n + j];
            if (i + 1 < n && !(u[(i + 1) * n + j] > base)) {
                const Reserves z0{axis[i], axis[j]}, z1{axis[i + 1], axis[j]};
                return violated(v, {{z0, z1}, {base, u[(i + 1) * n + j]}, 0.0,
                                    "u" + fmt(z1) + " is not above u" + fmt(z0)});
            }
            if (j + 1 < n && !(u[i * n + j + 1] > base)) {
                const Reserves z0{axis[i], axis[j]}, z1{axis[i], axis[j + 1]};
                return violated(v, {{z0, z1}, {base, u[i * n + j + 1]}, 0.0,
                                    "u" + fmt(z1) + " is not above u" + fmt(z0)});
            }
        }
    }
    v.detail = "strict increase between all grid neighbours";
    return v;
}

AxiomVerdict check_quasiconcave(const AmmModel& m, const GridConfig& g, AxiomVerdict v) {
    const auto axis = g.axis();
    std::vector<Reserves> pts;
    for (double x : axis)
        for (double y : axis) pts.push_back({x, y});
    std::vector<double> u(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) u[i] = utility(m, pts[i]);
    const double rel = 1e-12 * g.tol_scale;
    v.tolerance = rel;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double floor = std::min(u[i], u[j]);
            for (double lam : g.qc_lambdas) {
                const Reserves mix{lam * pts[i].a + (1.0 - lam) * pts[j].a,
                                   lam * pts[i].b + (1.0 - lam) * pts[j].b};
                const double um = utility(m, mix);
                const double tol = rel * std::max({1.0, std::abs(u[i]), std::abs(u[j])});
                if (!(um >= floor - tol)) {
                    return violated(v, {{pts[i], pts[j], mix}, {u[i], u[j], um}, lam,
                                        "u at lambda=" + fmt(lam) + " mix " + fmt(mix) + " is " +
                                            fmt(um) + " < min(" + fmt(u[i]) + ", " + fmt(u[j]) +
                                            ")"});
                }
            }
        }
    }
    v.detail = "upper contour sets convex on all grid pairs";
    return v;
}

AxiomVerdict check_scale_invariant(const AmmModel& m, const GridConfig& g, AxiomVerdict v) {
    const auto axis = g.axis();
    std::vector<Reserves> pts;
    for (double x : axis)
        for (double y : axis) pts.push_back({x, y});
    std::vector<double> u(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) u[i] = utility(m, pts[i]);
    const double rel = 1e-12 * g.tol_scale;
    v.tolerance = rel;
    for (double t : g.si_factors) {
        std::vector<double> ut(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) ut[i] = utility(m, {t * pts[i].a, t * pts[i].b});
        for (std::size_t i = 0; i < pts.size(); ++i) {
            for (std::size_t j = 0; j < pts.size(); ++j) {
                if (i == j || !(u[i] >= u[j])) continue;
                const double tol = rel * std::max({1.0, std::abs(ut[i]), std::abs(ut[j])});
                if (!(ut[i] >= ut[j] - tol)) {
                    return violated(
                        v, {{pts[i], pts[j]}, {u[i], u[j], ut[i], ut[j]}, t,
                            "u" + fmt(pts[i]) + " >= u" + fmt(pts[j]) + " but after scaling by " +
                                fmt(t) + " the order reverses (" + fmt(ut[i]) + " < " +
                                fmt(ut[j]) + ")"});
                }
            }
        }
    }
    v.detail = "utility order preserved under every scaling factor";
    return v;
}

// One bullet of the Inada+ condition along a probe sequence of the moving
// reserve, holding the other fixed.
struct InadaBullet {
    bool wrt_moving;  // differentiate in the moving coordinate (else the held one)
    bool to_infinity;
    const char* expectation;
};

AxiomVerdict check_inada(const AmmModel& m, const GridConfig& g, AxiomVerdict v) {
    v.tolerance = kSlopeMin;
    const std::vector<double> held{g.lo, 1.0, g.hi};
    const InadaBullet bullets[] = {
        {true, true, "marginal utility of the growing reserve decays to 0"},
        {false, true, "marginal utility of the held reserve tends to a finite positive limit"},
        {true, false, "marginal utility of the vanishing reserve blows up"},
        {false, false, "marginal utility of the held reserve stays finite"},
    };
    const double ln10 = std::log(10.0);
    for (const auto& bl : bullets) {
        for (double s : held) {
            for (bool swap : {false, true}) {
                std::vector<TrendSample> tr;
                std::vector<Reserves> zs;
                for (int k = 1; k <= g.probe_decades; ++k) {
                    const double x = s * std::pow(10.0, bl.to_infinity ? k : -k);
                    const Reserves z = oriented(x, s, swap);
                    const Gradient gr = utility_gradient(m, z);
                    // moving coordinate is A unless swapped
                    const double d = (bl.wrt_moving != swap) ? gr.a : gr.b;
                    tr.push_back({x, d});
                    zs.push_back(z);
                }
                auto fail = [&](const std::string& why) {
                    Witness w;
                    w.points = zs;
                    for (const auto& t : tr) w.values.push_back(t.value);
                    w.parameter = s;
                    w.description = std::string(bl.expectation) + ": " + why + " (held reserve " +
                                    fmt(s) + (swap ? ", moving B)" : ", moving A)");
                    AxiomVerdict out = violated(v, std::move(w));
                    out.trend = tr;
                    return out;
                };
                for (const auto& t : tr) {
                    if (!(t.value > 0.0) || !std::isfinite(t.value)) {
                        return fail("derivative " + fmt(t.value) + " at probe " + fmt(t.probe));
                    }
                }
                // Change of log10(derivative) over the last decade stepped toward the limit.
                const std::size_t n = tr.size();
                const double toward = std::log(tr[n - 1].value / tr[n - 2].value) / ln10;
                if (bl.wrt_moving) {
                    for (std::size_t i = 1; i < n; ++i) {
                        const bool ok = bl.to_infinity ? tr[i].value < tr[i - 1].value
                                                       : tr[i].value > tr[i - 1].value;
                        if (!ok) return fail("trend breaks at probe " + fmt(tr[i].probe));
                    }
                    if (bl.to_infinity && !(toward <= -kSlopeMin)) {
                        return fail("log-log slope " + fmt(toward) + " shows no decay");
                    }
                    if (!bl.to_infinity && !(toward >= kSlopeMin)) {
                        return fail("log-log slope " + fmt(toward) + " shows no blow-up");
                    }
                } else {
                    if (bl.to_infinity && !(std::abs(toward) < kSlopeMin)) {
                        return fail("log-log slope " + fmt(toward) + " shows no finite positive limit");
                    }
                    if (!bl.to_infinity && !(toward < kSlopeMin)) {
                        return fail("log-log slope " + fmt(toward) + " shows a blow-up");
                    }
                }
                if (s == 1.0 && !swap && bl.wrt_moving && !bl.to_infinity) v.trend = tr;
            }
        }
    }
    v.detail = "all four limit behaviours hold along every probe sequence";
    return v;
}

AxiomVerdict check_single_crossing(const AmmModel& m, const GridConfig& g, AxiomVerdict v) {
    const auto axis = g.axis();
    const double rel = 1e-9 * g.tol_scale;
    v.tolerance = rel;
    for (double x : axis) {
        for (double y : axis) {
            const Reserves z{x, y};
            const UtilityEval e = evaluate(m, z);
            const double uA = e.grad.a, uB = e.grad.b;
            if (!(uA > 0.0 && uB > 0.0)) {
                return violated(v, {{z}, {uA, uB}, 0.0,
                                    "gradient " + fmt(uA) + ", " + fmt(uB) + " at " + fmt(z) +
                                        " is not positive"});
            }
            const double l1 = uB * e.hess.aa, r1 = uA * e.hess.ab;
            const double l2 = uA * e.hess.bb, r2 = uB * e.hess.ab;
            const double t1 = rel * std::max(std::abs(l1), std::abs(r1));
            const double t2 = rel * std::max(std::abs(l2), std::abs(r2));
            if (!(l1 <= r1 + t1)) {
                return violated(v, {{z}, {l1, r1}, 0.0,
                                    "u_B u_AA = " + fmt(l1) + " exceeds u_A u_AB = " + fmt(r1) +
                                        " at " + fmt(z)});
            }
            if (!(l2 <= r2 + t2)) {
                return violated(v, {{z}, {l2, r2}, 0.0,
                                    "u_A u_BB = " + fmt(l2) + " exceeds u_B u_AB = " + fmt(r2) +
                                        " at " + fmt(z)});
            }
        }
    }
    v.detail = "gradient positive and both crossing inequalities hold on the grid";
    return v;
}

AxiomVerdict check_pooling(const AmmModel& m, const GridConfig& g, AxiomVerdict v) {
    if (m.kind() == ModelKind::Dodo) {
        v.kind = VerdictKind::NotApplicable;
        v.detail = "price is exogenous; pooling is not tied to the oracle";
        return v;
    }
    const auto axis = g.axis();
    const double rel = 1e-9 * g.tol_scale;
    v.tolerance = rel;
    for (double x : axis) {
        for (double y : axis) {
            const Reserves z{x, y};
            const OraclePoint o = oracle_point(m, z);
            const double c = liquidity_condition(o);
            const double scale = liquidity_condition_scale(o);
            if (!(c >= -rel * scale)) {
                return violated(v, {{z}, {c, scale}, 0.0,
                                    "liquidity condition " + fmt(c) + " < 0 at " + fmt(z)});
            }
        }
    }
    v.detail = "liquidity condition nonnegative on the grid";
    return v;
}

}  // namespace

void GridConfig::validate() const {
    if (!(lo > 0.0 && hi > lo && std::isfinite(hi))) {
        throw DomainError("grid range must satisfy 0 < lo < hi");
    }
    if (points < 8) throw DomainError("grid needs at least 8 points per axis");
    if (probe_decades < 2) throw DomainError("limit probes need at least 2 decades");
    if (!(tol_scale > 0.0)) throw DomainError("tolerance scale must be positive");
    for (double l : qc_lambdas) {
        if (!(l > 0.0 && l < 1.0)) throw DomainError("quasiconcavity weights must lie in (0,1)");
    }
    for (double t : si_factors) {
        if (!(t > 0.0)) throw DomainError("scaling factors must be positive");
    }
}

std::vector<double> GridConfig::axis() const {
    std::vector<double> out(points);
    const double step = std::log(hi / lo) / (points - 1);
    for (int i = 0; i < points; ++i) out[i] = lo * std::exp(step * i);
    out.front() = lo;
    out.back() = hi;
    return out;
}

AxiomVerdict check_axiom(const AmmModel& model, Axiom axiom, const GridConfig& grid) {
    grid.validate();
    AxiomVerdict v;
    v.axiom = axiom;
    v.numeric_only = claim_for(model.claims(), axiom).numeric_only;
    try {
        switch (axiom) {
            case Axiom::UnboundedBelow: return check_unbounded_below(model, grid, v);
            case Axiom::UnboundedAbove: return check_unbounded_above(model, grid, v);
            case Axiom::StrictMonotone: return check_strict_monotone(model, grid, v);
            case Axiom::Continuous:
                if (is_custom(model)) {
                    v.kind = VerdictKind::NotApplicable;
                    v.detail = "continuity of a user-supplied utility cannot be sampled";
                } else {
                    v.detail = "composition of continuous functions on the open quadrant";
                }
                return v;
            case Axiom::Quasiconcave: return check_quasiconcave(model, grid, v);
            case Axiom::ScaleInvariant: return check_scale_invariant(model, grid, v);
            case Axiom::InadaPlus: return check_inada(model, grid, v);
            case Axiom::SingleCrossing: return check_single_crossing(model, grid, v);
            case Axiom::PoolingLiquidity: return check_pooling(model, grid, v);
        }
    } catch (const Error& e) {
        v.kind = VerdictKind::Violated;
        v.detail = std::string("evaluation failed: ") + e.what();
    }
    return v;
}

AxiomReport check_all(const AmmModel& model, const GridConfig& grid) {
    AxiomReport r;
    r.model = model.label();
    r.grid = grid;
    for (Axiom a : kAllAxioms) r.verdicts.push_back(check_axiom(model, a, grid));
    return r;
}

std::vector<Axiom> claim_mismatches(const AxiomReport& report, const AxiomClaims& claims) {
    std::vector<Axiom> out;
    for (Axiom a : kAllAxioms) {
        const AxiomClaim& c = claim_for(claims, a);
        const AxiomVerdict& v = report.at(a);
        bool ok;
        if (c.not_applicable) {
            ok = v.kind == VerdictKind::NotApplicable;
        } else {
            ok = (v.kind == VerdictKind::Satisfied) == c.holds && v.numeric_only == c.numeric_only;
        }
        if (!ok) out.push_back(a);
    }
    return out;
}

}  // namespace cfmm
