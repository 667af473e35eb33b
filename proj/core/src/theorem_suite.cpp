#include "cfmm/theorem_suite.hpp"

#include <cmath>
#include <functional>
#include <initializer_list>
#include <limits>
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

std::string fmt(Reserves r) { return "(" + fmt(r.a) + ", " + fmt(r.b) + ")"; }

using Outcome = std::optional<Witness>;

Witness witness(std::vector<Reserves> pts, std::vector<double> vals, std::string what,
                double parameter = 0.0) {
    return Witness{std::move(pts), std::move(vals), parameter, std::move(what)};
}

double Y(const AmmModel& m, double x, Reserves r) { return swap_y(m, x, r).output_amount; }
double X(const AmmModel& m, double y, Reserves r) { return swap_x(m, y, r).output_amount; }

class Suite {
public:
    Suite(const AmmModel& m, const AxiomReport& ax, const SuiteConfig& cfg)
        : m_(m), ax_(ax), cfg_(cfg) {
        report_.model = m.label();
    }

    bool has(Axiom a) const { return ax_.satisfied(a); }
    bool concavity() const { return has(Axiom::Quasiconcave) || has(Axiom::SingleCrossing); }

    // Runs `body` when `hypotheses` hold; `missing` names them otherwise.
    void run(const std::string& name, bool hypotheses, const std::string& needs,
             const std::function<Outcome()>& body) {
        PropertyCheck c;
        c.name = name;
        if (!hypotheses) {
            c.status = CheckStatus::Skipped;
            c.detail = "requires " + needs;
            report_.checks.push_back(std::move(c));
            return;
        }
        excluded_ = 0;
        try {
            if (auto w = body()) {
                c.status = CheckStatus::Failed;
                c.detail = w->description;
                c.witness = std::move(w);
            }
        } catch (const Error& e) {
            c.status = CheckStatus::Failed;
            c.detail = std::string("evaluation failed: ") + e.what();
        }
        if (excluded_ > 0 && c.status == CheckStatus::Passed) {
            c.detail = std::to_string(excluded_) +
                       " sample(s) excluded: exact remaining reserve below double range";
        }
        report_.checks.push_back(std::move(c));
    }

    // Samples whose exact answer is not representable cannot witness anything.
    bool exclude(const SwapQuote& q) {
        if (!q.below_resolution) return false;
        ++excluded_;
        return true;
    }

    // Visits every (reserves, trade) sample; stops at the first witness.
    Outcome each_trade(const std::function<Outcome(Reserves, double)>& f) const {
        for (const Reserves& r : cfg_.reserves) {
            for (double frac : cfg_.trade_fractions) {
                if (auto w = f(r, frac * r.a)) return w;
            }
        }
        return std::nullopt;
    }

    bool rel_close(double got, double want) const {
        return std::abs(got - want) <= cfg_.rel_tol * std::max(std::abs(want), 1e-300);
    }

    PropertyReport take() { return std::move(report_); }

    const AmmModel& m_;
    const AxiomReport& ax_;
    const SuiteConfig& cfg_;
    PropertyReport report_;
    int excluded_ = 0;
};

void swap_checks(Suite& s) {
    const AmmModel& m = s.m_;
    const double tol = s.cfg_.rel_tol;
    const bool C = s.has(Axiom::Continuous);
    const bool SM = s.has(Axiom::StrictMonotone);
    const bool UfB = s.has(Axiom::UnboundedBelow);

    s.run("utility strictly monotone", true, "", [&]() -> Outcome {
        const AxiomVerdict& v = s.ax_.at(Axiom::StrictMonotone);
        if (v.kind == VerdictKind::Satisfied) return std::nullopt;
        if (v.witness) return v.witness;
        return witness({}, {}, v.detail);
    });

    s.run("post-trade utility at least pre-trade", C, "C", [&] {
        return s.each_trade([&](Reserves r, double x) -> Outcome {
            const SwapQuote q = swap_y(m, x, r);
            const double u0 = utility(m, r);
            const double u1 = utility(m, q.post_reserves);
            if (u1 >= u0 - 1e-12 * std::max(1.0, std::abs(u0))) return std::nullopt;
            return witness({r, q.post_reserves}, {x, u0, u1},
                           "u after trading " + fmt(x) + " at " + fmt(r) + " drops to " + fmt(u1));
        });
    });

    s.run("utility preserved unless the reserve is exhausted", C, "C", [&] {
        return s.each_trade([&](Reserves r, double x) -> Outcome {
            const SwapQuote q = swap_y(m, x, r);
            if (q.exhausts_reserve || s.exclude(q)) return std::nullopt;
            const double u0 = utility(m, r);
            const double u1 = utility(m, q.post_reserves);
            if (std::abs(u1 - u0) <= tol * std::max(1.0, std::abs(u0))) return std::nullopt;
            return witness({r, q.post_reserves}, {x, u0, u1},
                           "u changes from " + fmt(u0) + " to " + fmt(u1) + " trading " + fmt(x));
        });
    });

    s.run("payout stays below the counter reserve", UfB && C, "UfB, C", [&]() -> Outcome {
        for (const Reserves& r : s.cfg_.reserves) {
            for (double f : {0.01, 1.0, 1e3, 1e6}) {
                const SwapQuote q = swap_y(m, f * r.a, r);
                if (q.exhausts_reserve || !(q.post_reserves.b > 0.0)) {
                    return witness({r}, {f * r.a, q.output_amount},
                                   "trading " + fmt(f * r.a) + " at " + fmt(r) + " pays " +
                                       fmt(q.output_amount));
                }
            }
        }
        return std::nullopt;
    });

    s.run("zero input pays nothing", SM, "SM", [&]() -> Outcome {
        for (const Reserves& r : s.cfg_.reserves) {
            const double y = Y(m, 0.0, r);
            if (y != 0.0) return witness({r}, {y}, "Y(0) = " + fmt(y) + " at " + fmt(r));
        }
        return std::nullopt;
    });

    // Strictness is read off the remaining reserve, which the solver carries
    // exactly; b - w rounds to b once the pool is nearly drained.
    auto monotone = [&](bool strict) -> Outcome {
        for (const Reserves& r : s.cfg_.reserves) {
            double prev = r.b;
            double xprev = 0.0;
            for (int k = -8; k <= 8; ++k) {
                const double x = r.a * std::pow(10.0, k / 4.0);
                const SwapQuote q = swap_y(m, x, r);
                if (s.exclude(q)) break;
                const double w = q.post_reserves.b;
                if (strict ? !(w < prev) : !(w <= prev)) {
                    return witness({r}, {xprev, r.b - prev, x, r.b - w},
                                   "Y(" + fmt(x) + ") = " + fmt(r.b - w) + " vs Y(" + fmt(xprev) +
                                       ") = " + fmt(r.b - prev) + " at " + fmt(r));
                }
                prev = w;
                xprev = x;
            }
        }
        return std::nullopt;
    };
    s.run("payout nondecreasing in input", SM, "SM", [&] { return monotone(false); });
    s.run("payout strictly increasing in input", SM && UfB && C, "SM, UfB, C",
          [&] { return monotone(true); });

    s.run("payout tends to the counter reserve", s.has(Axiom::UnboundedAbove) && SM && C,
          "UfA, SM, C", [&]() -> Outcome {
              for (const Reserves& r : s.cfg_.reserves) {
                  const double y = Y(m, 1e9 * r.a, r);
                  if (!(y >= 0.999 * r.b)) {
                      return witness({r}, {1e9 * r.a, y},
                                     "Y(1e9 a) = " + fmt(y) + " at " + fmt(r));
                  }
              }
              return std::nullopt;
          });

    s.run("payout upper semicontinuous", C, "C", [&]() -> Outcome {
        for (const Reserves& r : s.cfg_.reserves) {
            const double x = r.a;
            const double y0 = Y(m, x, r);
            for (double h : {1e-7 * r.a, -1e-7 * r.a}) {
                const double y1 = Y(m, x + h, r);
                if (!(y1 <= y0 + 1e-5 * r.b)) {
                    return witness({r}, {x, y0, x + h, y1},
                                   "Y jumps from " + fmt(y0) + " to " + fmt(y1) + " near " +
                                       fmt(x));
                }
            }
        }
        return std::nullopt;
    });

    s.run("payout concave", C && s.concavity(), "C and (QC or SC)", [&]() -> Outcome {
        for (const Reserves& r : s.cfg_.reserves) {
            std::vector<double> ys;
            const double dx = r.a / 4.0;
            for (int k = 0; k <= 16; ++k) ys.push_back(Y(m, k * dx, r));
            for (int k = 1; k < 16; ++k) {
                const double d2 = ys[k + 1] - 2.0 * ys[k] + ys[k - 1];
                if (d2 > 1e-9 * r.b) {
                    return witness({r}, {k * dx, d2},
                                   "second difference " + fmt(d2) + " at x = " + fmt(k * dx) +
                                       ", reserves " + fmt(r));
                }
            }
        }
        return std::nullopt;
    });

    s.run("payout positively homogeneous", C && s.has(Axiom::ScaleInvariant), "C, SI", [&] {
        return s.each_trade([&](Reserves r, double x) -> Outcome {
            const double y = Y(m, x, r);
            for (double t : {0.5, 2.0, 10.0}) {
                const double yt = Y(m, t * x, {t * r.a, t * r.b});
                if (!s.rel_close(yt, t * y)) {
                    return witness({r}, {x, y, yt}, "Y(tx; ta, tb) = " + fmt(yt) + " vs t Y = " +
                                                        fmt(t * y) + " at t = " + fmt(t), t);
                }
            }
            return std::nullopt;
        });
    });

    s.run("payout subadditive", SM && C && s.concavity(), "SM, C and (QC or SC)",
          [&]() -> Outcome {
              for (const Reserves& r : s.cfg_.reserves) {
                  for (double f1 : s.cfg_.trade_fractions) {
                      for (double f2 : s.cfg_.trade_fractions) {
                          const double x1 = f1 * r.a, x2 = f2 * r.a;
                          const double whole = Y(m, x1 + x2, r);
                          const double parts = Y(m, x1, r) + Y(m, x2, r);
                          if (whole > parts + 1e-9 * r.b) {
                              return witness({r}, {x1, x2, whole, parts},
                                             "Y(x1+x2) = " + fmt(whole) + " exceeds Y(x1)+Y(x2) = " +
                                                 fmt(parts));
                          }
                      }
                  }
              }
              return std::nullopt;
          });

    s.run("split execution equals bulk execution", UfB && SM && C, "UfB, SM, C",
          [&]() -> Outcome {
              for (const Reserves& r : s.cfg_.reserves) {
                  for (double f1 : s.cfg_.trade_fractions) {
                      for (double f2 : s.cfg_.trade_fractions) {
                          const double x1 = f1 * r.a, x2 = f2 * r.a;
                          const double whole = Y(m, x1 + x2, r);
                          const SwapQuote first = swap_y(m, x1, r);
                          const double split =
                              first.output_amount + Y(m, x2, first.post_reserves);
                          if (!s.rel_close(split, whole)) {
                              return witness({r}, {x1, x2, whole, split},
                                             "bulk " + fmt(whole) + " vs split " + fmt(split));
                          }
                      }
                  }
              }
              return std::nullopt;
          });

    const bool mr = UfB && s.has(Axiom::SingleCrossing);
    s.run("payout monotone in reserves", mr, "UfB, SC", [&] {
        return s.each_trade([&](Reserves r, double x) -> Outcome {
            const SwapQuote q = swap_y(m, x, r);
            const double ea = 1e-6 * r.a, eb = 1e-6 * r.b;
            const double ya = Y(m, x, {r.a + ea, r.b});
            const double slack = 1e-12 * r.b;
            if (ya > q.output_amount + slack) {
                return witness({r}, {x, q.output_amount, ya},
                               "Y grows with a: " + fmt(q.output_amount) + " -> " + fmt(ya));
            }
            // Y(x; a, b + eps) - Y(x; a, b) = eps - (w' - w) in remaining reserves.
            const double w = q.post_reserves.b;
            const double wb = swap_y(m, x, {r.a, r.b + eb}).post_reserves.b;
            const double dw = wb - w;
            if (dw < -slack || dw > eb + slack) {
                return witness({r}, {x, w, wb},
                               "Y increment in b out of [0, eps]: " + fmt(eb - dw));
            }
            return std::nullopt;
        });
    });

    s.run("payout limits as a reserve vanishes", mr, "UfB, SC", [&]() -> Outcome {
        for (const Reserves& r : s.cfg_.reserves) {
            const double x = r.a;
            double prev_gap = r.b;
            // Deep probes: slowly diverging utilities need astronomically small a'.
            std::vector<double> probes;
            for (double k : {1e-4, 1e-8, 1e-16, 1e-32, 1e-64, 1e-128, 1e-256}) probes.push_back(k * r.a);
            probes.push_back(std::numeric_limits<double>::min());
            for (double ab : probes) {
                const double gap = swap_y(m, x, {ab, r.b}).post_reserves.b;
                if (!(gap <= prev_gap)) {
                    return witness({{ab, r.b}}, {gap, prev_gap},
                                   "b - Y(x; a', b) grows as a' shrinks");
                }
                prev_gap = gap;
            }
            // The threshold is only demanded when some representable a' attains it:
            // Y(x; a', b) >= (1 - 1e-3) b iff u(a', b) <= u(a' + x, 1e-3 b).
            const bool reachable = utility(m, {std::numeric_limits<double>::min(), r.b}) <=
                                   utility(m, {x, 1e-3 * r.b});
            if (!(prev_gap <= 1e-3 * r.b) && reachable) {
                return witness({r}, {prev_gap}, "Y(x; a', b) stays " + fmt(prev_gap) + " below b");
            }
            double prev = Y(m, x, r);
            for (double k : {1e-4, 1e-8, 1e-12}) {
                const double bb = k * r.b;
                const double y = Y(m, x, {r.a, bb});
                if (!(y <= bb) || !(y <= prev)) {
                    return witness({r}, {bb, y}, "Y(x; a, b') = " + fmt(y) + " with b' = " + fmt(bb));
                }
                prev = y;
            }
        }
        return std::nullopt;
    });

    s.run("payout limits as a reserve grows",
          mr && s.has(Axiom::Quasiconcave) && s.has(Axiom::InadaPlus), "UfB, SC, QC, I+",
          [&]() -> Outcome {
              for (const Reserves& r : s.cfg_.reserves) {
                  const double x = r.a;
                  std::vector<double> ya, yb;
                  for (double k : {1e4, 1e8, 1e12}) {
                      ya.push_back(Y(m, x, {k * r.a, r.b}));
                      yb.push_back(Y(m, x, {r.a, k * r.b}));
                  }
                  if (!(ya[1] < ya[0] && ya[2] < ya[1] && ya[2] < 0.1 * ya[0])) {
                      return witness({r}, ya, "Y(x; a', b) does not vanish as a' grows");
                  }
                  if (!(yb[1] > yb[0] && yb[2] > yb[1] && yb[2] > 10.0 * yb[0])) {
                      return witness({r}, yb, "Y(x; a, b') does not diverge as b' grows");
                  }
              }
              return std::nullopt;
          });

    s.run("round trip returns at most the input", SM && C, "SM, C", [&] {
        return s.each_trade([&](Reserves r, double x) -> Outcome {
            const double back = round_trip(m, x, r);
            if (back <= x * (1.0 + tol)) return std::nullopt;
            return witness({r}, {x, back}, "round trip of " + fmt(x) + " returns " + fmt(back));
        });
    });

    s.run("round trip returns exactly the input", SM && C && UfB, "SM, C, UfB", [&] {
        return s.each_trade([&](Reserves r, double x) -> Outcome {
            if (s.exclude(swap_y(m, x, r))) return std::nullopt;
            const double back = round_trip(m, x, r);
            if (s.rel_close(back, x)) return std::nullopt;
            return witness({r}, {x, back}, "round trip of " + fmt(x) + " returns " + fmt(back));
        });
    });
}

void oracle_checks(Suite& s, const GridConfig& grid) {
    const AmmModel& m = s.m_;
    const bool SC = s.has(Axiom::SingleCrossing);
    const auto axis = grid.axis();

    s.run("oracle partial signs", SC, "SC", [&]() -> Outcome {
        for (double a : axis) {
            for (double b : axis) {
                const Reserves r{a, b};
                const double P = price(m, r);
                const PricePartials d = price_partials(m, r);
                const double scale = std::max({1.0, std::abs(P), std::abs(d.a), std::abs(d.b)});
                if (d.a > 1e-9 * scale || d.b < -1e-9 * scale) {
                    return witness({r}, {d.a, d.b},
                                   "P_A = " + fmt(d.a) + ", P_B = " + fmt(d.b) + " at " + fmt(r));
                }
            }
        }
        return std::nullopt;
    });

    s.run("oracle scale invariant", s.has(Axiom::ScaleInvariant), "SI", [&]() -> Outcome {
        for (double a : axis) {
            for (double b : axis) {
                const double P = price(m, {a, b});
                for (double t : {0.1, 3.0, 100.0}) {
                    const double Pt = price(m, {t * a, t * b});
                    if (std::abs(Pt - P) > 1e-10 * P) {
                        return witness({{a, b}}, {P, Pt}, "P(t r) = " + fmt(Pt) + " vs " + fmt(P), t);
                    }
                }
            }
        }
        return std::nullopt;
    });

    s.run("oracle surjective",
          SC && s.has(Axiom::UnboundedBelow) && s.has(Axiom::Quasiconcave) &&
              s.has(Axiom::InadaPlus),
          "SC, UfB, QC, I+", [&]() -> Outcome {
              bool high = false, low = false;
              double last_hi = 0.0, last_lo = 0.0;
              for (int k = 1; k <= 100 && !(high && low); ++k) {
                  const double big = std::pow(10.0, k);
                  last_hi = price(m, {1.0, big});
                  last_lo = price(m, {big, 1.0});
                  high = high || last_hi > 1e3;
                  low = low || last_lo < 1e-3;
              }
              if (high && low) return std::nullopt;
              return witness({{1.0, 1e100}, {1e100, 1.0}}, {last_hi, last_lo},
                             "oracle stays within [" + fmt(last_lo) + ", " + fmt(last_hi) +
                                 "] up to reserve ratio 1e100");
          });

    const bool diff = s.has(Axiom::StrictMonotone) && s.has(Axiom::Continuous);
    s.run("oracle equals marginal payout", diff, "SM, C", [&]() -> Outcome {
        for (const Reserves& r : s.cfg_.reserves) {
            const double h = 1e-6 * r.a;
            const double slope = Y(m, h, r) / h;
            const double P = price(m, r);
            if (std::abs(slope - P) > 1e-5 * P) {
                return witness({r}, {P, slope},
                               "P = " + fmt(P) + " vs difference quotient " + fmt(slope));
            }
        }
        return std::nullopt;
    });

    s.run("no bid-ask spread without fees", diff, "SM, C", [&]() -> Outcome {
        for (const Reserves& r : s.cfg_.reserves) {
            // Richardson tableau on X(h) / h over h, h/2, h/4, h/8.
            constexpr int kLevels = 4;
            const double h = 1e-2 * std::min(r.a, r.b);
            double T[kLevels][kLevels];
            for (int i = 0; i < kLevels; ++i) {
                const double hi = std::ldexp(h, -i);
                T[i][0] = X(m, hi, r) / hi;
                for (int j = 1; j <= i; ++j) {
                    const double f = std::ldexp(1.0, j);
                    T[i][j] = (f * T[i][j - 1] - T[i - 1][j - 1]) / (f - 1.0);
                }
            }
            const double dX = T[kLevels - 1][kLevels - 1];
            const double prod = price(m, r) * dX;
            if (std::abs(prod - 1.0) > 1e-8) {
                return witness({r}, {prod}, "P X'(0) = " + fmt(prod) + " at " + fmt(r));
            }
        }
        return std::nullopt;
    });

    s.run("pooling increases liquidity",
          s.has(Axiom::UnboundedBelow) && s.has(Axiom::Quasiconcave) &&
              s.has(Axiom::InadaPlus) && SC && s.has(Axiom::PoolingLiquidity),
          "UfB, QC, I+, SC, P-cond", [&]() -> Outcome {
              for (const Reserves& r : s.cfg_.reserves) {
                  const PoolingPlan plan = pool_deposit(m, r, 0.5 * r.a);
                  const Reserves pooled{r.a + plan.delta_a, r.b + plan.delta_b};
                  for (double f : s.cfg_.trade_fractions) {
                      const double x = f * r.a, y = f * r.b;
                      const double before = Y(m, x, r), after = Y(m, x, pooled);
                      if (after < before - 1e-9 * r.b) {
                          return witness({r, pooled}, {x, before, after},
                                         "Y falls from " + fmt(before) + " to " + fmt(after));
                      }
                      const double xb = X(m, y, r), xa = X(m, y, pooled);
                      if (xa < xb - 1e-9 * r.a) {
                          return witness({r, pooled}, {y, xb, xa},
                                         "X falls from " + fmt(xb) + " to " + fmt(xa));
                      }
                  }
              }
              return std::nullopt;
          });
}

}  // namespace

bool PropertyReport::all_passed() const {
    for (const auto& c : checks) {
        if (c.status == CheckStatus::Failed) return false;
    }
    return true;
}

const PropertyCheck* PropertyReport::find(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

PropertyReport check_theorem_suite(const AmmModel& model, const GridConfig& grid,
                                   const SuiteConfig& cfg, const AxiomReport* axioms) {
    AxiomReport own;
    if (axioms == nullptr) {
        own = check_all(model, grid);
        axioms = &own;
    }
    Suite s(model, *axioms, cfg);
    swap_checks(s);
    oracle_checks(s, grid);
    return s.take();
}

}  // namespace cfmm
