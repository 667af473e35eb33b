#include <doctest.h>

#include <cmath>

#include "cfmm/oracle.hpp"
#include "gen.hpp"

using namespace cfmm;
using cfmm::test::Gen;
using cfmm::test::rel_err;

namespace {

std::vector<AmmModel> analytic_models() {
    auto v = real_world_catalog();
    v.push_back(default_sdamm());
    v.push_back(AmmModel::sdamm_sinh(1.0, 1.0));
    v.push_back(AmmModel::sdamm_sinh(0.5, 0.95));
    v.push_back(AmmModel::sdamm(LogUtility{}));
    return v;
}

double central(const std::function<double(double)>& f, double x) {
    const double h = std::cbrt(2.2e-16) * std::abs(x);
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("constant product oracle and partials") {
    Gen gen(11);
    const AmmModel m = AmmModel::uniswap_v2();
    for (int i = 0; i < 100; ++i) {
        const Reserves r = gen.reserves();
        const double a = r.a, b = r.b;
        const OraclePoint o = oracle_point(m, r);
        CHECK(rel_err(o.price, b / a) < 1e-12);
        CHECK(rel_err(o.p_a, -b / (a * a)) < 1e-10);
        CHECK(rel_err(o.p_b, 1.0 / a) < 1e-10);
        CHECK(rel_err(o.p_aa, 2.0 * b / (a * a * a)) < 1e-10);
        CHECK(rel_err(o.p_ab, -1.0 / (a * a)) < 1e-10);
        CHECK(std::abs(o.p_bb) < 1e-10 / (a * a));
        CHECK(rel_err(liquidity_condition(m, r), 2.0 * b / (a * a * a * a)) < 1e-8);
    }
}

TEST_CASE("linear invariant has a unit price and zero curvature") {
    const OraclePoint o = oracle_point(AmmModel::mstable(), {3.0, 7.0});
    CHECK(o.price == doctest::Approx(1.0));
    CHECK(std::abs(o.p_a) < 1e-12);
    CHECK(std::abs(o.p_b) < 1e-12);
    CHECK(std::abs(liquidity_condition(o)) < 1e-12);
}

TEST_CASE("price is the ratio of marginal utilities") {
    Gen gen(12);
    for (const AmmModel& m : analytic_models()) {
        CAPTURE(m.label());
        for (int i = 0; i < 40; ++i) {
            const Reserves r = gen.reserves(1e-2, 1e2);
            const double ua = central([&](double x) { return utility(m, {x, r.b}); }, r.a);
            const double ub = central([&](double y) { return utility(m, {r.a, y}); }, r.b);
            CHECK(rel_err(price(m, r), ua / ub) < 1e-6);
        }
    }
}

TEST_CASE("price partials agree with differences of the price") {
    Gen gen(13);
    for (const AmmModel& m : analytic_models()) {
        CAPTURE(m.label());
        for (int i = 0; i < 40; ++i) {
            const Reserves r = gen.reserves(1e-2, 1e2);
            const OraclePoint o = oracle_point(m, r);
            const double pa = central([&](double x) { return price(m, {x, r.b}); }, r.a);
            const double pb = central([&](double y) { return price(m, {r.a, y}); }, r.b);
            const double scale_a = std::abs(o.price) / r.a;
            const double scale_b = std::abs(o.price) / r.b;
            CHECK(std::abs(o.p_a - pa) <= 1e-6 * std::max(std::abs(pa), scale_a));
            CHECK(std::abs(o.p_b - pb) <= 1e-6 * std::max(std::abs(pb), scale_b));
            const double paa =
                central([&](double x) { return price_partials(m, {x, r.b}).a; }, r.a);
            const double pab =
                central([&](double y) { return price_partials(m, {r.a, y}).a; }, r.b);
            const double pbb =
                central([&](double y) { return price_partials(m, {r.a, y}).b; }, r.b);
            CHECK(std::abs(o.p_aa - paa) <= 1e-5 * std::max(std::abs(paa), scale_a / r.a));
            CHECK(std::abs(o.p_ab - pab) <= 1e-5 * std::max(std::abs(pab), scale_a / r.b));
            CHECK(std::abs(o.p_bb - pbb) <= 1e-5 * std::max(std::abs(pbb), scale_b / r.b));
        }
    }
}

TEST_CASE("custom utilities fall back to finite differences") {
    const AmmModel m = AmmModel::sdamm(CustomUtility{"sqrt", [](double z) { return std::sqrt(z); }});
    const OraclePoint o = oracle_point(m, {4.0, 1.0});
    CHECK(o.source == DerivativeSource::FiniteDifference);
    // sqrt'(4) / sqrt'(1) = 1/2.
    CHECK(o.price == doctest::Approx(0.5).epsilon(1e-7));
}
