#include <doctest.h>

#include <cmath>

#include "cfmm/divergence.hpp"
#include "cfmm/errors.hpp"
#include "cfmm/oracle.hpp"
#include "gen.hpp"

using namespace cfmm;
using cfmm::test::Gen;
using cfmm::test::rel_err;

namespace {

// Constant-product divergence written out in the trade coordinate; pooled
// reserves A, B after a proportional injection delta.
double v2_divergence(double g, double delta, Reserves base, double z) {
    const double A = (1.0 + delta) * base.a, B = (1.0 + delta) * base.b;
    if (z >= 0.0) {
        const double t = A / (A + z);
        return delta * base.b * (1.0 - 2.0 * std::pow(t, 1.0 - g) + std::pow(t, 2.0 - g));
    }
    const double s = (B - z) / B;
    return delta * base.b * (1.0 - 2.0 * s + std::pow(s, 2.0 - g));
}

}  // namespace

TEST_CASE("setup validation") {
    const AmmModel m = AmmModel::uniswap_v2();
    CHECK_THROWS_AS(DivergenceSetup(m, FeeLevel(0.0), {1, 1}, 1.0, 2.0), DomainError);
    CHECK_THROWS_AS(DivergenceSetup(m, FeeLevel(0.0), {1, 1}, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(DivergenceSetup::proportional(m, FeeLevel(0.0), {1, 1}, -1.0), DomainError);
    const auto s = DivergenceSetup::proportional(m, FeeLevel(0.01), {2, 3}, 0.5);
    CHECK(s.delta() == doctest::Approx(0.5));
    CHECK(s.pooled() == Reserves{3.0, 4.5});
    CHECK(s.pool_share() == doctest::Approx(0.5 / 1.5));
    CHECK_FALSE(DivergenceSetup::pool_a(AmmModel::sdamm_sinh(1.0, 0.8), FeeLevel(0.0), {10, 1}, 1.0)
                    .delta());
}

TEST_CASE("zero trade has zero divergence") {
    for (const AmmModel& m : real_world_catalog()) {
        const auto s = DivergenceSetup::pool_a(m, FeeLevel(0.01), {2, 3}, 1.0);
        CHECK(divergence_at_trade(s, 0.0) == 0.0);
        CHECK(divergence_at_price(s, s.initial_price()) == 0.0);
    }
}

TEST_CASE("constant product matches the closed form") {
    Gen gen(31);
    for (int i = 0; i < 30; ++i) {
        const Reserves base = gen.reserves(0.1, 10.0);
        const double g = gen.uniform(0.0, 0.3);
        const double delta = gen.log_uniform(0.01, 10.0);
        const auto s = DivergenceSetup::proportional(AmmModel::uniswap_v2(), FeeLevel(g), base, delta);
        const Reserves P = s.pooled();
        for (double f : {-5.0, -0.5, -0.01, 0.01, 0.5, 5.0}) {
            const double z = f * (f > 0 ? P.a : P.b);
            const double want = v2_divergence(g, delta, base, z);
            CHECK(std::abs(divergence_at_trade(s, z) - want) <= 1e-8 * delta * base.b);
        }
    }
}

TEST_CASE("fee-less scale-invariant divergence is nonnegative") {
    Gen gen(32);
    for (const AmmModel& m : real_world_catalog()) {
        if (!m.claims(Axiom::ScaleInvariant) || m.kind() == ModelKind::Dodo) continue;
        CAPTURE(m.label());
        const Reserves base = gen.reserves(0.5, 5.0);
        const auto s = DivergenceSetup::proportional(m, FeeLevel(0.0), base, 0.3);
        // A linear pool drains at the other reserve; stay short of it.
        const Reserves P = s.pooled();
        const double reach = m.kind() == ModelKind::MStable ? 0.9 * std::min(P.a, P.b) : 0.0;
        const DivergenceCurve c =
            m.kind() == ModelKind::MStable
                ? sample_divergence_trades(s, -reach, reach, 61, false)
                : sample_divergence_trades(s, -5.0 * P.b, 5.0 * P.a, 61, false);
        for (const auto& smp : c.samples) CHECK(smp.delta >= -1e-9 * 0.3 * base.b);
    }
}

TEST_CASE("constant product gain interval") {
    for (double g : {0.003, 0.01, 0.05, 0.3}) {
        const double tl = constant_product_t_low(g);
        const double th = constant_product_t_high(g);
        CHECK(tl > 0.0);
        CHECK(tl < 1.0);
        CHECK(th > 1.0);
        CHECK(std::abs(1.0 - 2.0 * std::pow(tl, 1.0 - g) + std::pow(tl, 2.0 - g)) < 1e-12);
        CHECK(std::abs(1.0 - 2.0 * th + std::pow(th, 2.0 - g)) < 1e-12);

        const Reserves base{4.0, 9.0};
        const double delta = 0.25;
        const auto s = DivergenceSetup::proportional(AmmModel::uniswap_v2(), FeeLevel(g), base, delta);
        const auto gi = gain_interval(s);
        REQUIRE(gi);
        CHECK(gi->p_low < s.initial_price());
        CHECK(gi->p_high > s.initial_price());
        const double tol = 1e-8 * delta * base.b;
        CHECK(std::abs(divergence_at_trade(s, gi->z_low)) <= tol);
        CHECK(std::abs(divergence_at_trade(s, gi->z_high)) <= tol);
        CHECK(rel_err(price(s.model(), post_trade_reserves(s, gi->z_low)), gi->p_low) < 1e-9);
        CHECK(rel_err(price(s.model(), post_trade_reserves(s, gi->z_high)), gi->p_high) < 1e-9);
        // Gains inside, losses just outside.
        CHECK(divergence_at_trade(s, 0.5 * gi->z_low) < 0.0);
        CHECK(divergence_at_trade(s, 0.5 * gi->z_high) < 0.0);
        CHECK(divergence_at_trade(s, 2.0 * gi->z_low) > 0.0);
        CHECK(divergence_at_trade(s, 2.0 * gi->z_high) > 0.0);

        const auto num = gain_interval_numeric(s);
        REQUIRE(num);
        CHECK(rel_err(num->p_low, gi->p_low) < 1e-6);
        CHECK(rel_err(num->p_high, gi->p_high) < 1e-6);
    }
    CHECK_FALSE(gain_interval(
        DivergenceSetup::proportional(AmmModel::uniswap_v2(), FeeLevel(0.0), {1, 1}, 1.0)));
}

TEST_CASE("simplified divergence equals the definition") {
    for (const AmmModel& m : {AmmModel::uniswap_v2(), AmmModel::balancer(0.3), AmmModel::curve(2.0),
                              AmmModel::lstableswap(1.0)}) {
        CAPTURE(m.label());
        const auto s = DivergenceSetup::proportional(m, FeeLevel(0.02), {3.0, 2.0}, 0.4);
        const double P0 = s.initial_price();
        for (double f : {0.2, 0.7, 0.95, 1.05, 1.5, 4.0}) {
            const double p = f * P0;
            const double raw = divergence_at_price(s, p);
            CHECK(std::abs(divergence_simplified(s, p) - raw) <= 1e-9 * (1.0 + std::abs(raw)));
        }
    }
    const auto pooled = DivergenceSetup::pool_a(AmmModel::sdamm_sinh(1.0, 0.8), FeeLevel(0.0), {10, 1}, 1.0);
    CHECK_THROWS_AS(divergence_simplified(pooled, 1.0), DomainError);
}

TEST_CASE("price coordinate agrees with the trade coordinate") {
    const auto s = DivergenceSetup::pool_a(default_sdamm(), FeeLevel(0.01), {10, 1}, 1.0);
    for (double z : {-0.5, -0.05, 0.3, 3.0}) {
        const double p = price(s.model(), post_trade_reserves(s, z));
        CHECK(rel_err(solve_trade_for_price(s, p), z) < 1e-8);
        CHECK(std::abs(divergence_at_price(s, p) - divergence_at_trade(s, z)) < 1e-9);
    }
}

TEST_CASE("unreachable prices") {
    // Linear pools stay at unit price until exhaustion.
    const auto s = DivergenceSetup::proportional(AmmModel::mstable(), FeeLevel(0.0), {1, 1}, 1.0);
    CHECK_THROWS_AS(solve_trade_for_price(s, 0.5), UnreachablePrice);
    CHECK_THROWS_AS(divergence_at_price(s, -1.0), DomainError);
}

TEST_CASE("sinh pools gain near the initial price and lose far away") {
    for (double q : {0.8, 0.95, 1.0}) {
        for (int setup = 0; setup < 2; ++setup) {
            const AmmModel m = AmmModel::sdamm_sinh(1.0, q);
            const auto s = setup == 0 ? DivergenceSetup::pool_a(m, FeeLevel(0.0), {10, 1}, 1.0)
                                      : DivergenceSetup::pool_b(m, FeeLevel(0.0), {1, 10}, 1.0);
            CAPTURE(q);
            CAPTURE(setup);
            const auto gi = gain_interval(s);
            REQUIRE(gi);
            CHECK(gi->z_low >= 0.0);
            CHECK(gi->z_high <= 0.0);
            CHECK(gi->z_low - gi->z_high > 0.0);
            const double inside = gi->z_low > 0.0 ? 0.5 * gi->z_low : 0.5 * gi->z_high;
            CHECK(divergence_at_trade(s, inside) < 0.0);
            const double outside = gi->z_low > 0.0 ? 1.5 * gi->z_low : 1.5 * gi->z_high;
            CHECK(divergence_at_trade(s, outside) >= 0.0);
        }
    }
}

TEST_CASE("fees lower the divergence") {
    const AmmModel m = AmmModel::sdamm_sinh(1.0, 1.0);
    for (double z : {-0.5, -0.1, 0.5, 2.0}) {
        double prev = INFINITY;
        for (double g : {0.0, 0.003, 0.01, 0.05, 0.2}) {
            const auto s = DivergenceSetup::pool_a(m, FeeLevel(g), {10, 1}, 1.0);
            const double d = divergence_at_trade(s, z);
            CHECK(d <= prev + 1e-12);
            prev = d;
        }
    }
}

TEST_CASE("sampling") {
    const auto s = DivergenceSetup::proportional(AmmModel::uniswap_v2(), FeeLevel(0.01), {1, 1}, 1.0);
    const DivergenceCurve c = sample_divergence_trades(s, -1.0, 1.0, 4);
    REQUIRE(c.samples.size() == 5);
    CHECK(c.samples[0].branch == "buyA");
    CHECK(c.samples[2].branch == "origin");
    CHECK(c.samples[4].branch == "sellA");
    for (std::size_t i = 1; i < c.samples.size(); ++i) {
        CHECK(c.samples[i].coordinate > c.samples[i - 1].coordinate);
    }
    for (const auto& smp : c.samples) {
        CHECK(std::abs(smp.delta - v2_divergence(0.01, 1.0, {1, 1}, smp.coordinate)) < 1e-9);
    }
    CHECK(c.gain_interval);
    const DivergenceCurve pc = sample_divergence_prices(s, {2.0, 0.5, 1.0}, false);
    REQUIRE(pc.samples.size() == 3);
    CHECK(pc.samples[0].coordinate == 0.5);
    CHECK(pc.samples[1].delta == 0.0);
    CHECK_FALSE(pc.gain_interval);
    CHECK_THROWS_AS(sample_divergence_trades(s, 1.0, -1.0, 3), DomainError);
}
