#include <doctest.h>

#include <cmath>

#include "cfmm/axioms.hpp"
#include "cfmm/errors.hpp"

using namespace cfmm;

namespace {

bool same_witness(const std::optional<Witness>& x, const std::optional<Witness>& y) {
    if (x.has_value() != y.has_value()) return false;
    if (!x) return true;
    return x->points == y->points && x->values == y->values && x->description == y->description;
}

}  // namespace

TEST_CASE("grid validation") {
    GridConfig g;
    CHECK_NOTHROW(g.validate());
    g.lo = 0.0;
    CHECK_THROWS_AS(g.validate(), DomainError);
    g = {};
    g.points = 4;
    CHECK_THROWS_AS(g.validate(), DomainError);
    g = {};
    g.qc_lambdas = {1.0};
    CHECK_THROWS_AS(g.validate(), DomainError);
    const auto axis = GridConfig{}.axis();
    CHECK(axis.front() == 1e-3);
    CHECK(axis.back() == 1e3);
    CHECK(axis.size() == 16);
}

TEST_CASE("catalog verdicts against the published claims") {
    for (const AmmModel& m : real_world_catalog()) {
        CAPTURE(m.label());
        const AxiomReport r = check_all(m);
        const auto mism = claim_mismatches(r, m.claims());
        if (m.kind() == ModelKind::UniswapV3 || m.kind() == ModelKind::StableSwap) {
            // The marginal utility of a vanishing reserve stays bounded for
            // these two, contrary to the claim.
            REQUIRE(mism.size() == 1);
            CHECK(mism[0] == Axiom::InadaPlus);
            CHECK(r.at(Axiom::InadaPlus).witness);
        } else {
            CHECK(mism.empty());
        }
    }
}

TEST_CASE("sdamm verdicts") {
    const AxiomReport log = check_all(AmmModel::sdamm(LogUtility{}));
    for (Axiom a : kAllAxioms) CHECK(log.satisfied(a));
    const AmmModel q1 = AmmModel::sdamm_sinh(1.0, 1.0);
    CHECK(claim_mismatches(check_all(q1), q1.claims()).empty());
    const AmmModel q08 = default_sdamm();
    CHECK(claim_mismatches(check_all(q08), q08.claims()).empty());
}

TEST_CASE("violations carry sound witnesses") {
    SUBCASE("unbounded below") {
        const AxiomVerdict v = check_axiom(AmmModel::mstable(), Axiom::UnboundedBelow);
        REQUIRE(v.kind == VerdictKind::Violated);
        REQUIRE(v.witness);
        const Reserves z = v.witness->points.at(0);
        CHECK((z.a == 0.0 || z.b == 0.0));
        CHECK(std::isfinite(utility(AmmModel::mstable(), z)));
    }
    SUBCASE("scale invariance") {
        const AmmModel m = AmmModel::uniswap_v3(1.0, 1.0);
        const AxiomVerdict v = check_axiom(m, Axiom::ScaleInvariant);
        REQUIRE(v.kind == VerdictKind::Violated);
        REQUIRE(v.witness);
        const Reserves p = v.witness->points.at(0), q = v.witness->points.at(1);
        const double t = v.witness->parameter;
        CHECK(utility(m, p) >= utility(m, q));
        CHECK(utility(m, {t * p.a, t * p.b}) < utility(m, {t * q.a, t * q.b}));
    }
    SUBCASE("inada") {
        const AxiomVerdict v = check_axiom(AmmModel::mstable(), Axiom::InadaPlus);
        REQUIRE(v.kind == VerdictKind::Violated);
        CHECK_FALSE(v.trend.empty());
        CHECK_FALSE(v.detail.empty());
    }
    SUBCASE("strict monotonicity of a flat utility") {
        const AmmModel m = AmmModel::sdamm(CustomUtility{"flat", [](double) { return 1.0; }});
        const AxiomVerdict v = check_axiom(m, Axiom::StrictMonotone);
        REQUIRE(v.kind == VerdictKind::Violated);
        REQUIRE(v.witness);
        CHECK(utility(m, v.witness->points[1]) <= utility(m, v.witness->points[0]));
    }
}

TEST_CASE("verdicts are deterministic") {
    for (const AmmModel& m : {AmmModel::uniswap_v3(1.0, 1.0), AmmModel::curve(2.0), default_sdamm()}) {
        const AxiomReport r1 = check_all(m);
        const AxiomReport r2 = check_all(m);
        for (Axiom a : kAllAxioms) {
            CHECK(r1.at(a).kind == r2.at(a).kind);
            CHECK(r1.at(a).detail == r2.at(a).detail);
            CHECK(same_witness(r1.at(a).witness, r2.at(a).witness));
        }
    }
}

TEST_CASE("custom utilities") {
    const AmmModel sq = AmmModel::sdamm(CustomUtility{"sqrt", [](double z) { return std::sqrt(z); }});
    const AxiomReport r = check_all(sq);
    CHECK(r.at(Axiom::Continuous).kind == VerdictKind::NotApplicable);
    CHECK(r.satisfied(Axiom::StrictMonotone));
    // sqrt(0) = 0 is finite.
    CHECK(r.at(Axiom::UnboundedBelow).kind == VerdictKind::Violated);
    CHECK(r.satisfied(Axiom::Quasiconcave));
}

TEST_CASE("dodo pooling is not applicable") {
    CHECK(check_axiom(AmmModel::dodo(1.5, 0.5), Axiom::PoolingLiquidity).kind ==
          VerdictKind::NotApplicable);
}

TEST_CASE("coarser grids reach the same verdicts") {
    GridConfig g;
    g.points = 8;
    g.probe_decades = 6;
    for (const AmmModel& m : real_world_catalog()) {
        CAPTURE(m.label());
        const AxiomReport fine = check_all(m);
        const AxiomReport coarse = check_all(m, g);
        for (Axiom a : kAllAxioms) CHECK(fine.at(a).kind == coarse.at(a).kind);
    }
}
