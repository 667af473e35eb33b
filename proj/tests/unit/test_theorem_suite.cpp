#include <doctest.h>

#include <cmath>

#include "cfmm/theorem_suite.hpp"

using namespace cfmm;

namespace {

std::string failures(const PropertyReport& r) {
    std::string out;
    for (const auto& c : r.checks) {
        if (c.status == CheckStatus::Failed) out += c.name + ": " + c.detail + "\n";
    }
    return out;
}

}  // namespace

TEST_CASE("constant product passes every property") {
    const PropertyReport r = check_theorem_suite(AmmModel::uniswap_v2());
    CAPTURE(failures(r));
    CHECK(r.all_passed());
    for (const auto& c : r.checks) CHECK(c.status == CheckStatus::Passed);
    CHECK(r.find("split execution equals bulk execution") != nullptr);
    CHECK(r.find("no such check") == nullptr);
}

TEST_CASE("every catalog model passes the properties its axioms support") {
    auto models = real_world_catalog();
    models.push_back(default_sdamm());
    models.push_back(AmmModel::sdamm_sinh(1.0, 1.0));
    for (const AmmModel& m : models) {
        CAPTURE(m.label());
        const PropertyReport r = check_theorem_suite(m);
        CAPTURE(failures(r));
        CHECK(r.all_passed());
    }
}

TEST_CASE("linear invariant skips exact round trips") {
    const PropertyReport r = check_theorem_suite(AmmModel::mstable());
    const PropertyCheck* exact = r.find("round trip returns exactly the input");
    REQUIRE(exact);
    CHECK(exact->status == CheckStatus::Skipped);
    CHECK(exact->detail.find("requires") != std::string::npos);
    const PropertyCheck* loose = r.find("round trip returns at most the input");
    REQUIRE(loose);
    CHECK(loose->status == CheckStatus::Passed);
}

TEST_CASE("flat utility fails monotonicity with a witness") {
    const AmmModel flat = AmmModel::sdamm(CustomUtility{"flat", [](double) { return 0.0; }});
    const PropertyReport r = check_theorem_suite(flat);
    CHECK_FALSE(r.all_passed());
    const PropertyCheck* sm = r.find("utility strictly monotone");
    REQUIRE(sm);
    CHECK(sm->status == CheckStatus::Failed);
    CHECK(sm->witness);
}

TEST_CASE("a precomputed axiom report is reused") {
    const AmmModel m = AmmModel::balancer(0.3);
    const AxiomReport ax = check_all(m);
    const PropertyReport a = check_theorem_suite(m, {}, {}, &ax);
    const PropertyReport b = check_theorem_suite(m);
    REQUIRE(a.checks.size() == b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i) CHECK(a.checks[i].status == b.checks[i].status);
}
