#include <doctest.h>

#include <cmath>

#include "cfmm/ode.hpp"

using namespace cfmm;

TEST_CASE("exponential growth") {
    const ScalarRhs f = [](double, double y) { return std::optional<double>(y); };
    const OdeResult r = integrate_dp45(f, 0.0, 1.0, 5.0);
    CHECK(r.status == OdeStatus::Completed);
    CHECK(r.t == 5.0);
    CHECK(r.y == doctest::Approx(std::exp(5.0)).epsilon(1e-9));
    CHECK(r.stats.steps > 0);
    CHECK(r.stats.max_error_estimate <= 1.0);
}

TEST_CASE("time dependent right-hand side") {
    const ScalarRhs f = [](double t, double) { return std::optional<double>(std::cos(t)); };
    const OdeResult r = integrate_dp45(f, 0.0, 0.0, 10.0);
    CHECK(r.y == doctest::Approx(std::sin(10.0)).epsilon(1e-9));
}

TEST_CASE("checkpoints are hit exactly") {
    const ScalarRhs f = [](double, double y) { return std::optional<double>(y); };
    const std::vector<double> cps{0.0, 0.5, 1.0, 2.5};
    const OdeResult r = integrate_dp45(f, 0.0, 1.0, 3.0, {}, cps);
    REQUIRE(r.checkpoints.size() == cps.size());
    for (std::size_t i = 0; i < cps.size(); ++i) {
        CHECK(r.checkpoints[i].t == cps[i]);
        CHECK(r.checkpoints[i].y == doctest::Approx(std::exp(cps[i])).epsilon(1e-9));
    }
}

TEST_CASE("empty span returns the initial state") {
    const ScalarRhs f = [](double, double) { return std::optional<double>(1.0); };
    const OdeResult r = integrate_dp45(f, 2.0, 3.0, 2.0);
    CHECK(r.status == OdeStatus::Completed);
    CHECK(r.y == 3.0);
}

TEST_CASE("cap stops the integration below the cap") {
    const ScalarRhs f = [](double, double) { return std::optional<double>(1.0); };
    OdeOptions o;
    o.y_cap = 1.0;
    const OdeResult r = integrate_dp45(f, 0.0, 0.0, 5.0, o);
    CHECK(r.status == OdeStatus::CapReached);
    CHECK(r.y < 1.0);
    CHECK(r.y > 0.99);
}

TEST_CASE("a domain wall ends in step underflow") {
    // y' = 1 / (1 - t) blows up at t = 1; outside the domain the rhs is empty.
    const ScalarRhs f = [](double t, double) -> std::optional<double> {
        if (t >= 1.0) return std::nullopt;
        return 1.0 / (1.0 - t);
    };
    const OdeResult r = integrate_dp45(f, 0.0, 0.0, 2.0);
    CHECK(r.status == OdeStatus::StepUnderflow);
    CHECK(r.t < 1.0);
}

TEST_CASE("step budget") {
    const ScalarRhs f = [](double t, double) { return std::optional<double>(std::cos(100.0 * t)); };
    OdeOptions o;
    o.max_steps = 5;
    CHECK(integrate_dp45(f, 0.0, 0.0, 100.0, o).status == OdeStatus::TooManySteps);
}
