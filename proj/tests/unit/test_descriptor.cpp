#include <doctest.h>

#include "cfmm/descriptor.hpp"
#include "cfmm/errors.hpp"

using namespace cfmm;

namespace {

std::string key_of(std::string_view json) {
    try {
        parse_model_descriptor(json);
    } catch (const ModelError& e) {
        return e.key();
    }
    return "<none>";
}

}  // namespace

TEST_CASE("parse every kind") {
    CHECK(parse_model_descriptor(R"({"kind":"uniswap-v2"})").label() == "Uniswap V2");
    CHECK(parse_model_descriptor(R"({"kind":"balancer","params":{"w":0.4}})").label() ==
          "Balancer(w=0.4)");
    CHECK(parse_model_descriptor(R"({"kind":"curve","params":{"C":5}})").label() == "Curve(C=5)");
    CHECK(parse_model_descriptor(R"({"kind":"dodo","params":{"P":2,"C":0.1}})").kind() ==
          ModelKind::Dodo);
    CHECK(parse_model_descriptor(R"({"kind":"sdamm-sinh","params":{"q":1}})").label() ==
          "SDAMM(sinh,C=1,q=1)");
    for (const char* k : {"uniswap-v3", "mstable", "stableswap", "lstableswap", "sdamm-log"}) {
        CHECK(parse_model_descriptor(std::string(R"({"kind":")") + k + "\"}").kind_name() == k);
    }
}

TEST_CASE("errors name the offending key") {
    CHECK(key_of(R"({"kind":"nope"})") == "kind");
    CHECK(key_of(R"({"params":{}})") == "kind");
    CHECK(key_of(R"({"kind":"balancer","params":{"v":1}})") == "v");
    CHECK(key_of(R"({"kind":"balancer","params":{"w":"x"}})") == "w");
    CHECK(key_of(R"({"kind":"balancer","params":{"w":2}})") == "w");
    CHECK(key_of(R"({"kind":"balancer","params":[1]})") == "params");
    CHECK(key_of(R"({"kind":"curve","extra":1})") == "extra");
    CHECK_THROWS_AS(parse_model_descriptor("{"), ModelError);
    CHECK_THROWS_AS(parse_model_descriptor("[]"), ModelError);
}

TEST_CASE("make_model defaults and overrides") {
    CHECK(make_model("curve").label() == "Curve(C=2)");
    CHECK(make_model("uniswap-v3", {{"beta", 4.0}}).label() == "Uniswap V3(alpha=1,beta=4)");
    CHECK_THROWS_AS(make_model("mstable", {{"C", 1.0}}), ModelError);
}

TEST_CASE("descriptor round trip") {
    auto models = real_world_catalog();
    models.push_back(default_sdamm());
    models.push_back(AmmModel::sdamm(LogUtility{}));
    for (const AmmModel& m : models) {
        const AmmModel back = parse_model_descriptor(to_descriptor_json(m));
        CHECK(back.label() == m.label());
        CHECK(back.kind_name() == m.kind_name());
    }
    CHECK_THROWS_AS(to_descriptor_json(AmmModel::sdamm(CustomUtility{"c", [](double z) { return z; }})),
                    ModelError);
}
