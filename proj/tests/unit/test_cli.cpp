#include <doctest.h>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "../../tools/cli.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::initializer_list<const char*> args) {
    std::vector<const char*> argv{"cfmm"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::ostringstream out, err;
    const int code = cfmm::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) v.push_back(l);
    return v;
}

}  // namespace

TEST_CASE("quote") {
    const Run r = run({"quote", "--model", "uniswap-v2", "--format", "csv", "--amount", "100",
                       "--reserves", "100,100"});
    CHECK(r.code == cfmm::cli::kExitOk);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0].rfind("direction,input,output", 0) == 0);
    CHECK(ls[1].find(",50,") != std::string::npos);
}

TEST_CASE("json output and global flags after the subcommand") {
    const Run r = run({"quote", "--amount", "5", "--reserves", "10,10", "--model", "mstable",
                       "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_object());
    CHECK(j["output"].get<double>() == doctest::Approx(5.0));
}

TEST_CASE("quote with a fee reports bid and ask") {
    const Run r = run({"--model", "uniswap-v2", "--format", "json", "quote", "--amount", "1",
                       "--reserves", "1,1", "--fee", "0.01"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["bid"].get<double>() == doctest::Approx(0.99));
    CHECK(j["ask"].get<double>() == doctest::Approx(1.0 / 0.99));
}

TEST_CASE("inline descriptors and parameter overrides") {
    const Run r = run({"--model", R"({"kind":"balancer","params":{"w":0.5}})", "--param", "w=0.5",
                       "oracle", "--reserves", "2,3"});
    CHECK(r.code == 0);
    const Run bad = run({"--model", "balancer", "--param", "z=1", "oracle", "--reserves", "2,3"});
    CHECK(bad.code == cfmm::cli::kExitUsage);
    CHECK(bad.err.find("key: z") != std::string::npos);
}

TEST_CASE("descriptor file") {
    const std::string path = std::string(CFMM_TEST_TMPDIR) + "/curve_model.json";
    std::ofstream(path) << R"({"kind":"curve","params":{"C":3}})";
    const Run r = run({"--model", path.c_str(), "quote", "--amount", "1", "--reserves", "1,1"});
    CHECK(r.code == 0);
}

TEST_CASE("output file") {
    const std::string path = std::string(CFMM_TEST_TMPDIR) + "/quote_out.csv";
    const Run r = run({"--model", "uniswap-v2", "--format", "csv", "--out", path.c_str(), "quote", "--amount", "1",
                       "--reserves", "1,1"});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("direction", 0) == 0);
}

TEST_CASE("usage errors") {
    CHECK(run({"--model", "uniswap-v2", "quote", "--amount", "-1", "--reserves", "1,1"}).code == 2);
    CHECK(run({"--model", "nope", "quote", "--amount", "1", "--reserves", "1,1"}).code == 2);
    CHECK(run({"--model", "uniswap-v2", "quote", "--reserves", "1,1"}).code == 2);
    CHECK(run({"--model", "uniswap-v2", "quote", "--amount", "1", "--reserves", "1"}).code == 2);
    CHECK(run({"--model", "uniswap-v2", "pool", "--reserves", "1,1", "--alpha", "1", "--beta", "2"})
              .code == 2);
    CHECK(run({"--model", "uniswap-v2", "divergence", "--reserves", "1,1", "--alpha", "1", "--beta",
               "2"})
              .code == 2);
    CHECK(run({}).code == 2);
}

TEST_CASE("pool") {
    const Run r = run({"--model", "uniswap-v2", "--format", "json", "pool", "--reserves", "100,50",
                       "--alpha", "10"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["beta"].get<double>() == doctest::Approx(5.0));
    CHECK(j["liquidity_increased"].get<bool>());
}

TEST_CASE("feecurve") {
    const Run r = run({"--model", "uniswap-v2", "--format", "json", "feecurve", "--reserves",
                       "100,100", "--gammas", "0.01,1", "--xs", "100", "--compare-structures"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.size() == 2);
    CHECK(j[0]["y"].get<double>() == doctest::Approx(100.0 * (1.0 - std::pow(0.5, 0.99))));
    CHECK(j[0]["y_fee_on_sold"].get<double>() >= j[0]["y"].get<double>());
    CHECK(j[0]["y"].get<double>() >= j[0]["y_fee_on_bought"].get<double>());
    CHECK(j[1]["y"].get<double>() == 0.0);
}

TEST_CASE("divergence") {
    const Run csv = run({"--model", "uniswap-v2", "--format", "csv", "divergence", "--reserves", "1,1", "--delta", "1",
                         "--fee", "0.01", "--samples", "5"});
    REQUIRE(csv.code == 0);
    const auto ls = lines(csv.out);
    CHECK(ls[0] == "coordinate,delta,branch");
    CHECK(ls.size() == 1 + 5);  // z = 0 is already a grid point
    CHECK(csv.err.find("gain_interval p_low=") != std::string::npos);

    const Run js = run({"--model", "uniswap-v2", "--format", "json", "divergence", "--reserves",
                        "1,1", "--delta", "1", "--coordinate", "price", "--samples", "7",
                        "--no-gain-interval"});
    REQUIRE(js.code == 0);
    const auto j = nlohmann::json::parse(js.out);
    CHECK(j["samples"].size() == 7);
    CHECK(j["gain_interval"].is_null());
}

TEST_CASE("axioms") {
    const Run ok = run({"--model", "uniswap-v2", "--format", "csv", "axioms"});
    CHECK(ok.code == cfmm::cli::kExitOk);
    CHECK(ok.out.find("satisfied") != std::string::npos);
    const Run v3 = run({"--model", "uniswap-v3", "axioms"});
    CHECK(v3.code == cfmm::cli::kExitMismatch);
    CHECK_FALSE(v3.err.empty());
    CHECK(run({"--model", "uniswap-v2", "axioms", "--all-catalog"}).code == 2);
    CHECK(run({"axioms", "--grid-points", "3", "--model", "uniswap-v2"}).code == 2);
}
