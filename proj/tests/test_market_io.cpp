#include <doctest.h>

#include <json.hpp>

#include "helpers.hpp"
#include "ringarb/market_io.hpp"

using namespace ringarb;
using namespace ringarb::testing;
using nlohmann::json;

namespace {

json pool_doc() {
    return json{{"id", "XY"},      {"token0", "X"},       {"token1", "Y"},
                {"reserve0", "100"}, {"reserve1", "200.5"}, {"fee_in_ppm", 997000},
                {"fee_out_ppm", 1000000}, {"lp_supply", "0"}};
}

json market_doc(std::initializer_list<json> pools) {
    json arr = json::array();
    for (const json& pool : pools) arr.push_back(pool);
    return json{{"pools", std::move(arr)}};
}

}  // namespace

TEST_CASE("market documents round-trip") {
    Market m = market_from_json(market_doc({pool_doc()}));
    REQUIRE(m.size() == 1);
    const Pool& p = m.pool_at("XY");
    CHECK(p.reserve0 == 100);
    CHECK(p.reserve1 == Rat(401, 2));
    CHECK(p.fees.r1 == Rat(997, 1000));
    CHECK(p.fees.r2 == 1);

    Market again = market_from_json(market_to_json(m));
    CHECK(again == m);
}

TEST_CASE("loader defaults and validation") {
    json minimal{{"id", "AB"}, {"token0", "A"}, {"token1", "B"},
                 {"reserve0", "1"}, {"reserve1", "2"}};
    Market m = market_from_json(market_doc({minimal}));
    CHECK(m.pool_at("AB").fees.r1 == Rat(997, 1000));
    CHECK(m.pool_at("AB").fees.r2 == 1);
    CHECK(m.pool_at("AB").lp_supply == 0);

    auto rejects = [](json doc) {
        CHECK_THROWS_AS(market_from_json(doc), Error);
    };
    rejects(json::array());                       // not an object
    rejects(json{{"pools", 7}});                  // pools not an array
    json no_reserve = minimal;
    no_reserve.erase("reserve1");
    rejects(market_doc({no_reserve}));
    json negative = minimal;
    negative["reserve0"] = "-1";
    rejects(market_doc({negative}));
    json numeric_amount = minimal;
    numeric_amount["reserve0"] = 100;  // must be a string
    rejects(market_doc({numeric_amount}));
    json bad_ppm = minimal;
    bad_ppm["fee_in_ppm"] = 0;
    rejects(market_doc({bad_ppm}));
    json huge_ppm = minimal;
    huge_ppm["fee_in_ppm"] = 1000001;
    rejects(market_doc({huge_ppm}));
    json string_ppm = minimal;
    string_ppm["fee_in_ppm"] = "0.997";
    rejects(market_doc({string_ppm}));
    json same_tokens = minimal;
    same_tokens["token1"] = "A";
    rejects(market_doc({same_tokens}));
    json too_precise = minimal;
    too_precise["reserve0"] = "1.0000000000000000000000000000000000001";  // 37 digits
    rejects(market_doc({too_precise}));
    rejects(market_doc({minimal, minimal}));  // duplicate id
}

TEST_CASE("parallel pools on one pair load from files") {
    json second = pool_doc();
    second["id"] = "XY-2";
    Market m = market_from_json(market_doc({pool_doc(), second}));
    CHECK(m.size() == 2);
    CHECK(m.pools_with_token(tok("X")) == std::vector<std::string>{"XY", "XY-2"});
}

TEST_CASE("opportunity reports carry the documented fields") {
    Market m = i65_market();
    auto ops = find_cycles(m, {.max_hops = 3});
    REQUIRE(ops.size() == 1);
    json doc = opportunities_to_json(ops, m);
    CHECK(doc["count"] == 1);
    const json& op = doc["opportunities"][0];
    for (const char* key :
         {"cycle", "tokens", "direction", "hops", "index", "marginal", "optimal_input",
          "expected_profit"}) {
        CHECK(op.contains(key));
    }
    CHECK(op["cycle"][0]["pool_id"] == "XY");
    CHECK(op["cycle"][0]["input_token"] == "X");
    CHECK(op["tokens"] == "X>Y>Z>X");

    std::string csv = opportunities_to_csv(ops, m);
    CHECK(csv.find("cycle,tokens,direction,hops,index,marginal,optimal_input,expected_profit") ==
          0);
    CHECK(csv.find("XY>YZ>ZX") != std::string::npos);
}

TEST_CASE("threshold report serialization") {
    Market m = i65_market();
    auto report = market_fee_threshold(m, 3);
    json doc = threshold_report_to_json(report, m);
    CHECK(doc["market_threshold"].get<std::string>().substr(0, 7) == "0.94103");
    CHECK(doc["cycles"][0]["hops"] == 3);
    CHECK(doc["cycles"][0]["index"] == "1.2");
    std::string csv = threshold_report_to_csv(report, m);
    CHECK(csv.find("market_threshold") != std::string::npos);
}

TEST_CASE("scenario documents validate their parts") {
    json good = json::array({json{
        {"pool", json{{"token0", "A"}, {"token1", "B"}, {"reserve0", "10"}, {"reserve1", "10"}}},
        {"ring_swap", json{{"input_token", "A"}, {"amount", "1"}}},
        {"target_ratio", "3/2"}}});
    auto scenarios = scenarios_from_json(good);
    REQUIRE(scenarios.size() == 1);
    CHECK(scenarios[0].target_ratio == Rat(3, 2));
    CHECK(scenarios[0].pool.id == "scenario-pool");
    REQUIRE(scenarios[0].ring_swap.has_value());

    json bad_ratio = good;
    bad_ratio[0]["target_ratio"] = "0";
    CHECK_THROWS_AS(scenarios_from_json(bad_ratio), Error);

    json alien_token = good;
    alien_token[0]["ring_swap"]["input_token"] = "Q";
    CHECK_THROWS_AS(scenarios_from_json(alien_token), Error);

    json no_pool = good;
    no_pool[0].erase("pool");
    CHECK_THROWS_AS(scenarios_from_json(no_pool), Error);
}

TEST_CASE("emitted jsonl lines are valid events with bounded precision") {
    std::vector<SwapEvent> events = {
        {"t", 1, 0, tok("A"), tok("B"), Rat(1, 3), Rat(997000, 10997)}};
    std::string line = events_to_jsonl(events);
    json parsed = json::parse(line);
    std::string amount = parsed["amount_in"].get<std::string>();
    // 36 fractional digits at most, parseable back
    auto dot = amount.find('.');
    REQUIRE(dot != std::string::npos);
    CHECK(amount.size() - dot - 1 <= 36);
    CHECK(try_parse_decimal(amount).has_value());
}
