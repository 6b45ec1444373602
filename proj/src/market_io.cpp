#include "ringarb/market_io.hpp"

#include <fstream>
#include <sstream>

namespace ringarb {

using nlohmann::json;

namespace {

[[noreturn]] void bad_market(const std::string& what) { fail(Errc::bad_input, what); }

Rat amount_field(const json& j, const char* key, const std::string& context,
                 const char* fallback = nullptr) {
    auto it = j.find(key);
    if (it == j.end()) {
        if (fallback) return parse_decimal(fallback);
        bad_market(context + ": missing '" + key + "'");
    }
    if (!it->is_string()) bad_market(context + ": '" + key + "' must be a decimal string");
    auto q = try_parse_decimal(it->get<std::string>());
    if (!q) bad_market(context + ": '" + key + "' is not a decimal");
    if (*q < 0) bad_market(context + ": '" + key + "' must be non-negative");
    return *q;
}

long ppm_field(const json& j, const char* key, long fallback, const std::string& context) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_number_integer()) bad_market(context + ": '" + key + "' must be an integer");
    long ppm = it->get<long>();
    if (ppm <= 0 || ppm > 1000000) {
        bad_market(context + ": '" + key + "' must lie in (0, 1000000]");
    }
    return ppm;
}

std::string string_field(const json& j, const char* key, const std::string& context) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string() || it->get<std::string>().empty()) {
        bad_market(context + ": missing or empty '" + key + "'");
    }
    return it->get<std::string>();
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string amount18(const Rat& q) { return format_decimal(q, 18); }

// Display rendering for quadratic irrationals; comparisons stay exact.
std::string surd_display(const Surd& s) { return format_decimal(rat_from_double(s.value()), 15); }

std::string join_pools(const Cycle& cycle) {
    std::string out;
    for (const SwapLeg& leg : cycle.path.legs) {
        if (!out.empty()) out += '>';
        out += leg.pool_id;
    }
    return out;
}

std::string join_route(const std::vector<TokenId>& route) {
    std::string out;
    for (const TokenId& t : route) {
        if (!out.empty()) out += '>';
        out += t.symbol;
    }
    return out;
}

}  // namespace

Market market_from_json(const json& doc) {
    if (!doc.is_object()) bad_market("market document must be a JSON object");
    auto pools = doc.find("pools");
    if (pools == doc.end() || !pools->is_array()) {
        bad_market("market document needs a 'pools' array");
    }
    Market market;
    for (const json& p : *pools) {
        if (!p.is_object()) bad_market("pool entries must be objects");
        std::string id = string_field(p, "id", "pool");
        const std::string context = "pool '" + id + "'";
        Pool pool;
        pool.id = id;
        pool.token0 = TokenId(string_field(p, "token0", context));
        pool.token1 = TokenId(string_field(p, "token1", context));
        pool.reserve0 = amount_field(p, "reserve0", context);
        pool.reserve1 = amount_field(p, "reserve1", context);
        pool.fees = FeeParams::from_ppm(ppm_field(p, "fee_in_ppm", 997000, context),
                                        ppm_field(p, "fee_out_ppm", 1000000, context));
        pool.lp_supply = amount_field(p, "lp_supply", context, "0");
        // Parallel pools for one pair are allowed in market files: the same
        // pair listed on several venues is exactly the two-pool cycle case.
        market.insert_pool(std::move(pool), /*allow_parallel_pair=*/true);
    }
    return market;
}

json market_to_json(const Market& market) {
    json pools = json::array();
    for (const Pool& pool : market.pools()) {
        pools.push_back({{"id", pool.id},
                         {"token0", pool.token0.symbol},
                         {"token1", pool.token1.symbol},
                         {"reserve0", format_decimal_fixed(pool.reserve0)},
                         {"reserve1", format_decimal_fixed(pool.reserve1)},
                         {"fee_in_ppm", pool.fees.r1_ppm()},
                         {"fee_out_ppm", pool.fees.r2_ppm()},
                         {"lp_supply", format_decimal_fixed(pool.lp_supply)}});
    }
    return json{{"pools", std::move(pools)}};
}

Market load_market_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::bad_input, "cannot open market file '" + path + "'");
    json doc = json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) fail(Errc::bad_input, "market file '" + path + "' is not valid JSON");
    return market_from_json(doc);
}

void save_market_file(const Market& market, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(Errc::bad_input, "cannot write market file '" + path + "'");
    out << market_to_json(market).dump(2) << '\n';
}

std::vector<TokenId> cycle_token_route(const Cycle& cycle, const Market& market) {
    std::vector<TokenId> route;
    route.reserve(cycle.n_hops() + 1);
    for (const SwapLeg& leg : cycle.path.legs) {
        route.push_back(leg.input_token);
    }
    route.push_back(market.pool_at(cycle.path.legs.back().pool_id)
                        .other_token(cycle.path.legs.back().input_token));
    return route;
}

json opportunity_to_json(const ArbOpportunity& op, const Market& market) {
    json legs = json::array();
    for (const SwapLeg& leg : op.cycle.path.legs) {
        legs.push_back({{"pool_id", leg.pool_id}, {"input_token", leg.input_token.symbol}});
    }
    return json{{"cycle", std::move(legs)},
                {"tokens", join_route(cycle_token_route(op.cycle, market))},
                {"direction", op.direction},
                {"hops", op.cycle.n_hops()},
                {"index", amount18(op.index)},
                {"marginal", amount18(op.marginal)},
                {"optimal_input", amount18(op.optimal_input)},
                {"expected_profit", amount18(op.expected_profit)}};
}

json opportunities_to_json(const std::vector<ArbOpportunity>& ops, const Market& market) {
    json arr = json::array();
    for (const ArbOpportunity& op : ops) arr.push_back(opportunity_to_json(op, market));
    return json{{"count", ops.size()}, {"opportunities", std::move(arr)}};
}

std::string opportunities_to_csv(const std::vector<ArbOpportunity>& ops, const Market& market) {
    std::ostringstream out;
    out << "cycle,tokens,direction,hops,index,marginal,optimal_input,expected_profit\n";
    for (const ArbOpportunity& op : ops) {
        out << csv_escape(join_pools(op.cycle)) << ','
            << csv_escape(join_route(cycle_token_route(op.cycle, market))) << ','
            << op.direction << ',' << op.cycle.n_hops() << ',' << amount18(op.index) << ','
            << amount18(op.marginal) << ',' << amount18(op.optimal_input) << ','
            << amount18(op.expected_profit) << '\n';
    }
    return out.str();
}

json threshold_report_to_json(const FeeThresholdReport& report, const Market& market) {
    json arr = json::array();
    for (const CycleThreshold& entry : report.per_cycle) {
        json legs = json::array();
        for (const SwapLeg& leg : entry.cycle.path.legs) {
            legs.push_back({{"pool_id", leg.pool_id}, {"input_token", leg.input_token.symbol}});
        }
        arr.push_back({{"cycle", std::move(legs)},
                       {"tokens", join_route(cycle_token_route(entry.cycle, market))},
                       {"direction", entry.direction},
                       {"hops", entry.hops},
                       {"index", amount18(entry.index)},
                       {"threshold", amount18(entry.threshold)}});
    }
    return json{{"market_threshold", amount18(report.market_threshold)},
                {"cycles", std::move(arr)}};
}

std::string threshold_report_to_csv(const FeeThresholdReport& report, const Market& market) {
    std::ostringstream out;
    out << "cycle,tokens,index,hops,threshold\n";
    for (const CycleThreshold& entry : report.per_cycle) {
        out << csv_escape(join_pools(entry.cycle)) << ','
            << csv_escape(join_route(cycle_token_route(entry.cycle, market))) << ','
            << amount18(entry.index) << ',' << entry.hops << ',' << amount18(entry.threshold)
            << '\n';
    }
    out << "market_threshold,,,," << amount18(report.market_threshold) << '\n';
    return out.str();
}

std::vector<ConvergenceScenario> scenarios_from_json(const json& doc) {
    if (!doc.is_array()) fail(Errc::bad_input, "scenario document must be a JSON array");
    std::vector<ConvergenceScenario> scenarios;
    std::size_t i = 0;
    for (const json& entry : doc) {
        const std::string context = "scenario " + std::to_string(i++);
        if (!entry.is_object()) fail(Errc::bad_input, context + ": must be an object");
        auto pool_it = entry.find("pool");
        if (pool_it == entry.end() || !pool_it->is_object()) {
            fail(Errc::bad_input, context + ": missing 'pool' object");
        }
        ConvergenceScenario scenario;
        {
            json wrapper{{"pools", json::array({*pool_it})}};
            if (!pool_it->contains("id")) {
                (*wrapper["pools"].begin())["id"] = "scenario-pool";
            }
            Market m = market_from_json(wrapper);
            scenario.pool = m.pools().front();
        }
        auto ratio_it = entry.find("target_ratio");
        if (ratio_it == entry.end() || !ratio_it->is_string()) {
            fail(Errc::bad_input, context + ": 'target_ratio' must be a string");
        }
        auto ratio = try_parse_ratio(ratio_it->get<std::string>());
        if (!ratio || *ratio <= 0) {
            fail(Errc::invalid_ratio, context + ": 'target_ratio' must be a positive ratio");
        }
        scenario.target_ratio = *ratio;
        if (auto ring_it = entry.find("ring_swap"); ring_it != entry.end() && !ring_it->is_null()) {
            if (!ring_it->is_object()) fail(Errc::bad_input, context + ": 'ring_swap' must be an object");
            std::string token = string_field(*ring_it, "input_token", context);
            Rat amount = amount_field(*ring_it, "amount", context);
            if (amount <= 0) fail(Errc::bad_input, context + ": ring amount must be positive");
            if (!scenario.pool.has_token(TokenId(token))) {
                fail(Errc::unknown_token, context + ": ring token not in the pool");
            }
            scenario.ring_swap = {TokenId(std::move(token)), std::move(amount)};
        }
        scenarios.push_back(std::move(scenario));
    }
    return scenarios;
}

std::vector<ConvergenceScenario> load_scenarios_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::bad_input, "cannot open scenario file '" + path + "'");
    json doc = json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) fail(Errc::bad_input, "scenario file '" + path + "' is not valid JSON");
    return scenarios_from_json(doc);
}

json convergence_reports_to_json(const std::vector<ConvergenceReport>& reports) {
    json arr = json::array();
    std::size_t i = 0;
    for (const ConvergenceReport& r : reports) {
        arr.push_back({{"scenario", i++},
                       {"class", scenario_class_name(r.scenario_class)},
                       {"product_direct", surd_display(r.product_direct)},
                       {"product_with_ring", surd_display(r.product_with_ring)},
                       {"fees_direct", surd_display(r.fees_direct)},
                       {"fees_with_ring", surd_display(r.fees_with_ring)},
                       {"ring_dominates", r.ring_dominates}});
    }
    return json{{"count", reports.size()}, {"scenarios", std::move(arr)}};
}

std::string convergence_reports_to_csv(const std::vector<ConvergenceReport>& reports) {
    std::ostringstream out;
    out << "scenario,class,product_direct,product_with_ring,fees_direct,fees_with_ring,"
           "ring_dominates\n";
    std::size_t i = 0;
    for (const ConvergenceReport& r : reports) {
        out << i++ << ',' << scenario_class_name(r.scenario_class) << ','
            << surd_display(r.product_direct) << ',' << surd_display(r.product_with_ring) << ','
            << surd_display(r.fees_direct) << ',' << surd_display(r.fees_with_ring) << ','
            << (r.ring_dominates ? "true" : "false") << '\n';
    }
    return out.str();
}

json cyclic_to_json(const CyclicTransaction& tx) {
    json legs = json::array();
    for (const SwapEvent& leg : tx.legs) {
        legs.push_back({{"log_index", leg.log_index},
                        {"token_in", leg.token_in.symbol},
                        {"token_out", leg.token_out.symbol},
                        {"amount_in", amount18(leg.amount_in)},
                        {"amount_out", amount18(leg.amount_out)}});
    }
    return json{{"tx_id", tx.tx_id},
                {"start_token", tx.start_token.symbol},
                {"legs", std::move(legs)},
                {"length", tx.legs.size()},
                {"input", amount18(tx.input)},
                {"output", amount18(tx.output)},
                {"revenue", amount18(tx.revenue)}};
}

json summary_to_json(const RevenueSummary& summary) {
    json hist = json::object();
    for (const auto& [length, count] : summary.length_histogram) {
        hist[std::to_string(length)] = count;
    }
    return json{{"unit", summary.unit.symbol},
                {"count", summary.count},
                {"total_revenue", amount18(summary.total)},
                {"mean_revenue", amount18(summary.mean)},
                {"length_histogram", std::move(hist)}};
}

std::string cyclics_to_csv(const std::vector<CyclicTransaction>& cyclics) {
    std::ostringstream out;
    out << "tx_id,start_token,length,input,output,revenue\n";
    for (const CyclicTransaction& tx : cyclics) {
        out << csv_escape(tx.tx_id) << ',' << csv_escape(tx.start_token.symbol) << ','
            << tx.legs.size() << ',' << amount18(tx.input) << ',' << amount18(tx.output) << ','
            << amount18(tx.revenue) << '\n';
    }
    return out.str();
}

std::string events_to_jsonl(const std::vector<SwapEvent>& events) {
    std::ostringstream out;
    for (const SwapEvent& event : events) {
        json line{{"tx_id", event.tx_id},
                  {"block", event.block},
                  {"log_index", event.log_index},
                  {"token_in", event.token_in.symbol},
                  {"token_out", event.token_out.symbol},
                  {"amount_in", format_decimal_fixed(event.amount_in)},
                  {"amount_out", format_decimal_fixed(event.amount_out)}};
        out << line.dump() << '\n';
    }
    return out.str();
}

}  // namespace ringarb
