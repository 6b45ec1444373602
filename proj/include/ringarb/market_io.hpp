#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "ringarb/cycle.hpp"
#include "ringarb/fee_policy.hpp"
#include "ringarb/market_analysis.hpp"
#include "ringarb/trace.hpp"

namespace ringarb {

// Market definition document:
//   { "pools": [ { "id", "token0", "token1", "reserve0", "reserve1",
//                  "fee_in_ppm", "fee_out_ppm", "lp_supply" } ] }
// Amounts are decimal strings (36 fractional digits at most), fees are
// integer parts-per-million of retained input/output (997000 <=> r1=0.997).
// fee ppm defaults: 997000 in, 1000000 out; lp_supply defaults to "0".
Market market_from_json(const nlohmann::json& doc);
nlohmann::json market_to_json(const Market& market);

Market load_market_file(const std::string& path);
void save_market_file(const Market& market, const std::string& path);

std::vector<TokenId> cycle_token_route(const Cycle& cycle, const Market& market);

nlohmann::json opportunity_to_json(const ArbOpportunity& op, const Market& market);
nlohmann::json opportunities_to_json(const std::vector<ArbOpportunity>& ops,
                                     const Market& market);
std::string opportunities_to_csv(const std::vector<ArbOpportunity>& ops, const Market& market);

nlohmann::json threshold_report_to_json(const FeeThresholdReport& report, const Market& market);
std::string threshold_report_to_csv(const FeeThresholdReport& report, const Market& market);

// Scenario batch: JSON array of
//   { "pool": {...}, "ring_swap": {"input_token", "amount"}?, "target_ratio" }
// target_ratio accepts a decimal or a "num/den" fraction.
std::vector<ConvergenceScenario> scenarios_from_json(const nlohmann::json& doc);
std::vector<ConvergenceScenario> load_scenarios_file(const std::string& path);

nlohmann::json convergence_reports_to_json(const std::vector<ConvergenceReport>& reports);
std::string convergence_reports_to_csv(const std::vector<ConvergenceReport>& reports);

nlohmann::json cyclic_to_json(const CyclicTransaction& tx);
nlohmann::json summary_to_json(const RevenueSummary& summary);
std::string cyclics_to_csv(const std::vector<CyclicTransaction>& cyclics);

// One swap event per line, amounts rounded to at most 36 fractional digits.
// Chained legs share the identical amount string, so a reingested file
// chains exactly even though the decimals are rounded.
std::string events_to_jsonl(const std::vector<SwapEvent>& events);

}  // namespace ringarb
