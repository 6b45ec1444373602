#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "ringarb/market_io.hpp"

namespace {

using namespace ringarb;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitNothingFound = 3;

struct CommonOptions {
    std::string market_path;
    int max_hops = 4;
    std::string mode = "exact";
    std::string format = "json";
    std::string min_profit = "0";
    long seed = 0;
};

NumericMode parse_mode(const std::string& mode) {
    if (mode == "exact") return NumericMode::exact;
    if (mode == "float") return NumericMode::floating;
    fail(Errc::bad_input, "--mode must be 'exact' or 'float'");
}

Rat parse_amount_flag(const std::string& text, const char* flag) {
    auto q = try_parse_ratio(text);
    if (!q || *q < 0) {
        fail(Errc::bad_input, std::string(flag) + " must be a non-negative decimal");
    }
    return *q;
}

std::vector<std::string> split_ids(const std::string& joined) {
    std::vector<std::string> out;
    std::stringstream ss(joined);
    std::string id;
    while (std::getline(ss, id, ',')) {
        if (!id.empty()) out.push_back(id);
    }
    return out;
}

void emit(const std::string& format, const json& as_json, const std::string& as_csv) {
    if (format == "csv") {
        std::cout << as_csv;
    } else {
        std::cout << as_json.dump(2) << '\n';
    }
}

int cmd_scan(const CommonOptions& common, const std::string& start_token) {
    Market market = load_market_file(common.market_path);
    FindOptions options;
    options.max_hops = common.max_hops;
    options.mode = parse_mode(common.mode);
    options.min_profit = parse_amount_flag(common.min_profit, "--min-profit");
    if (!start_token.empty()) options.start_token = TokenId(start_token);
    auto ops = find_cycles(market, options);
    emit(common.format, opportunities_to_json(ops, market), opportunities_to_csv(ops, market));
    return ops.empty() ? kExitNothingFound : kExitOk;
}

int cmd_optimal(const CommonOptions& common, const std::string& cycle_ids,
                const std::string& start_token) {
    Market market = load_market_file(common.market_path);
    Cycle cycle = make_cycle(market, split_ids(cycle_ids), TokenId(start_token));
    Rat index = arbitrage_index(cycle, market);
    Rat marginal = marginal_at_zero(cycle, market);
    bool profitable = marginal > 0;
    bool reverse_profitable = is_profitable(reversed(cycle, market), market);

    std::string route;
    for (const TokenId& t : cycle_token_route(cycle, market)) {
        if (!route.empty()) route += '>';
        route += t.symbol;
    }
    json report{{"tokens", route},
                {"hops", cycle.n_hops()},
                {"index", format_decimal(index)},
                {"marginal", format_decimal(marginal)},
                {"profitable", profitable},
                {"reverse_profitable", reverse_profitable}};
    std::ostringstream csv;
    csv << "hops,index,marginal,profitable,optimal_input,expected_profit\n";
    if (profitable) {
        Sizing sizing = optimal_input(cycle, market);
        report["optimal_input"] = format_decimal(sizing.delta_star);
        report["expected_profit"] = format_decimal(sizing.expected_profit);
        report["bracket_lo"] = format_decimal(sizing.bracket_lo);
        report["bracket_hi"] = format_decimal(sizing.bracket_hi);
        csv << cycle.n_hops() << ',' << format_decimal(index) << ',' << format_decimal(marginal)
            << ",true," << format_decimal(sizing.delta_star) << ','
            << format_decimal(sizing.expected_profit) << '\n';
    } else {
        csv << cycle.n_hops() << ',' << format_decimal(index) << ',' << format_decimal(marginal)
            << ",false,,\n";
    }
    emit(common.format, report, csv.str());
    return profitable ? kExitOk : kExitNothingFound;
}

int cmd_fee_threshold(const CommonOptions& common) {
    Market market = load_market_file(common.market_path);
    auto report = market_fee_threshold(market, common.max_hops);
    emit(common.format, threshold_report_to_json(report, market),
         threshold_report_to_csv(report, market));
    return kExitOk;
}

int cmd_converge(const CommonOptions& common, const std::string& scenarios_path) {
    auto scenarios = load_scenarios_file(scenarios_path);
    std::vector<ConvergenceReport> reports;
    reports.reserve(scenarios.size());
    for (const auto& scenario : scenarios) {
        reports.push_back(compare_convergence(scenario));
    }
    emit(common.format, convergence_reports_to_json(reports),
         convergence_reports_to_csv(reports));
    return kExitOk;
}

int cmd_ingest(const CommonOptions& common, const std::string& events_path,
               const std::string& unit_token, const std::string& slack_text) {
    std::ifstream in(events_path);
    if (!in) fail(Errc::bad_input, "cannot open events file '" + events_path + "'");
    Rat slack = parse_amount_flag(slack_text, "--slack");
    auto parsed = parse_events(in);
    for (const auto& error : parsed.errors) {
        std::cerr << events_path << ":" << error.line << ": " << error.reason << '\n';
    }
    if (parsed.events.empty() && !parsed.errors.empty()) {
        std::cerr << "no valid events in '" << events_path << "'\n";
        return kExitInputError;
    }
    auto cycles = group_cyclic_transactions(parsed.events, slack);

    std::vector<TokenId> units;
    if (!unit_token.empty()) {
        units.push_back(TokenId(unit_token));
    } else {
        std::set<TokenId> start_tokens;
        for (const auto& tx : cycles) start_tokens.insert(tx.start_token);
        units.assign(start_tokens.begin(), start_tokens.end());
    }
    json summaries = json::array();
    for (const TokenId& unit : units) {
        summaries.push_back(summary_to_json(revenue_summary(cycles, unit)));
    }
    json cycles_json = json::array();
    for (const auto& tx : cycles) cycles_json.push_back(cyclic_to_json(tx));
    json errors_json = json::array();
    for (const auto& error : parsed.errors) {
        errors_json.push_back({{"line", error.line}, {"reason", error.reason}});
    }
    json report{{"events", parsed.events.size()},
                {"cyclic_transactions", std::move(cycles_json)},
                {"summaries", std::move(summaries)},
                {"parse_errors", std::move(errors_json)}};
    emit(common.format, report, cyclics_to_csv(cycles));
    return kExitOk;
}

int cmd_simulate(const CommonOptions& common, int rounds, const std::string& emit_events_path,
                 const std::string& market_out_path) {
    Market market = load_market_file(common.market_path);
    FindOptions options;
    options.max_hops = common.max_hops;
    options.mode = parse_mode(common.mode);
    options.min_profit = parse_amount_flag(common.min_profit, "--min-profit");

    std::vector<SwapEvent> all_events;
    std::map<std::string, Rat> profit_by_token;
    json executions = json::array();
    int executed = 0;
    for (int round = 0; round < rounds; ++round) {
        auto ops = find_cycles(market, options);
        if (ops.empty()) break;
        const ArbOpportunity& top = ops.front();
        auto run = execute_ring(market, top.cycle, top.optimal_input, options.min_profit);
        if (!run.committed) break;
        ++executed;
        market = run.market;
        profit_by_token[top.cycle.start_token().symbol] += run.realized_profit;
        auto events = fills_to_events(run.fills, "sim-" + std::to_string(executed), executed);
        all_events.insert(all_events.end(), events.begin(), events.end());
        executions.push_back({{"round", executed},
                              {"start_token", top.cycle.start_token().symbol},
                              {"input", format_decimal(run.fills.front().amount_in)},
                              {"profit", format_decimal(run.realized_profit)},
                              {"hops", top.cycle.n_hops()}});
    }

    if (!emit_events_path.empty()) {
        std::ofstream out(emit_events_path);
        if (!out) fail(Errc::bad_input, "cannot write '" + emit_events_path + "'");
        out << events_to_jsonl(all_events);
    }
    if (!market_out_path.empty()) {
        save_market_file(market, market_out_path);
    }

    json totals = json::object();
    std::ostringstream csv;
    csv << "round,start_token,input,profit,hops\n";
    for (const auto& entry : executions) {
        csv << entry["round"] << ',' << entry["start_token"].get<std::string>() << ','
            << entry["input"].get<std::string>() << ',' << entry["profit"].get<std::string>()
            << ',' << entry["hops"] << '\n';
    }
    for (const auto& [token, profit] : profit_by_token) {
        totals[token] = format_decimal(profit);
    }
    json report{{"executed", executed},
                {"executions", std::move(executions)},
                {"profit_totals", std::move(totals)}};
    emit(common.format, report, csv.str());
    return executed > 0 ? kExitOk : kExitNothingFound;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constant-product AMM simulation and ring-arbitrage analytics"};
    app.require_subcommand(1);

    CommonOptions common;
    std::string start_token, cycle_ids, events_path, scenarios_path, unit_token;
    std::string slack = "0", emit_events_path, market_out_path;
    int rounds = 64;

    auto add_market = [&](CLI::App* cmd) {
        cmd->add_option("--market", common.market_path, "market definition JSON file")
            ->required();
    };
    auto add_common = [&](CLI::App* cmd, bool with_hops = true) {
        if (with_hops) {
            cmd->add_option("--max-hops", common.max_hops, "cycle length bound (>= 2)")
                ->check(CLI::Range(2, 16))
                ->capture_default_str();
        }
        cmd->add_option("--mode", common.mode, "numeric mode: exact | float")
            ->check(CLI::IsMember({"exact", "float"}))
            ->capture_default_str();
        cmd->add_option("--format", common.format, "report format: json | csv")
            ->check(CLI::IsMember({"json", "csv"}))
            ->capture_default_str();
        cmd->add_option("--seed", common.seed,
                        "reproducibility bookkeeping; current commands are deterministic");
    };

    CLI::App* scan = app.add_subcommand("scan", "find and size profitable ring cycles");
    add_market(scan);
    add_common(scan);
    scan->add_option("--start", start_token, "anchor cycles at this token");
    scan->add_option("--min-profit", common.min_profit, "keep opportunities above this profit")
        ->capture_default_str();

    CLI::App* optimal = app.add_subcommand("optimal", "price one cycle and size its input");
    add_market(optimal);
    add_common(optimal, /*with_hops=*/false);
    optimal->add_option("--cycle", cycle_ids, "comma-separated pool ids around the ring")
        ->required();
    optimal->add_option("--start", start_token, "token the ring starts and ends in")->required();

    CLI::App* threshold =
        app.add_subcommand("fee-threshold", "per-cycle and market-wide protective fee rates");
    add_market(threshold);
    add_common(threshold);

    CLI::App* converge =
        app.add_subcommand("converge", "compare direct vs ring-then-corrective convergence");
    add_common(converge, /*with_hops=*/false);
    converge->add_option("--scenarios", scenarios_path, "scenario batch JSON file")->required();

    CLI::App* ingest = app.add_subcommand("ingest", "reconstruct ring trades from swap events");
    add_common(ingest, /*with_hops=*/false);
    ingest->add_option("--events", events_path, "swap events JSONL file")->required();
    ingest->add_option("--unit", unit_token, "summarize rings starting in this token");
    ingest->add_option("--slack", slack, "relative amount-chaining tolerance")
        ->capture_default_str();

    CLI::App* simulate =
        app.add_subcommand("simulate", "greedily execute profitable rings until none remain");
    add_market(simulate);
    add_common(simulate);
    simulate->add_option("--min-profit", common.min_profit, "commit threshold per ring")
        ->capture_default_str();
    simulate->add_option("--rounds", rounds, "safety cap on executed rings")
        ->check(CLI::Range(1, 100000))
        ->capture_default_str();
    simulate->add_option("--emit-events", emit_events_path, "write executed legs as JSONL here");
    simulate->add_option("--market-out", market_out_path, "write the final market state here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (scan->parsed()) return cmd_scan(common, start_token);
        if (optimal->parsed()) return cmd_optimal(common, cycle_ids, start_token);
        if (threshold->parsed()) return cmd_fee_threshold(common);
        if (converge->parsed()) return cmd_converge(common, scenarios_path);
        if (ingest->parsed()) return cmd_ingest(common, events_path, unit_token, slack);
        if (simulate->parsed()) {
            return cmd_simulate(common, rounds, emit_events_path, market_out_path);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}
