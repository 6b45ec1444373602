#include "ringarb/trace.hpp"

#include <json.hpp>

#include <algorithm>
#include <istream>
#include <set>
#include <tuple>

namespace ringarb {

namespace {

using nlohmann::json;

std::optional<std::string> read_string(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string()) return std::nullopt;
    return it->get<std::string>();
}

std::optional<std::int64_t> read_integer(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_number_integer()) return std::nullopt;
    return it->get<std::int64_t>();
}

// One event per line; returns the reason a line is unusable, if any.
std::optional<std::string> event_from_json(const json& j, SwapEvent& out) {
    if (!j.is_object()) return "not a JSON object";
    auto tx_id = read_string(j, "tx_id");
    if (!tx_id || tx_id->empty()) return "missing or empty tx_id";
    auto block = read_integer(j, "block");
    if (!block || *block < 0) return "missing or negative block";
    auto log_index = read_integer(j, "log_index");
    if (!log_index || *log_index < 0) return "missing or negative log_index";
    auto token_in = read_string(j, "token_in");
    auto token_out = read_string(j, "token_out");
    if (!token_in || token_in->empty()) return "missing or empty token_in";
    if (!token_out || token_out->empty()) return "missing or empty token_out";
    if (*token_in == *token_out) return "token_in equals token_out";
    auto amount_in_text = read_string(j, "amount_in");
    auto amount_out_text = read_string(j, "amount_out");
    if (!amount_in_text) return "amount_in must be a decimal string";
    if (!amount_out_text) return "amount_out must be a decimal string";
    auto amount_in = try_parse_decimal(*amount_in_text);
    auto amount_out = try_parse_decimal(*amount_out_text);
    if (!amount_in) return "amount_in is not a decimal";
    if (!amount_out) return "amount_out is not a decimal";
    if (*amount_in <= 0) return "amount_in must be positive";
    if (*amount_out <= 0) return "amount_out must be positive";

    out.tx_id = std::move(*tx_id);
    out.block = *block;
    out.log_index = *log_index;
    out.token_in = TokenId(std::move(*token_in));
    out.token_out = TokenId(std::move(*token_out));
    out.amount_in = std::move(*amount_in);
    out.amount_out = std::move(*amount_out);
    return std::nullopt;
}

bool only_whitespace(const std::string& s) {
    return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

ParsedEvents parse_events(std::istream& in) {
    ParsedEvents parsed;
    std::set<std::pair<std::string, std::int64_t>> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (only_whitespace(line)) continue;
        json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (j.is_discarded()) {
            parsed.errors.push_back({line_no, "invalid JSON"});
            continue;
        }
        SwapEvent event;
        if (auto reason = event_from_json(j, event)) {
            parsed.errors.push_back({line_no, std::move(*reason)});
            continue;
        }
        if (!seen.insert({event.tx_id, event.log_index}).second) {
            parsed.errors.push_back({line_no, "duplicate (tx_id, log_index)"});
            continue;
        }
        parsed.events.push_back(std::move(event));
    }
    std::stable_sort(parsed.events.begin(), parsed.events.end(),
                     [](const SwapEvent& a, const SwapEvent& b) {
                         return std::tie(a.block, a.tx_id, a.log_index) <
                                std::tie(b.block, b.tx_id, b.log_index);
                     });
    return parsed;
}

namespace {

bool amounts_chain(const Rat& upstream_out, const Rat& downstream_in, const Rat& slack) {
    if (slack == 0) return upstream_out == downstream_in;
    Rat diff = upstream_out - downstream_in;
    if (diff < 0) diff = -diff;
    return diff <= slack * std::max(upstream_out, downstream_in);
}

CyclicTransaction build_cycle(const std::vector<SwapEvent>& legs) {
    CyclicTransaction tx;
    tx.tx_id = legs.front().tx_id;
    tx.legs = legs;
    tx.start_token = legs.front().token_in;
    tx.input = legs.front().amount_in;
    tx.output = legs.back().amount_out;
    tx.revenue = tx.output - tx.input;
    return tx;
}

// Within one chained run, cut closed segments greedily: from each start
// position take the longest suffix position whose output token returns to
// the start token.
void extract_closed_segments(const std::vector<SwapEvent>& run,
                             std::vector<CyclicTransaction>& out) {
    std::size_t p = 0;
    while (p + 1 < run.size()) {
        std::size_t close = run.size();  // sentinel
        for (std::size_t j = run.size(); j-- > p + 1;) {
            if (run[j].token_out == run[p].token_in) {
                close = j;
                break;
            }
        }
        if (close == run.size()) {
            ++p;
            continue;
        }
        out.push_back(build_cycle({run.begin() + static_cast<std::ptrdiff_t>(p),
                                   run.begin() + static_cast<std::ptrdiff_t>(close) + 1}));
        p = close + 1;
    }
}

}  // namespace

std::vector<CyclicTransaction> group_cyclic_transactions(const std::vector<SwapEvent>& events,
                                                         const Rat& slack) {
    // (block, tx_id) order of first appearance; legs per tx in log order
    std::vector<std::pair<std::pair<std::int64_t, std::string>, std::vector<SwapEvent>>> groups;
    for (const SwapEvent& event : events) {
        auto key = std::make_pair(event.block, event.tx_id);
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const auto& g) { return g.first == key; });
        if (it == groups.end()) {
            groups.push_back({key, {event}});
        } else {
            it->second.push_back(event);
        }
    }
    std::stable_sort(groups.begin(), groups.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<CyclicTransaction> cycles;
    for (auto& [key, legs] : groups) {
        std::stable_sort(legs.begin(), legs.end(), [](const SwapEvent& a, const SwapEvent& b) {
            return a.log_index < b.log_index;
        });
        // split into maximal chained runs
        std::vector<SwapEvent> run;
        auto flush = [&] {
            if (run.size() >= 2) extract_closed_segments(run, cycles);
            run.clear();
        };
        for (const SwapEvent& leg : legs) {
            if (!run.empty()) {
                const SwapEvent& prev = run.back();
                bool chains = prev.token_out == leg.token_in &&
                              amounts_chain(prev.amount_out, leg.amount_in, slack);
                if (!chains) flush();
            }
            run.push_back(leg);
        }
        flush();
    }
    return cycles;
}

RevenueSummary revenue_summary(const std::vector<CyclicTransaction>& cyclics,
                               const TokenId& unit) {
    RevenueSummary summary;
    summary.unit = unit;
    for (const CyclicTransaction& tx : cyclics) {
        if (tx.start_token != unit) continue;
        ++summary.count;
        summary.total += tx.revenue;
        ++summary.length_histogram[tx.legs.size()];
    }
    if (summary.count > 0) {
        summary.mean = summary.total / static_cast<long>(summary.count);
    }
    return summary;
}

std::vector<SwapEvent> fills_to_events(const std::vector<LegFill>& fills, const std::string& tx_id,
                                       std::int64_t block, std::int64_t first_log_index) {
    std::vector<SwapEvent> events;
    events.reserve(fills.size());
    std::int64_t log_index = first_log_index;
    for (const LegFill& fill : fills) {
        events.push_back({tx_id, block, log_index++, fill.token_in, fill.token_out,
                          fill.amount_in, fill.amount_out});
    }
    return events;
}

}  // namespace ringarb
