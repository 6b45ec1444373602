#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ringarb/cycle.hpp"

namespace ringarb {

struct SwapEvent {
    std::string tx_id;
    std::int64_t block = 0;
    std::int64_t log_index = 0;
    TokenId token_in;
    TokenId token_out;
    Rat amount_in;
    Rat amount_out;

    friend bool operator==(const SwapEvent&, const SwapEvent&) = default;
};

struct TraceParseError {
    std::size_t line;  // 1-based
    std::string reason;
};

struct ParsedEvents {
    std::vector<SwapEvent> events;  // sorted by (block, tx_id, log_index)
    std::vector<TraceParseError> errors;
};

// JSON Lines, one object per line:
//   {"tx_id","block","log_index","token_in","token_out","amount_in","amount_out"}
// with amounts as decimal strings. Never throws on malformed content: each
// bad line lands in `errors` with its line number, valid lines are kept.
ParsedEvents parse_events(std::istream& in);

struct CyclicTransaction {
    std::string tx_id;
    std::vector<SwapEvent> legs;
    TokenId start_token;
    Rat input;
    Rat output;
    Rat revenue;  // output - input; negative for losing rings
};

// Chains each transaction's swaps in log order and cuts out maximal closed
// segments: consecutive legs where amount_out feeds amount_in exactly (or
// within `slack`, a relative tolerance for logs rounded at export) and the
// token route returns to its start. One transaction can contribute several
// disjoint cycles; anything that does not close is classified out, not
// erred on.
std::vector<CyclicTransaction> group_cyclic_transactions(const std::vector<SwapEvent>& events,
                                                         const Rat& slack = Rat(0));

struct RevenueSummary {
    TokenId unit;
    std::size_t count = 0;
    Rat total{0};
    Rat mean{0};
    std::map<std::size_t, std::size_t> length_histogram;
};

// Aggregates the cycles whose start token is `unit`.
RevenueSummary revenue_summary(const std::vector<CyclicTransaction>& cyclics,
                               const TokenId& unit);

// Ring-execution fills as swap events, e.g. to replay a simulation through
// the ingest path.
std::vector<SwapEvent> fills_to_events(const std::vector<LegFill>& fills, const std::string& tx_id,
                                       std::int64_t block, std::int64_t first_log_index = 0);

}  // namespace ringarb
