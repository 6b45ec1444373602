#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ringarb/compose.hpp"

namespace ringarb {

// A closed route: the last leg's output token equals the first leg's input
// token. At least two legs, all pools distinct.
struct Cycle {
    TradePath path;

    std::size_t n_hops() const { return path.legs.size(); }
    const TokenId& start_token() const { return path.legs.front().input_token; }

    friend bool operator==(const Cycle&, const Cycle&) = default;
};

// Throws invalid_cycle unless the cycle is executable in the market.
// Fee uniformity is a separate concern: execution does not need it, the
// analytic operations below do.
void validate_cycle(const Cycle& cycle, const Market& market);

Cycle make_cycle(const Market& market, TradePath path);
Cycle make_cycle(const Market& market, const std::vector<std::string>& pool_ids,
                 const TokenId& start);

// Same pools walked the opposite way round, anchored on the same token.
Cycle reversed(const Cycle& cycle, const Market& market);

// U(d) = ring output of d minus d. Zero at d = 0, strictly concave beyond.
Rat cycle_utility(const Cycle& cycle, const Market& market, const Rat& delta);

// Product of output-reserve/input-reserve ratios around the cycle.
// Fee-independent; the reversed cycle has exactly the reciprocal index.
Rat arbitrage_index(const Cycle& cycle, const Market& market);

// dU/dd at d = 0: (r1*r2)^hops * index - 1, exact.
Rat marginal_at_zero(const Cycle& cycle, const Market& market);

// Strict sign test on the exact marginal; no tolerance anywhere.
bool is_profitable(const Cycle& cycle, const Market& market);

// The orientation with positive marginal, if any. Never both: when one
// direction clears the fee drag the reciprocal index cannot.
std::optional<Cycle> best_direction(const Cycle& cycle, const Market& market);

struct Sizing {
    Rat delta_star;
    Rat expected_profit;
    // Certified: the utility derivative is positive at bracket_lo and
    // negative at bracket_hi, both verified exactly.
    Rat bracket_lo;
    Rat bracket_hi;
};

// Argmax of U on the composed virtual pool:
//   d* = (sqrt(r1*r2*x_v*z_v) - x_v) / r1
// Exact when the radicand is a perfect square; otherwise a float root with
// one exact Newton polish, reported with a certified bracket.
Sizing optimal_input(const Cycle& cycle, const Market& market);

struct LegFill {
    std::string pool_id;
    TokenId token_in;
    TokenId token_out;
    Rat amount_in;
    Rat amount_out;
};

struct RingExecution {
    bool committed;
    Market market;  // post-state when committed, the untouched pre-state otherwise
    Rat realized_profit;
    std::vector<LegFill> fills;
};

// All-or-nothing ring execution: swaps leg by leg on live reserves and
// commits only if the realized profit is strictly positive and at least
// min_profit; otherwise the prior market is returned unchanged.
RingExecution execute_ring(const Market& market, const Cycle& cycle, const Rat& delta,
                           const Rat& min_profit = Rat(0));

enum class NumericMode { exact, floating };

struct ArbOpportunity {
    Cycle cycle;
    std::string direction;  // "forward"/"reverse": lexicographic label of the orientation
    Rat index;
    Rat marginal;
    Rat optimal_input;
    Rat expected_profit;
};

struct FindOptions {
    int max_hops = 4;
    std::optional<TokenId> start_token;
    NumericMode mode = NumericMode::exact;
    // Bellman-Ford negative-cycle prescan on -log(r1*r2*rate) edge weights;
    // prunes token components that provably contain no profitable cycle.
    bool use_prefilter = true;
    Rat min_profit{0};
    // candidate-evaluation threads; 0 picks the hardware count. Results are
    // identical regardless of the worker count.
    unsigned workers = 0;
};

// Candidate simple cycles (distinct pools), each undirected cycle once,
// anchored at its smallest token or at `start_token` when given.
// Deterministic order.
std::vector<Cycle> enumerate_cycles(const Market& market, const std::optional<TokenId>& start_token,
                                    int max_hops);

// Enumerates cycles, keeps the profitable orientation of each, sizes it,
// and sorts by expected profit (descending, pool-id sequence as the tie
// break). Cycles whose pools disagree on fees are skipped: they have no
// single-fee composition.
std::vector<ArbOpportunity> find_cycles(const Market& market, const FindOptions& options = {});

}  // namespace ringarb
