#pragma once

#include <optional>
#include <utility>

#include "ringarb/cycle.hpp"

namespace ringarb {

struct PairArbWitness {
    Cycle cycle;       // buy leg first, then the two-hop sell route
    Rat buy_input;     // spent on the direct pool
    Rat bought;        // received from the direct pool
    Rat final_output;  // received back after the two-hop sale
    Rat profit;        // final_output - buy_input, strictly positive
};

// Looks for a profitable buy-direct / sell-via-two-hops pair: buy a token
// in its direct pool, sell it back through an intermediate token. The
// search probes a log-spaced input grid and validates candidates by exact
// utility evaluation, so it is independent of the derivative criterion.
// Markets without profitable ring cycles yield nullopt.
std::optional<PairArbWitness> detect_pair_arbitrage(const Market& market);

struct ConvergenceScenario {
    Pool pool;
    // A single ring leg touching this pool before rational traders push the
    // ratio to target: input token plus amount.
    std::optional<std::pair<TokenId, Rat>> ring_swap;
    Rat target_ratio;  // reserve0/reserve1 the market converges to
};

enum class ScenarioClass {
    same_direction_then_reverse,
    reverse_then_same,
    same_direction_both,
};

const char* scenario_class_name(ScenarioClass c);

struct ConvergenceReport {
    // Final reserve products; quadratic irrationals in general, carried
    // exactly and rendered to float only for display.
    Surd product_direct;
    Surd product_with_ring;
    // Fee value kept by the pool on each route, in token0 units with the
    // token1 side valued at the common final ratio.
    Surd fees_direct;
    Surd fees_with_ring;
    ScenarioClass scenario_class;
    int product_cmp;      // sign of (product_with_ring - product_direct), exact
    bool ring_dominates;  // product_cmp >= 0
};

// Prices both routes to the target ratio: the direct corrective trade, and
// the ring leg followed by its corrective trade. Products and fees are
// computed exactly; the comparison never touches floating point.
ConvergenceReport compare_convergence(const ConvergenceScenario& scenario);

// Product of directed spot rates around the cycle in two snapshots.
// A committed ring moves the product strictly toward 1.
std::pair<Rat, Rat> balance_report(const Market& before, const Market& after, const Cycle& cycle);

// True when |log(after)| < |log(before)|, evaluated exactly on rationals.
bool strictly_closer_to_one(const Rat& after, const Rat& before);

}  // namespace ringarb
