#pragma once

#include <optional>
#include <vector>

#include "ringarb/cycle.hpp"

namespace ringarb {

struct CycleThreshold {
    Cycle cycle;  // the orientation with index > 1
    std::string direction;
    Rat index;
    std::size_t hops;
    Rat threshold;
};

struct FeeThresholdReport {
    std::vector<CycleThreshold> per_cycle;
    // Minimum of the per-cycle thresholds; 1 when no cycle is unbalanced.
    // Any uniform fee with r1*r2 <= market_threshold leaves every enumerated
    // cycle with a non-positive marginal.
    Rat market_threshold{1};
};

// Largest per-hop retained fraction r = r1*r2 at which this cycle stops
// being profitable: the root of r^hops * index = 1, i.e. index^(-1/hops).
// Returned as an exact rational when the index is a perfect hops-th power,
// otherwise as the lower end of a bisection bracket of relative width 1e-15
// (so the returned fee is always on the safe side of the root).
//
// Accepts either orientation; orients internally to the one with index > 1.
Rat cycle_fee_threshold(const Cycle& cycle, const Market& market);

FeeThresholdReport market_fee_threshold(const Market& market, int max_hops);

struct FeeSweepPoint {
    Rat fee;  // r1 value probed, with r2 = 1
    Rat marginal;
    std::optional<Rat> optimal_profit;  // present when marginal > 0
};

// Re-prices one cycle across a fee grid: marginal at zero for each fee, and
// the optimally sized profit where positive. Profit is non-decreasing in
// the fee's retained fraction.
std::vector<FeeSweepPoint> sweep_fee_profitability(const Market& market, const Cycle& cycle,
                                                   const std::vector<Rat>& fee_grid);

}  // namespace ringarb
