#include "ringarb/fee_policy.hpp"

#include <algorithm>

namespace ringarb {

namespace {

// index^(-1/hops) via an exact root when available, else bisection on the
// exact marginal sign. The bracket invariant is marginal(lo) <= 0 <
// marginal(hi); lo is returned.
Rat inverse_root(const Rat& index, unsigned hops) {
    mpz_class num_root, den_root;
    int num_exact = mpz_root(num_root.get_mpz_t(), index.get_num().get_mpz_t(), hops);
    int den_exact = mpz_root(den_root.get_mpz_t(), index.get_den().get_mpz_t(), hops);
    if (num_exact != 0 && den_exact != 0) {
        Rat t(den_root, num_root);
        t.canonicalize();
        return t;
    }

    auto marginal = [&](const Rat& r) -> Rat { return rat_pow(r, hops) * index - 1; };
    Rat lo(1, 2);
    while (marginal(lo) > 0) lo /= 2;
    Rat hi(1);
    // relative width 1e-15
    Rat tol = lo / mpz_class("1000000000000000");
    while (hi - lo > tol) {
        Rat mid = (lo + hi) / 2;
        if (marginal(mid) > 0) {
            hi = mid;
        } else {
            lo = mid;
        }
        tol = lo / mpz_class("1000000000000000");
    }
    return lo;
}

}  // namespace

Rat cycle_fee_threshold(const Cycle& cycle, const Market& market) {
    Rat index = arbitrage_index(cycle, market);
    if (index == 1) {
        fail(Errc::no_arbitrage_direction, "cycle is exactly balanced");
    }
    if (index < 1) index = 1 / index;
    return inverse_root(index, static_cast<unsigned>(cycle.n_hops()));
}

FeeThresholdReport market_fee_threshold(const Market& market, int max_hops) {
    FeeThresholdReport report;
    for (const Cycle& candidate : enumerate_cycles(market, std::nullopt, max_hops)) {
        Rat index = arbitrage_index(candidate, market);
        if (index == 1) continue;
        Cycle oriented = index > 1 ? candidate : reversed(candidate, market);
        if (index < 1) index = 1 / index;
        Rat threshold = inverse_root(index, static_cast<unsigned>(oriented.n_hops()));
        std::string direction;
        {
            // label matches the scan report convention
            std::vector<std::string> fwd, rev;
            for (const SwapLeg& leg : oriented.path.legs) fwd.push_back(leg.pool_id);
            for (const SwapLeg& leg : reversed(oriented, market).path.legs)
                rev.push_back(leg.pool_id);
            direction = fwd <= rev ? "forward" : "reverse";
        }
        report.per_cycle.push_back(
            {std::move(oriented), std::move(direction), std::move(index),
             candidate.n_hops(), std::move(threshold)});
    }
    std::stable_sort(report.per_cycle.begin(), report.per_cycle.end(),
                     [](const CycleThreshold& a, const CycleThreshold& b) {
                         int c = cmp(a.threshold, b.threshold);
                         if (c != 0) return c < 0;
                         std::vector<std::string> ai, bi;
                         for (const SwapLeg& leg : a.cycle.path.legs) ai.push_back(leg.pool_id);
                         for (const SwapLeg& leg : b.cycle.path.legs) bi.push_back(leg.pool_id);
                         return ai < bi;
                     });
    if (!report.per_cycle.empty()) {
        report.market_threshold = report.per_cycle.front().threshold;
    }
    return report;
}

std::vector<FeeSweepPoint> sweep_fee_profitability(const Market& market, const Cycle& cycle,
                                                   const std::vector<Rat>& fee_grid) {
    validate_cycle(cycle, market);
    std::vector<FeeSweepPoint> points;
    points.reserve(fee_grid.size());
    for (const Rat& fee : fee_grid) {
        if (fee <= 0 || fee > 1) {
            fail(Errc::invalid_fee, "fee grid values must lie in (0, 1]");
        }
        Market probe = with_uniform_fees(market, FeeParams{fee, Rat(1)});
        FeeSweepPoint point;
        point.fee = fee;
        point.marginal = marginal_at_zero(cycle, probe);
        if (point.marginal > 0) {
            point.optimal_profit = optimal_input(cycle, probe).expected_profit;
        }
        points.push_back(std::move(point));
    }
    return points;
}

}  // namespace ringarb
