#include "ringarb/market_analysis.hpp"

#include <algorithm>

namespace ringarb {

namespace {

const std::vector<Rat>& probe_grid() {
    // log-spaced fractions of the buy pool's input reserve
    static const std::vector<Rat> grid = {
        Rat(1, 1000000), Rat(1, 100000), Rat(1, 10000), Rat(1, 1000), Rat(1, 100),
        Rat(1, 10),      Rat(3, 10),     Rat(1),        Rat(3)};
    return grid;
}

std::vector<std::string> pools_between(const Market& market, const TokenId& a, const TokenId& b) {
    std::vector<std::string> out;
    for (const std::string& id : market.pools_with_token(a)) {
        const Pool& pool = market.pool_at(id);
        if (pool.has_token(b) && !pool.is_empty()) out.push_back(id);
    }
    return out;
}

}  // namespace

std::optional<PairArbWitness> detect_pair_arbitrage(const Market& market) {
    const std::vector<TokenId> tokens = market.tokens();
    for (const TokenId& x : tokens) {
        for (const TokenId& z : tokens) {
            if (z == x) continue;
            const auto direct_pools = pools_between(market, x, z);
            if (direct_pools.empty()) continue;
            for (const TokenId& y : tokens) {
                if (y == x || y == z) continue;
                const auto sell_first = pools_between(market, z, y);
                const auto sell_second = pools_between(market, y, x);
                if (sell_first.empty() || sell_second.empty()) continue;
                for (const std::string& direct_id : direct_pools) {
                    for (const std::string& zy_id : sell_first) {
                        for (const std::string& yx_id : sell_second) {
                            TradePath path;
                            path.legs = {{direct_id, x}, {zy_id, z}, {yx_id, y}};
                            Cycle cycle{std::move(path)};
                            const Rat& buy_reserve =
                                market.pool_at(direct_id).reserve_of(x);
                            for (const Rat& eta : probe_grid()) {
                                Rat delta = buy_reserve * eta;
                                Rat bought =
                                    swap_output(market.pool_at(direct_id), x, delta);
                                Rat mid = swap_output(market.pool_at(zy_id), z, bought);
                                Rat back = swap_output(market.pool_at(yx_id), y, mid);
                                if (back > delta) {
                                    Rat profit = back - delta;
                                    return PairArbWitness{std::move(cycle), std::move(delta),
                                                          std::move(bought), std::move(back),
                                                          std::move(profit)};
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    return std::nullopt;
}

const char* scenario_class_name(ScenarioClass c) {
    switch (c) {
        case ScenarioClass::same_direction_then_reverse:
            return "same-direction-then-reverse";
        case ScenarioClass::reverse_then_same:
            return "reverse-then-same";
        case ScenarioClass::same_direction_both:
            return "same-direction-both";
    }
    return "?";
}

namespace {

enum class Dir { none, deposit0, deposit1 };

Dir direction_toward(const Rat& x, const Rat& y, const Rat& k) {
    int c = cmp(x, k * y);
    if (c == 0) return Dir::none;
    return c < 0 ? Dir::deposit0 : Dir::deposit1;
}

struct Corrective {
    Surd final0;
    Surd final1;
    Surd product;
    Surd fee0;  // retained by the pool, token0 units
    Surd fee1;  // retained by the pool, token1 units
    Dir dir = Dir::none;
};

// One trade from (x, y) to reserve ratio x'/y' = k. Depositing token0 with
// retained input r1*d and output fee (1-r2) kept in the pool gives
//   x' = x + d,  y' = y * (x + r1*(1-r2)*d) / (x + r1*d)
// so x' = k*y' is a quadratic in d; the positive root is the trade.
Corrective corrective_on_side(const Rat& x, const Rat& y, const FeeParams& fees, const Rat& k) {
    const Rat& r1 = fees.r1;
    const Rat& r2 = fees.r2;
    Rat b = x * (1 + r1) - k * y * r1 * (1 - r2);
    Rat c = x * (x - k * y);  // negative: k lies above the current ratio
    Rat disc = b * b - 4 * r1 * c;
    Surd delta(-b / (2 * r1), 1 / (2 * r1), disc);

    Corrective result;
    result.dir = Dir::deposit0;
    result.final0 = Surd(x) + delta;
    Surd numer = Surd(x) + delta * Rat(r1 * (1 - r2));
    Surd denom = Surd(x) + delta * r1;
    result.final1 = Surd(y) * numer / denom;
    result.product = result.final0 * result.final1;
    result.fee0 = delta * Rat(1 - r1);
    Surd received = Surd(y) - result.final1;
    result.fee1 = received * Rat(1 / r2 - 1);
    return result;
}

Corrective corrective_trade(const Rat& x, const Rat& y, const FeeParams& fees, const Rat& k) {
    switch (direction_toward(x, y, k)) {
        case Dir::none: {
            Corrective r;
            r.final0 = Surd(x);
            r.final1 = Surd(y);
            r.product = Surd(x * y);
            return r;
        }
        case Dir::deposit0:
            return corrective_on_side(x, y, fees, k);
        case Dir::deposit1: {
            Corrective mirrored = corrective_on_side(y, x, fees, 1 / k);
            Corrective r;
            r.dir = Dir::deposit1;
            r.final0 = mirrored.final1;
            r.final1 = mirrored.final0;
            r.product = mirrored.product;
            r.fee0 = mirrored.fee1;
            r.fee1 = mirrored.fee0;
            return r;
        }
    }
    fail(Errc::invalid_ratio, "unreachable");
}

// Sign pattern of the pool's two trades on the ring route, relative to the
// direct corrective trade. A missing or exactly-on-target second trade
// degenerates to same-direction-both.
ScenarioClass classify(Dir ring, Dir direct, Dir after_ring) {
    if (ring == Dir::none || after_ring == ring) return ScenarioClass::same_direction_both;
    if (after_ring == Dir::none) return ScenarioClass::same_direction_both;
    if (ring == direct || direct == Dir::none) {
        return ScenarioClass::same_direction_then_reverse;
    }
    return ScenarioClass::reverse_then_same;
}

}  // namespace

ConvergenceReport compare_convergence(const ConvergenceScenario& scenario) {
    const Pool& pool = scenario.pool;
    if (pool.is_empty()) fail(Errc::empty_pool, "scenario pool has no liquidity");
    validate_fees(pool.fees);
    const Rat& k = scenario.target_ratio;
    if (k <= 0) fail(Errc::invalid_ratio, "target ratio must be positive");

    const Rat& x_b = pool.reserve0;
    const Rat& y_b = pool.reserve1;
    Dir direct_dir = direction_toward(x_b, y_b, k);
    Corrective direct = corrective_trade(x_b, y_b, pool.fees, k);

    ConvergenceReport report;
    report.product_direct = direct.product;
    report.fees_direct = direct.fee0 + direct.fee1 * k;

    if (!scenario.ring_swap) {
        report.product_with_ring = direct.product;
        report.fees_with_ring = report.fees_direct;
        report.scenario_class = classify(Dir::none, direct_dir, direct.dir);
        report.product_cmp = 0;
        report.ring_dominates = true;
        return report;
    }

    const auto& [ring_token, ring_amount] = *scenario.ring_swap;
    if (ring_amount <= 0) fail(Errc::zero_amount, "ring swap amount must be positive");
    SwapResult after_ring = apply_swap(pool, ring_token, ring_amount);
    Dir ring_dir = ring_token == pool.token0 ? Dir::deposit0 : Dir::deposit1;

    Rat ring_fee0(0), ring_fee1(0);
    if (ring_dir == Dir::deposit0) {
        ring_fee0 = (1 - pool.fees.r1) * ring_amount;
        ring_fee1 = (1 / pool.fees.r2 - 1) * after_ring.amount_out;
    } else {
        ring_fee1 = (1 - pool.fees.r1) * ring_amount;
        ring_fee0 = (1 / pool.fees.r2 - 1) * after_ring.amount_out;
    }

    const Rat& x_a = after_ring.pool.reserve0;
    const Rat& y_a = after_ring.pool.reserve1;
    Corrective corrective = corrective_trade(x_a, y_a, pool.fees, k);

    report.product_with_ring = corrective.product;
    report.fees_with_ring =
        Surd(ring_fee0) + corrective.fee0 + (Surd(ring_fee1) + corrective.fee1) * k;
    report.scenario_class = classify(ring_dir, direct_dir, corrective.dir);
    report.product_cmp = cmp(report.product_with_ring, report.product_direct);
    report.ring_dominates = report.product_cmp >= 0;
    return report;
}

std::pair<Rat, Rat> balance_report(const Market& before, const Market& after, const Cycle& cycle) {
    return {arbitrage_index(cycle, before), arbitrage_index(cycle, after)};
}

bool strictly_closer_to_one(const Rat& after, const Rat& before) {
    if (before <= 0 || after <= 0) fail(Errc::bad_input, "rate products must be positive");
    if (before == 1) return false;
    Rat inverse = 1 / before;
    Rat lo = std::min(before, inverse);
    Rat hi = std::max(before, inverse);
    return after > lo && after < hi;
}

}  // namespace ringarb
