#include "ringarb/cycle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <thread>
#include <unordered_set>

namespace ringarb {

namespace {

bool uniform_fees(const Cycle& cycle, const Market& market, FeeParams* out = nullptr) {
    const FeeParams& first = market.pool_at(cycle.path.legs.front().pool_id).fees;
    for (const SwapLeg& leg : cycle.path.legs) {
        if (market.pool_at(leg.pool_id).fees != first) return false;
    }
    if (out) *out = first;
    return true;
}

FeeParams require_uniform_fees(const Cycle& cycle, const Market& market) {
    FeeParams fees;
    if (!uniform_fees(cycle, market, &fees)) {
        fail(Errc::invalid_cycle, "cycle pools carry mixed fee schedules");
    }
    return fees;
}

}  // namespace

void validate_cycle(const Cycle& cycle, const Market& market) {
    const auto& legs = cycle.path.legs;
    if (legs.size() < 2) fail(Errc::invalid_cycle, "a cycle needs at least two legs");
    std::unordered_set<std::string> seen;
    TokenId carry = legs.front().input_token;
    for (std::size_t i = 0; i < legs.size(); ++i) {
        const Pool* pool = market.find_pool(legs[i].pool_id);
        if (!pool) fail(Errc::invalid_cycle, "no pool '" + legs[i].pool_id + "'");
        if (!pool->has_token(legs[i].input_token)) {
            fail(Errc::invalid_cycle, "token '" + legs[i].input_token.symbol +
                                          "' not in pool '" + pool->id + "'");
        }
        if (pool->is_empty()) fail(Errc::invalid_cycle, "pool '" + pool->id + "' has no liquidity");
        if (!seen.insert(legs[i].pool_id).second) {
            fail(Errc::invalid_cycle, "pool '" + legs[i].pool_id + "' is used twice");
        }
        if (legs[i].input_token != carry) {
            fail(Errc::invalid_cycle, "legs do not chain at position " + std::to_string(i));
        }
        carry = pool->other_token(legs[i].input_token);
    }
    if (carry != cycle.start_token()) {
        fail(Errc::invalid_cycle, "route ends in '" + carry.symbol + "', not the start token");
    }
}

Cycle make_cycle(const Market& market, TradePath path) {
    Cycle cycle{std::move(path)};
    validate_cycle(cycle, market);
    return cycle;
}

Cycle make_cycle(const Market& market, const std::vector<std::string>& pool_ids,
                 const TokenId& start) {
    TradePath path;
    TokenId carry = start;
    for (const std::string& id : pool_ids) {
        path.legs.push_back({id, carry});
        const Pool* pool = market.find_pool(id);
        if (!pool || !pool->has_token(carry)) {
            fail(Errc::invalid_cycle, "pool '" + id + "' does not continue from '" + carry.symbol + "'");
        }
        carry = pool->other_token(carry);
    }
    return make_cycle(market, std::move(path));
}

Cycle reversed(const Cycle& cycle, const Market& market) {
    TradePath path;
    path.legs.reserve(cycle.path.legs.size());
    for (auto it = cycle.path.legs.rbegin(); it != cycle.path.legs.rend(); ++it) {
        const Pool& pool = market.pool_at(it->pool_id);
        path.legs.push_back({it->pool_id, pool.other_token(it->input_token)});
    }
    return Cycle{std::move(path)};
}

Rat cycle_utility(const Cycle& cycle, const Market& market, const Rat& delta) {
    validate_cycle(cycle, market);
    require_uniform_fees(cycle, market);
    if (delta < 0) fail(Errc::negative_amount, "utility is defined for delta >= 0");
    if (delta == 0) return Rat(0);
    return virtual_swap_output(compose_path(cycle.path, market), delta) - delta;
}

Rat arbitrage_index(const Cycle& cycle, const Market& market) {
    validate_cycle(cycle, market);
    Rat index(1);
    for (const SwapLeg& leg : cycle.path.legs) {
        const Pool& pool = market.pool_at(leg.pool_id);
        index *= pool.reserve_opposite(leg.input_token) / pool.reserve_of(leg.input_token);
    }
    return index;
}

Rat marginal_at_zero(const Cycle& cycle, const Market& market) {
    validate_cycle(cycle, market);
    FeeParams fees = require_uniform_fees(cycle, market);
    Rat rr = fees.r1 * fees.r2;
    return rat_pow(rr, static_cast<unsigned>(cycle.n_hops())) * arbitrage_index(cycle, market) - 1;
}

bool is_profitable(const Cycle& cycle, const Market& market) {
    return marginal_at_zero(cycle, market) > 0;
}

std::optional<Cycle> best_direction(const Cycle& cycle, const Market& market) {
    if (is_profitable(cycle, market)) return cycle;
    Cycle back = reversed(cycle, market);
    if (is_profitable(back, market)) return back;
    return std::nullopt;
}

namespace {

// Sign of U'(d) on the virtual pool: sign of r1*r2*x_v*z_v - (x_v + r1*d)^2.
int utility_slope_sign(const VirtualPool& vp, const Rat& delta) {
    Rat lhs = vp.fees.r1 * vp.fees.r2 * vp.reserve_in * vp.reserve_out;
    Rat edge = vp.reserve_in + vp.fees.r1 * delta;
    return cmp(lhs, edge * edge);
}

}  // namespace

Sizing optimal_input(const Cycle& cycle, const Market& market) {
    if (!is_profitable(cycle, market)) {
        fail(Errc::not_profitable, "cycle has non-positive marginal at zero");
    }
    VirtualPool vp = compose_path(cycle.path, market);
    const Rat& x_v = vp.reserve_in;
    const Rat& r1 = vp.fees.r1;
    Rat radicand = r1 * vp.fees.r2 * x_v * vp.reserve_out;

    Rat delta;
    bool exact_root = false;
    if (auto root = exact_sqrt(radicand)) {
        delta = (*root - x_v) / r1;
        exact_root = true;
    } else {
        double seed = (std::sqrt(to_double(radicand)) - to_double(x_v)) / to_double(r1);
        delta = rat_from_double(seed);
        if (delta <= 0) {
            // sqrt(radicand) - x_v cancelled below double precision; take the
            // root through integer arithmetic instead
            delta = (rounded_sqrt(radicand, 45) - x_v) / r1;
        }
        if (delta <= 0) fail(Errc::not_profitable, "maximum is below representable size");
        // Newton on f(d) = (x_v + r1 d)^2 - radicand, exact arithmetic; two
        // steps square away the seed error
        for (int i = 0; i < 2; ++i) {
            Rat edge = x_v + r1 * delta;
            delta -= (edge * edge - radicand) / (2 * r1 * edge);
        }
    }

    Sizing sizing;
    sizing.delta_star = delta;
    sizing.expected_profit = virtual_swap_output(vp, delta) - delta;
    if (sizing.expected_profit <= 0) {
        fail(Errc::not_profitable, "sized input does not clear the fee drag");
    }
    if (exact_root) {
        sizing.bracket_lo = delta;
        sizing.bracket_hi = delta;
        return sizing;
    }
    Rat width = Rat(1) / mpz_class("1000000000000");  // 1e-12 relative
    for (int attempt = 0; attempt < 4; ++attempt) {
        Rat lo = delta * (1 - width);
        Rat hi = delta * (1 + width);
        if (utility_slope_sign(vp, lo) > 0 && utility_slope_sign(vp, hi) < 0) {
            sizing.bracket_lo = lo;
            sizing.bracket_hi = hi;
            return sizing;
        }
        width *= 10;
    }
    fail(Errc::not_profitable, "could not certify a maximum bracket");
}

RingExecution execute_ring(const Market& market, const Cycle& cycle, const Rat& delta,
                           const Rat& min_profit) {
    validate_cycle(cycle, market);
    if (delta < 0) fail(Errc::negative_amount, "ring input must be positive");
    if (delta == 0) fail(Errc::zero_amount, "ring input must be positive");

    Market working = market;
    std::vector<LegFill> fills;
    fills.reserve(cycle.n_hops());
    Rat amount = delta;
    for (const SwapLeg& leg : cycle.path.legs) {
        const Pool& pool = working.pool_at(leg.pool_id);
        TokenId out_token = pool.other_token(leg.input_token);
        SwapResult swapped = apply_swap(pool, leg.input_token, amount);
        fills.push_back({leg.pool_id, leg.input_token, std::move(out_token), amount,
                         swapped.amount_out});
        working.replace_pool(swapped.pool);
        amount = std::move(swapped.amount_out);
    }
    Rat realized = amount - delta;
    // Commit wants a strictly positive outcome; min_profit only raises the bar.
    bool committed = realized > 0 && realized >= min_profit;
    if (committed) {
        return {true, std::move(working), std::move(realized), std::move(fills)};
    }
    return {false, market, std::move(realized), std::move(fills)};
}

// ---- enumeration and search ---------------------------------------------

namespace {

struct CycleSearch {
    const Market& market;
    bool anchored;  // explicit start token: intermediates are unconstrained
    int max_hops;
    TokenId anchor;
    std::vector<SwapLeg> legs;
    std::unordered_set<std::string> used_pools;
    std::unordered_set<TokenId> visited;
    std::unordered_set<std::string> seen_keys;
    std::vector<Cycle>* out;

    void run() {
        visited.insert(anchor);
        dfs(anchor);
    }

    void dfs(const TokenId& current) {
        for (const std::string& pool_id : market.pools_with_token(current)) {
            const Pool& pool = market.pool_at(pool_id);
            if (pool.is_empty() || used_pools.contains(pool_id)) continue;
            TokenId next = pool.other_token(current);
            if (next == anchor) {
                if (legs.size() + 1 >= 2) record(pool_id, current);
                continue;
            }
            if (visited.contains(next)) continue;
            if (!anchored && !(anchor < next)) continue;
            if (static_cast<int>(legs.size()) + 1 >= max_hops) continue;

            legs.push_back({pool_id, current});
            used_pools.insert(pool_id);
            visited.insert(next);
            dfs(next);
            visited.erase(next);
            used_pools.erase(pool_id);
            legs.pop_back();
        }
    }

    void record(const std::string& closing_pool, const TokenId& closing_input) {
        std::vector<std::string> ids;
        ids.reserve(legs.size() + 1);
        for (const SwapLeg& leg : legs) ids.push_back(leg.pool_id);
        ids.push_back(closing_pool);
        std::vector<std::string> key = ids;
        std::sort(key.begin(), key.end());
        std::string joined;
        for (const std::string& id : key) {
            joined += id;
            joined += '\n';
        }
        if (!seen_keys.insert(joined).second) return;

        TradePath path;
        path.legs = legs;
        path.legs.push_back({closing_pool, closing_input});
        out->push_back(Cycle{std::move(path)});
    }
};

// Union-find plus Bellman-Ford negative-cycle scan; used only to rule out
// whole token components.
class NegativeCyclePrefilter {
public:
    explicit NegativeCyclePrefilter(const Market& market) {
        std::map<TokenId, int> ids;
        auto id_of = [&](const TokenId& t) {
            auto [it, inserted] = ids.emplace(t, static_cast<int>(ids.size()));
            if (inserted) parent_.push_back(it->second);
            return it->second;
        };
        struct Edge {
            int from, to;
            double weight;
        };
        std::vector<Edge> edges;
        for (const Pool& pool : market.pools()) {
            if (pool.is_empty()) continue;
            int a = id_of(pool.token0);
            int b = id_of(pool.token1);
            unite(a, b);
            double rr = to_double(pool.fees.r1 * pool.fees.r2);
            double rate01 = to_double(pool.reserve1) / to_double(pool.reserve0);
            // Small downward shift keeps marginally profitable cycles in play
            // despite log rounding.
            edges.push_back({a, b, -std::log(rr * rate01) - 1e-12});
            edges.push_back({b, a, -std::log(rr / rate01) - 1e-12});
        }
        tokens_by_root_.clear();
        for (auto& [token, id] : ids) tokens_by_root_[find(id)].push_back(id);

        std::map<int, std::vector<Edge>> edges_by_root;
        for (const Edge& e : edges) edges_by_root[find(e.from)].push_back(e);

        for (auto& [root, comp_edges] : edges_by_root) {
            std::size_t n = tokens_by_root_[root].size();
            std::vector<double> dist(parent_.size(), 0.0);
            bool changed = true;
            bool negative = false;
            for (std::size_t pass = 0; pass <= n && changed; ++pass) {
                changed = false;
                for (const Edge& e : comp_edges) {
                    if (dist[e.from] + e.weight < dist[e.to]) {
                        dist[e.to] = dist[e.from] + e.weight;
                        changed = true;
                        if (pass == n) negative = true;
                    }
                }
            }
            if (negative) keep_.insert(root);
        }
        for (auto& [token, id] : ids) token_root_[token] = find(id);
    }

    bool component_may_have_arbitrage(const TokenId& token) const {
        auto it = token_root_.find(token);
        return it != token_root_.end() && keep_.contains(it->second);
    }

private:
    int find(int v) {
        while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
        return v;
    }
    void unite(int a, int b) { parent_[find(a)] = find(b); }

    std::vector<int> parent_;
    std::map<int, std::vector<int>> tokens_by_root_;
    std::map<TokenId, int> token_root_;
    std::unordered_set<int> keep_;
};

std::string orientation_label(const Cycle& oriented, const Market& market) {
    Cycle back = reversed(oriented, market);
    std::vector<std::string> fwd, rev;
    for (const SwapLeg& leg : oriented.path.legs) fwd.push_back(leg.pool_id);
    for (const SwapLeg& leg : back.path.legs) rev.push_back(leg.pool_id);
    return fwd <= rev ? "forward" : "reverse";
}

struct FloatEval {
    bool profitable = false;
    double index = 0;
    double marginal = 0;
    double delta = 0;
    double profit = 0;
};

FloatEval evaluate_float(const Cycle& cycle, const Market& market) {
    FloatEval ev;
    const Pool& first_pool = market.pool_at(cycle.path.legs.front().pool_id);
    const double r1 = to_double(first_pool.fees.r1);
    const double rr = r1 * to_double(first_pool.fees.r2);
    double index = 1.0;
    double x_v = 0.0;
    double z_v = 0.0;
    bool first = true;
    for (const SwapLeg& leg : cycle.path.legs) {
        const Pool& pool = market.pool_at(leg.pool_id);
        double in = to_double(pool.reserve_of(leg.input_token));
        double out = to_double(pool.reserve_opposite(leg.input_token));
        index *= out / in;
        if (first) {
            x_v = in;
            z_v = out;
            first = false;
        } else {
            double denom = in + rr * z_v;
            x_v = x_v * in / denom;
            z_v = rr * z_v * out / denom;
        }
    }
    ev.index = index;
    ev.marginal = std::pow(rr, static_cast<double>(cycle.n_hops())) * index - 1.0;
    if (ev.marginal <= 0) return ev;
    double delta = (std::sqrt(rr * x_v * z_v) - x_v) / r1;
    if (delta <= 0) return ev;
    double profit = rr * z_v * delta / (x_v + r1 * delta) - delta;
    if (profit <= 0) return ev;
    ev.profitable = true;
    ev.delta = delta;
    ev.profit = profit;
    return ev;
}

std::optional<ArbOpportunity> evaluate_candidate(const Cycle& candidate, const Market& market,
                                                 const FindOptions& options) {
    if (!uniform_fees(candidate, market)) return std::nullopt;

    if (options.mode == NumericMode::floating) {
        FloatEval fwd = evaluate_float(candidate, market);
        Cycle oriented = candidate;
        FloatEval best = fwd;
        if (!fwd.profitable) {
            oriented = reversed(candidate, market);
            best = evaluate_float(oriented, market);
            if (!best.profitable) return std::nullopt;
        }
        ArbOpportunity op{oriented, orientation_label(oriented, market),
                          rat_from_double(best.index), rat_from_double(best.marginal),
                          rat_from_double(best.delta), rat_from_double(best.profit)};
        if (op.expected_profit < options.min_profit) return std::nullopt;
        return op;
    }

    std::optional<Cycle> oriented = best_direction(candidate, market);
    if (!oriented) return std::nullopt;
    Sizing sizing = optimal_input(*oriented, market);
    ArbOpportunity op{*oriented, orientation_label(*oriented, market),
                      arbitrage_index(*oriented, market), marginal_at_zero(*oriented, market),
                      sizing.delta_star, sizing.expected_profit};
    if (op.expected_profit < options.min_profit) return std::nullopt;
    return op;
}

}  // namespace

std::vector<Cycle> enumerate_cycles(const Market& market, const std::optional<TokenId>& start_token,
                                    int max_hops) {
    if (max_hops < 2) fail(Errc::bad_input, "max_hops must be at least 2");
    std::vector<Cycle> out;
    if (start_token) {
        CycleSearch search{market, true, max_hops, *start_token, {}, {}, {}, {}, &out};
        search.run();
        return out;
    }
    for (const TokenId& token : market.tokens()) {
        CycleSearch search{market, false, max_hops, token, {}, {}, {}, {}, &out};
        search.run();
    }
    return out;
}

std::vector<ArbOpportunity> find_cycles(const Market& market, const FindOptions& options) {
    std::optional<TokenId> start = options.start_token;
    std::optional<NegativeCyclePrefilter> prefilter;
    if (options.use_prefilter) prefilter.emplace(market);

    if (start && prefilter && !prefilter->component_may_have_arbitrage(*start)) {
        return {};
    }

    std::vector<Cycle> candidates = enumerate_cycles(market, start, options.max_hops);
    if (prefilter) {
        std::erase_if(candidates, [&](const Cycle& c) {
            return !prefilter->component_may_have_arbitrage(c.start_token());
        });
    }

    std::vector<std::optional<ArbOpportunity>> evaluated(candidates.size());
    unsigned workers = options.workers ? options.workers : std::thread::hardware_concurrency();
    bool parallel = workers > 1 && (options.workers > 0 || candidates.size() >= 16);
    if (parallel && !candidates.empty()) {
        std::vector<std::future<void>> futures;
        std::size_t chunk = (candidates.size() + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            std::size_t begin = w * chunk;
            std::size_t end = std::min(candidates.size(), begin + chunk);
            if (begin >= end) break;
            futures.push_back(std::async(std::launch::async, [&, begin, end] {
                for (std::size_t i = begin; i < end; ++i) {
                    evaluated[i] = evaluate_candidate(candidates[i], market, options);
                }
            }));
        }
        for (auto& f : futures) f.get();
    } else {
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            evaluated[i] = evaluate_candidate(candidates[i], market, options);
        }
    }

    std::vector<ArbOpportunity> found;
    for (auto& op : evaluated) {
        if (op) found.push_back(std::move(*op));
    }

    auto pool_sequence = [](const ArbOpportunity& op) {
        std::vector<std::string> ids;
        ids.reserve(op.cycle.n_hops());
        for (const SwapLeg& leg : op.cycle.path.legs) ids.push_back(leg.pool_id);
        return ids;
    };
    std::stable_sort(found.begin(), found.end(),
                     [&](const ArbOpportunity& a, const ArbOpportunity& b) {
                         int c = cmp(a.expected_profit, b.expected_profit);
                         if (c != 0) return c > 0;
                         return pool_sequence(a) < pool_sequence(b);
                     });
    return found;
}

}  // namespace ringarb
