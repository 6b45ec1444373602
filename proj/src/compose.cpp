#include "ringarb/compose.hpp"

#include <unordered_set>

namespace ringarb {

VirtualPool as_virtual(const Pool& pool, const TokenId& input_token) {
    return {pool.reserve_of(input_token), pool.reserve_opposite(input_token), pool.fees};
}

VirtualPool compose_pair(const VirtualPool& first, const VirtualPool& second) {
    if (first.fees != second.fees) {
        fail(Errc::fee_mismatch, "composed pools must share one fee schedule");
    }
    if (first.reserve_in == 0 || first.reserve_out == 0 || second.reserve_in == 0 ||
        second.reserve_out == 0) {
        fail(Errc::empty_pool, "cannot compose an empty pool");
    }
    const Rat rr = first.fees.r1 * first.fees.r2;
    const Rat denom = second.reserve_in + rr * first.reserve_out;
    return {first.reserve_in * second.reserve_in / denom,
            rr * first.reserve_out * second.reserve_out / denom, first.fees};
}

VirtualPool compose_pair(const Pool& first, const TokenId& first_input, const Pool& second,
                         const TokenId& second_input) {
    if (first.other_token(first_input) != second_input) {
        fail(Errc::token_mismatch, "pool '" + second.id + "' does not continue the route from '" +
                                       first.id + "'");
    }
    if (!second.has_token(second_input)) {
        fail(Errc::unknown_token, "token '" + second_input.symbol + "' not in pool '" + second.id + "'");
    }
    return compose_pair(as_virtual(first, first_input), as_virtual(second, second_input));
}

void validate_path(const TradePath& path, const Market& market, bool require_uniform_fees) {
    if (path.legs.empty()) fail(Errc::bad_input, "path must have at least one leg");
    std::unordered_set<std::string> seen;
    const FeeParams* fees = nullptr;
    TokenId carry;
    for (std::size_t i = 0; i < path.legs.size(); ++i) {
        const SwapLeg& leg = path.legs[i];
        const Pool& pool = market.pool_at(leg.pool_id);
        if (!pool.has_token(leg.input_token)) {
            fail(Errc::unknown_token,
                 "token '" + leg.input_token.symbol + "' not in pool '" + pool.id + "'");
        }
        if (!seen.insert(leg.pool_id).second) {
            fail(Errc::bad_input, "pool '" + leg.pool_id + "' appears twice in the path");
        }
        if (i > 0 && leg.input_token != carry) {
            fail(Errc::token_mismatch, "leg " + std::to_string(i) + " expects '" +
                                           leg.input_token.symbol + "' but the route carries '" +
                                           carry.symbol + "'");
        }
        if (require_uniform_fees) {
            if (!fees) {
                fees = &pool.fees;
            } else if (*fees != pool.fees) {
                fail(Errc::fee_mismatch, "pool '" + pool.id + "' breaks the path's fee schedule");
            }
        }
        carry = pool.other_token(leg.input_token);
    }
}

TokenId path_output_token(const TradePath& path, const Market& market) {
    const SwapLeg& last = path.legs.back();
    return market.pool_at(last.pool_id).other_token(last.input_token);
}

VirtualPool compose_path(const TradePath& path, const Market& market) {
    validate_path(path, market);
    VirtualPool acc = as_virtual(market.pool_at(path.legs.front().pool_id),
                                 path.legs.front().input_token);
    for (std::size_t i = 1; i < path.legs.size(); ++i) {
        const SwapLeg& leg = path.legs[i];
        acc = compose_pair(acc, as_virtual(market.pool_at(leg.pool_id), leg.input_token));
    }
    return acc;
}

Rat virtual_swap_output(const VirtualPool& vp, const Rat& delta_in) {
    if (vp.reserve_in == 0 || vp.reserve_out == 0) {
        fail(Errc::empty_pool, "virtual pool has no liquidity");
    }
    if (delta_in < 0) fail(Errc::negative_amount, "swap input must be >= 0");
    if (delta_in == 0) return Rat(0);
    return cp_swap_output(vp.reserve_in, vp.reserve_out, vp.fees.r1, vp.fees.r2, delta_in);
}

Rat sequential_output(const TradePath& path, const Market& market, const Rat& delta_in) {
    validate_path(path, market);
    Rat amount = delta_in;
    for (const SwapLeg& leg : path.legs) {
        amount = swap_output(market.pool_at(leg.pool_id), leg.input_token, amount);
    }
    return amount;
}

}  // namespace ringarb
