#include "ringarb/amm.hpp"

#include <algorithm>

namespace ringarb {

FeeParams FeeParams::from_ppm(long in_ppm, long out_ppm) {
    FeeParams f{Rat(in_ppm, 1000000), Rat(out_ppm, 1000000)};
    f.r1.canonicalize();
    f.r2.canonicalize();
    validate_fees(f);
    return f;
}

long FeeParams::r1_ppm() const { return mpz_class(r1 * 1000000).get_si(); }
long FeeParams::r2_ppm() const { return mpz_class(r2 * 1000000).get_si(); }

void validate_fees(const FeeParams& fees) {
    if (fees.r1 <= 0 || fees.r1 > 1 || fees.r2 <= 0 || fees.r2 > 1) {
        fail(Errc::invalid_fee, "retained fractions must lie in (0, 1]");
    }
}

const Rat& Pool::reserve_of(const TokenId& t) const {
    if (t == token0) return reserve0;
    if (t == token1) return reserve1;
    fail(Errc::unknown_token, "token '" + t.symbol + "' not in pool '" + id + "'");
}

const Rat& Pool::reserve_opposite(const TokenId& t) const {
    if (t == token0) return reserve1;
    if (t == token1) return reserve0;
    fail(Errc::unknown_token, "token '" + t.symbol + "' not in pool '" + id + "'");
}

TokenId Pool::other_token(const TokenId& t) const {
    if (t == token0) return token1;
    if (t == token1) return token0;
    fail(Errc::unknown_token, "token '" + t.symbol + "' not in pool '" + id + "'");
}

const Pool* Market::find_pool(std::string_view id) const {
    auto it = index_.find(std::string(id));
    return it == index_.end() ? nullptr : &pools_[it->second];
}

const Pool& Market::pool_at(std::string_view id) const {
    const Pool* p = find_pool(id);
    if (!p) fail(Errc::unknown_pool, "no pool '" + std::string(id) + "'");
    return *p;
}

const std::vector<std::string>& Market::pools_with_token(const TokenId& token) const {
    static const std::vector<std::string> none;
    auto it = adjacency_.find(token);
    return it == adjacency_.end() ? none : it->second;
}

std::vector<TokenId> Market::tokens() const {
    std::vector<TokenId> out;
    out.reserve(adjacency_.size());
    for (const auto& [token, _] : adjacency_) out.push_back(token);
    return out;
}

bool Market::has_pair(const TokenId& a, const TokenId& b) const {
    for (const auto& id : pools_with_token(a)) {
        if (pools_[index_.at(id)].has_token(b)) return true;
    }
    return false;
}

void Market::insert_pool(Pool pool, bool allow_parallel_pair) {
    if (pool.token0.symbol.empty() || pool.token1.symbol.empty()) {
        fail(Errc::bad_input, "pool '" + pool.id + "' has an empty token symbol");
    }
    if (pool.token0 == pool.token1) {
        fail(Errc::identical_tokens, "pool '" + pool.id + "' pairs a token with itself");
    }
    if (pool.id.empty()) fail(Errc::bad_input, "pool id must be non-empty");
    if (index_.contains(pool.id)) {
        fail(Errc::duplicate_pool_id, "pool id '" + pool.id + "' already registered");
    }
    if (!allow_parallel_pair && has_pair(pool.token0, pool.token1)) {
        fail(Errc::duplicate_pair,
             "pair " + pool.token0.symbol + "/" + pool.token1.symbol + " already has a pool");
    }
    validate_fees(pool.fees);
    if (pool.reserve0 < 0 || pool.reserve1 < 0 || pool.lp_supply < 0) {
        fail(Errc::negative_amount, "pool '" + pool.id + "' has a negative amount");
    }

    index_.emplace(pool.id, pools_.size());
    for (const TokenId& t : {pool.token0, pool.token1}) {
        auto& ids = adjacency_[t];
        ids.insert(std::upper_bound(ids.begin(), ids.end(), pool.id), pool.id);
    }
    pools_.push_back(std::move(pool));
}

void Market::replace_pool(const Pool& pool) {
    auto it = index_.find(pool.id);
    if (it == index_.end()) fail(Errc::unknown_pool, "no pool '" + pool.id + "'");
    Pool& current = pools_[it->second];
    if (current.token0 != pool.token0 || current.token1 != pool.token1) {
        fail(Errc::token_mismatch, "replace_pool must keep the token pair of '" + pool.id + "'");
    }
    current = pool;
}

Rat Market::lp_balance(std::string_view provider, std::string_view pool_id) const {
    auto it = lp_balances_.find({std::string(provider), std::string(pool_id)});
    return it == lp_balances_.end() ? Rat(0) : it->second;
}

void Market::set_lp_balance(std::string_view provider, std::string_view pool_id, Rat amount) {
    auto key = std::make_pair(std::string(provider), std::string(pool_id));
    if (amount == 0) {
        lp_balances_.erase(key);
    } else {
        lp_balances_[key] = std::move(amount);
    }
}

Rat swap_output(const Pool& pool, const TokenId& input_token, const Rat& delta_in) {
    const Rat& reserve_in = pool.reserve_of(input_token);
    const Rat& reserve_out = pool.reserve_opposite(input_token);
    if (reserve_in == 0 || reserve_out == 0) {
        fail(Errc::empty_pool, "pool '" + pool.id + "' has no liquidity");
    }
    if (delta_in < 0) fail(Errc::negative_amount, "swap input must be >= 0");
    if (delta_in == 0) return Rat(0);
    return cp_swap_output(reserve_in, reserve_out, pool.fees.r1, pool.fees.r2, delta_in);
}

Rat spot_rate(const Pool& pool, const TokenId& input_token) {
    const Rat& reserve_in = pool.reserve_of(input_token);
    const Rat& reserve_out = pool.reserve_opposite(input_token);
    if (reserve_in == 0 || reserve_out == 0) {
        fail(Errc::empty_pool, "pool '" + pool.id + "' has no liquidity");
    }
    return reserve_out / reserve_in;
}

PoolCreation create_pool(const Market& market, const TokenId& token0, const TokenId& token1,
                         const FeeParams& fees, std::string id) {
    if (token0.symbol.empty() || token1.symbol.empty()) {
        fail(Errc::bad_input, "token symbols must be non-empty");
    }
    if (token0 == token1) {
        fail(Errc::identical_tokens, "cannot pair '" + token0.symbol + "' with itself");
    }
    if (market.has_pair(token0, token1)) {
        fail(Errc::duplicate_pair,
             "pair " + token0.symbol + "/" + token1.symbol + " already has a pool");
    }
    if (id.empty()) id = token0.symbol + "-" + token1.symbol;

    Pool pool;
    pool.id = id;
    pool.token0 = token0;
    pool.token1 = token1;
    pool.fees = fees;

    Market next = market;
    next.insert_pool(std::move(pool));
    return {std::move(next), std::move(id)};
}

SwapResult apply_swap(const Pool& pool, const TokenId& input_token, const Rat& delta_in) {
    if (delta_in == 0) fail(Errc::zero_amount, "zero-amount swap rejected");
    Rat out = swap_output(pool, input_token, delta_in);
    Pool next = pool;
    if (input_token == pool.token0) {
        next.reserve0 += delta_in;
        next.reserve1 -= out;
    } else {
        next.reserve1 += delta_in;
        next.reserve0 -= out;
    }
    return {std::move(next), std::move(out)};
}

MarketSwap apply_swap(const Market& market, std::string_view pool_id, const TokenId& input_token,
                      const Rat& delta_in) {
    SwapResult r = apply_swap(market.pool_at(pool_id), input_token, delta_in);
    Market next = market;
    next.replace_pool(r.pool);
    return {std::move(next), std::move(r.amount_out)};
}

LiquidityAdd add_liquidity(const Market& market, std::string_view provider,
                           std::string_view pool_id, const Rat& delta0,
                           const std::optional<Rat>& delta1_for_seed, int seed_round_digits) {
    const Pool& pool = market.pool_at(pool_id);
    if (delta0 <= 0) fail(Errc::zero_deposit, "deposit must be strictly positive");

    Pool next = pool;
    Rat minted;
    Rat delta1;
    if (pool.lp_supply == 0) {
        if (!delta1_for_seed || *delta1_for_seed <= 0) {
            fail(Errc::zero_deposit, "first deposit must supply both tokens");
        }
        delta1 = *delta1_for_seed;
        Rat product = delta0 * delta1;
        if (auto root = exact_sqrt(product)) {
            minted = *root;
        } else {
            minted = rounded_sqrt(product, seed_round_digits);
        }
    } else {
        if (pool.is_empty()) fail(Errc::empty_pool, "pool '" + pool.id + "' has no reserves");
        delta1 = delta0 * pool.reserve1 / pool.reserve0;
        minted = pool.lp_supply * delta0 / pool.reserve0;
    }
    next.reserve0 += delta0;
    next.reserve1 += delta1;
    next.lp_supply += minted;

    Market out = market;
    out.replace_pool(next);
    out.set_lp_balance(provider, pool_id, out.lp_balance(provider, pool_id) + minted);
    return {std::move(out), std::move(minted), delta0, std::move(delta1)};
}

LiquidityRemoval remove_liquidity(const Market& market, std::string_view provider,
                                  std::string_view pool_id, const Rat& delta_c) {
    const Pool& pool = market.pool_at(pool_id);
    if (delta_c <= 0) fail(Errc::zero_amount, "lp amount must be strictly positive");
    Rat balance = market.lp_balance(provider, pool_id);
    if (balance < delta_c) {
        fail(Errc::insufficient_lp_balance,
             "provider '" + std::string(provider) + "' holds " + balance.get_str() +
                 " lp of pool '" + std::string(pool_id) + "'");
    }

    Rat out0 = pool.reserve0 * delta_c / pool.lp_supply;
    Rat out1 = pool.reserve1 * delta_c / pool.lp_supply;

    Pool next = pool;
    next.reserve0 -= out0;
    next.reserve1 -= out1;
    next.lp_supply -= delta_c;

    Market out = market;
    out.replace_pool(next);
    out.set_lp_balance(provider, pool_id, balance - delta_c);
    return {std::move(out), std::move(out0), std::move(out1)};
}

Market with_uniform_fees(const Market& market, const FeeParams& fees) {
    validate_fees(fees);
    Market next = market;
    for (const Pool& pool : market.pools()) {
        Pool updated = pool;
        updated.fees = fees;
        next.replace_pool(updated);
    }
    return next;
}

}  // namespace ringarb
