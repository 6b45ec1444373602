#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ringarb/errors.hpp"
#include "ringarb/rational.hpp"

namespace ringarb {

struct TokenId {
    std::string symbol;

    TokenId() = default;
    explicit TokenId(std::string s) : symbol(std::move(s)) {}

    friend auto operator<=>(const TokenId&, const TokenId&) = default;
};

// Retained fractions: r1 on the input side, r2 on the output side.
// r1 = 0.997, r2 = 1 is the canonical 3-per-mille input fee.
struct FeeParams {
    Rat r1{1};
    Rat r2{1};

    static FeeParams from_ppm(long in_ppm, long out_ppm);
    long r1_ppm() const;
    long r2_ppm() const;

    friend bool operator==(const FeeParams&, const FeeParams&) = default;
};

void validate_fees(const FeeParams& fees);

struct Pool {
    std::string id;
    TokenId token0;
    TokenId token1;
    Rat reserve0{0};
    Rat reserve1{0};
    FeeParams fees;
    Rat lp_supply{0};

    bool has_token(const TokenId& t) const { return t == token0 || t == token1; }
    bool is_empty() const { return reserve0 == 0 || reserve1 == 0; }
    const Rat& reserve_of(const TokenId& t) const;
    const Rat& reserve_opposite(const TokenId& t) const;
    TokenId other_token(const TokenId& t) const;

    friend bool operator==(const Pool&, const Pool&) = default;
};

// Pool registry plus token adjacency and LP-token balances. A value type:
// the state-changing operations below return updated copies, so any number
// of readers can share one snapshot.
class Market {
public:
    const std::vector<Pool>& pools() const { return pools_; }
    std::size_t size() const { return pools_.size(); }

    const Pool* find_pool(std::string_view id) const;
    const Pool& pool_at(std::string_view id) const;  // throws unknown_pool

    // Pool ids touching `token`, sorted.
    const std::vector<std::string>& pools_with_token(const TokenId& token) const;
    std::vector<TokenId> tokens() const;
    bool has_pair(const TokenId& a, const TokenId& b) const;

    // Registers a pool directly. create_pool enforces the one-pool-per-pair
    // factory convention; market files may carry parallel pools for the same
    // pair (e.g. the same pair listed on two venues), which is what
    // allow_parallel_pair admits.
    void insert_pool(Pool pool, bool allow_parallel_pair = false);
    void replace_pool(const Pool& pool);  // same id, new reserves/supply

    Rat lp_balance(std::string_view provider, std::string_view pool_id) const;
    void set_lp_balance(std::string_view provider, std::string_view pool_id, Rat amount);
    const std::map<std::pair<std::string, std::string>, Rat>& lp_balances() const {
        return lp_balances_;
    }

    friend bool operator==(const Market&, const Market&) = default;

private:
    std::vector<Pool> pools_;
    std::unordered_map<std::string, std::size_t> index_;
    std::map<TokenId, std::vector<std::string>> adjacency_;
    std::map<std::pair<std::string, std::string>, Rat> lp_balances_;
};

// ---- pure queries ------------------------------------------------------

// Output of swapping `delta_in` of `input_token` against the pool:
//   out = r1*r2*Y*d / (X + r1*d)
// Pure; the pool is unchanged. delta_in = 0 is a legal query and yields 0.
Rat swap_output(const Pool& pool, const TokenId& input_token, const Rat& delta_in);

// Marginal pre-fee rate: output reserve over input reserve.
Rat spot_rate(const Pool& pool, const TokenId& input_token);

// Swap math on raw reserves, shared with the float search path.
template <class T>
T cp_swap_output(const T& reserve_in, const T& reserve_out, const T& r1, const T& r2,
                 const T& delta_in) {
    return r1 * r2 * reserve_out * delta_in / (reserve_in + r1 * delta_in);
}

// ---- state transitions -------------------------------------------------

struct PoolCreation {
    Market market;
    std::string pool_id;
};

// New empty pool for the unordered pair. Rejects identical tokens and
// duplicate pairs. The id defaults to "<token0>-<token1>".
PoolCreation create_pool(const Market& market, const TokenId& token0, const TokenId& token1,
                         const FeeParams& fees, std::string id = {});

struct SwapResult {
    Pool pool;
    Rat amount_out;
};

// Applies the swap: reserves move to (X + d, Y - out). The constant-product
// identity X*Y = (X + r1*d)*(Y - out/r2) holds exactly. delta_in must be
// strictly positive (zero swaps are rejected as no-op state transitions).
SwapResult apply_swap(const Pool& pool, const TokenId& input_token, const Rat& delta_in);

struct MarketSwap {
    Market market;
    Rat amount_out;
};

MarketSwap apply_swap(const Market& market, std::string_view pool_id, const TokenId& input_token,
                      const Rat& delta_in);

struct LiquidityAdd {
    Market market;
    Rat minted;
    Rat deposit0;
    Rat deposit1;
};

// Deposits delta0 of token0 plus the ratio-matching amount of token1 and
// mints lp tokens pro rata (minted = supply * delta0 / reserve0.)
//
// The very first deposit has no ratio to match: both amounts must be given
// (`delta1_for_seed`) and the initial mint is the geometric mean of the
// deposits — exact when the product is a perfect square, otherwise rounded
// to `seed_round_digits` fractional digits.
LiquidityAdd add_liquidity(const Market& market, std::string_view provider,
                           std::string_view pool_id, const Rat& delta0,
                           const std::optional<Rat>& delta1_for_seed = std::nullopt,
                           int seed_round_digits = 9);

struct LiquidityRemoval {
    Market market;
    Rat out0;
    Rat out1;
};

// Burns delta_c lp tokens and withdraws reserves proportionally:
// out0/reserve0 = out1/reserve1 = delta_c/lp_supply, all exact.
LiquidityRemoval remove_liquidity(const Market& market, std::string_view provider,
                                  std::string_view pool_id, const Rat& delta_c);

// Same pools, every fee schedule replaced. Used by fee-policy sweeps.
Market with_uniform_fees(const Market& market, const FeeParams& fees);

}  // namespace ringarb

template <>
struct std::hash<ringarb::TokenId> {
    std::size_t operator()(const ringarb::TokenId& t) const noexcept {
        return std::hash<std::string>{}(t.symbol);
    }
};
