#pragma once

#include <vector>

#include "ringarb/amm.hpp"

namespace ringarb {

struct SwapLeg {
    std::string pool_id;
    TokenId input_token;

    friend bool operator==(const SwapLeg&, const SwapLeg&) = default;
};

// An ordered multi-hop route. Legs must chain (each leg's output token is
// the next leg's input token) and no pool may appear twice: the fold below
// assumes every pool's reserves stay fixed while the route is priced.
struct TradePath {
    std::vector<SwapLeg> legs;

    friend bool operator==(const TradePath&, const TradePath&) = default;
};

// Single-pool equivalent of a route: swapping on it applies the fee pair
// once and reproduces the sequential output exactly, for every input.
struct VirtualPool {
    Rat reserve_in;
    Rat reserve_out;
    FeeParams fees;

    friend bool operator==(const VirtualPool&, const VirtualPool&) = default;
};

VirtualPool as_virtual(const Pool& pool, const TokenId& input_token);

// Two chained hops folded into one:
//   x_v = x1*y2 / (y2 + r1*r2*y1)
//   z_v = r1*r2*y1*z2 / (y2 + r1*r2*y1)
// Requires the first hop's output token to be the second hop's input token
// and identical fee parameters on both pools.
VirtualPool compose_pair(const Pool& first, const TokenId& first_input, const Pool& second,
                         const TokenId& second_input);

// Same fold on already-virtual pools. Token chaining is the caller's
// responsibility here; fee equality is still enforced.
VirtualPool compose_pair(const VirtualPool& first, const VirtualPool& second);

// Validates the path against the market (pools exist, legs chain, pools are
// distinct, fees uniform) and left-folds compose_pair. A length-1 path is
// the pool itself viewed as a virtual pool.
VirtualPool compose_path(const TradePath& path, const Market& market);

// out = r1*r2*reserve_out*d / (reserve_in + r1*d)
Rat virtual_swap_output(const VirtualPool& vp, const Rat& delta_in);

// Throws if the path is not executable in the market. `require_uniform_fees`
// is on for everything that composes.
void validate_path(const TradePath& path, const Market& market, bool require_uniform_fees = true);

TokenId path_output_token(const TradePath& path, const Market& market);

// Sequential leg-by-leg pricing; the independent route against which the
// virtual pool must agree exactly.
Rat sequential_output(const TradePath& path, const Market& market, const Rat& delta_in);

}  // namespace ringarb
