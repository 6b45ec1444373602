#pragma once

#include <stdexcept>
#include <string>

namespace ringarb {

enum class Errc {
    identical_tokens,
    duplicate_pair,
    duplicate_pool_id,
    unknown_token,
    unknown_pool,
    empty_pool,
    zero_amount,
    negative_amount,
    zero_deposit,
    insufficient_lp_balance,
    token_mismatch,
    fee_mismatch,
    invalid_cycle,
    not_profitable,
    invalid_fee,
    invalid_ratio,
    no_arbitrage_direction,
    bad_input,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& detail) { throw Error(code, detail); }

}  // namespace ringarb
