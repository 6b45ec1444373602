#include "ringarb/errors.hpp"

namespace ringarb {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::identical_tokens: return "IdenticalTokens";
        case Errc::duplicate_pair: return "DuplicatePair";
        case Errc::duplicate_pool_id: return "DuplicatePoolId";
        case Errc::unknown_token: return "UnknownToken";
        case Errc::unknown_pool: return "UnknownPool";
        case Errc::empty_pool: return "EmptyPool";
        case Errc::zero_amount: return "ZeroAmount";
        case Errc::negative_amount: return "NegativeAmount";
        case Errc::zero_deposit: return "ZeroDeposit";
        case Errc::insufficient_lp_balance: return "InsufficientLpBalance";
        case Errc::token_mismatch: return "TokenMismatch";
        case Errc::fee_mismatch: return "FeeMismatch";
        case Errc::invalid_cycle: return "InvalidCycle";
        case Errc::not_profitable: return "NotProfitable";
        case Errc::invalid_fee: return "InvalidFee";
        case Errc::invalid_ratio: return "InvalidRatio";
        case Errc::no_arbitrage_direction: return "NoArbitrageDirection";
        case Errc::bad_input: return "BadInput";
    }
    return "Error";
}

}  // namespace ringarb
