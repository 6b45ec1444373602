#pragma once

#include <random>
#include <string>
#include <vector>

#include "ringarb/cycle.hpp"

namespace ringarb::testing {

inline TokenId tok(const char* s) { return TokenId(s); }

// two-argument Rat literals must be canonical; this helper always is
inline Rat frac(long num, long den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Pool make_pool(std::string id, const char* t0, const char* t1, Rat r0, Rat r1,
                      FeeParams fees = FeeParams::from_ppm(997000, 1000000)) {
    Pool p;
    p.id = std::move(id);
    p.token0 = TokenId(t0);
    p.token1 = TokenId(t1);
    p.reserve0 = std::move(r0);
    p.reserve1 = std::move(r1);
    p.fees = fees;
    return p;
}

// Three-token triangle with index 6/5 on the X->Y->Z->X orientation.
inline Market i65_market(FeeParams fees = FeeParams::from_ppm(997000, 1000000)) {
    Market m;
    m.insert_pool(make_pool("XY", "X", "Y", Rat(100), Rat(200), fees));
    m.insert_pool(make_pool("YZ", "Y", "Z", Rat(200), Rat(100), fees));
    m.insert_pool(make_pool("ZX", "Z", "X", Rat(100), Rat(120), fees));
    return m;
}

inline Cycle i65_cycle(const Market& m) {
    return make_cycle(m, {"XY", "YZ", "ZX"}, tok("X"));
}

inline Market balanced_market(FeeParams fees = FeeParams::from_ppm(997000, 1000000)) {
    Market m;
    m.insert_pool(make_pool("XY", "X", "Y", Rat(100), Rat(100), fees));
    m.insert_pool(make_pool("YZ", "Y", "Z", Rat(100), Rat(100), fees));
    m.insert_pool(make_pool("ZX", "Z", "X", Rat(100), Rat(100), fees));
    return m;
}

// Positive rational with numerator/denominator drawn from [1, max].
inline Rat random_rat(std::mt19937_64& rng, long max_num = 1000000, long max_den = 1000) {
    std::uniform_int_distribution<long> num(1, max_num);
    std::uniform_int_distribution<long> den(1, max_den);
    Rat q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

inline FeeParams random_fees(std::mt19937_64& rng) {
    // r1 in [0.9, 1], r2 in [0.99, 1], both rational
    std::uniform_int_distribution<long> ppm1(900000, 1000000);
    std::uniform_int_distribution<long> ppm2(990000, 1000000);
    return FeeParams::from_ppm(ppm1(rng), ppm2(rng));
}

// Random chained pools A0 -> A1 -> ... -> An with shared fees.
inline Market random_path_market(std::mt19937_64& rng, int hops, FeeParams fees,
                                 std::vector<std::string>* pool_ids = nullptr) {
    Market m;
    for (int i = 0; i < hops; ++i) {
        std::string a = "T" + std::to_string(i);
        std::string b = "T" + std::to_string(i + 1);
        std::string id = "P" + std::to_string(i);
        m.insert_pool(make_pool(id, a.c_str(), b.c_str(), random_rat(rng), random_rat(rng), fees));
        if (pool_ids) pool_ids->push_back(id);
    }
    return m;
}

// Random ring of `hops` pools over tokens T0..T(hops-1), uniform fees.
inline Market random_cycle_market(std::mt19937_64& rng, int hops, FeeParams fees) {
    Market m;
    for (int i = 0; i < hops; ++i) {
        std::string a = "T" + std::to_string(i);
        std::string b = "T" + std::to_string((i + 1) % hops);
        std::string id = "P" + std::to_string(i);
        if (i + 1 == hops && hops == 2) {
            // a two-pool ring lives on one pair
            m.insert_pool(make_pool(id, a.c_str(), b.c_str(), random_rat(rng), random_rat(rng),
                                    fees),
                          true);
        } else {
            m.insert_pool(
                make_pool(id, a.c_str(), b.c_str(), random_rat(rng), random_rat(rng), fees));
        }
    }
    return m;
}

inline Cycle ring_cycle(const Market& m, int hops) {
    std::vector<std::string> ids;
    for (int i = 0; i < hops; ++i) ids.push_back("P" + std::to_string(i));
    return make_cycle(m, ids, tok("T0"));
}

}  // namespace ringarb::testing
