#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "ringarb/compose.hpp"

using namespace ringarb;
using namespace ringarb::testing;

TEST_CASE("compose_pair folds two hops into one pool") {
    FeeParams nofee{};
    Pool p1 = make_pool("AB", "A", "B", Rat(100), Rat(200), nofee);
    Pool p2 = make_pool("BC", "B", "C", Rat(400), Rat(50), nofee);

    auto vp = compose_pair(p1, tok("A"), p2, tok("B"));
    CHECK(vp.reserve_in == Rat(200, 3));
    CHECK(vp.reserve_out == Rat(50, 3));

    FeeParams uni = FeeParams::from_ppm(997000, 1000000);
    Pool q1 = make_pool("AB", "A", "B", Rat(100), Rat(200), uni);
    Pool q2 = make_pool("BC", "B", "C", Rat(400), Rat(50), uni);
    auto vq = compose_pair(q1, tok("A"), q2, tok("B"));
    CHECK(vq.reserve_in == Rat(200000, 2997));
    CHECK(vq.reserve_out == Rat(49850, 2997));

    try {
        compose_pair(p1, tok("A"), p2, tok("C"));
        FAIL("expected token_mismatch");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::token_mismatch);
    }
    Pool mixed = make_pool("BC", "B", "C", Rat(400), Rat(50), uni);
    try {
        compose_pair(p1, tok("A"), mixed, tok("B"));
        FAIL("expected fee_mismatch");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::fee_mismatch);
    }
}

TEST_CASE("virtual_swap_output single-pool form") {
    VirtualPool vp{Rat(200, 3), Rat(50, 3), FeeParams{}};
    CHECK(virtual_swap_output(vp, Rat(0)) == 0);
    CHECK(virtual_swap_output(vp, Rat(10)) == Rat(50, 23));
}

TEST_CASE("compose_path identity fold and base case") {
    Market m = i65_market();
    TradePath single{{{"XY", tok("X")}}};
    auto vp = compose_path(single, m);
    CHECK(vp.reserve_in == 100);
    CHECK(vp.reserve_out == 200);

    TradePath two{{{"XY", tok("X")}, {"YZ", tok("Y")}}};
    auto folded = compose_path(two, m);
    auto paired = compose_pair(m.pool_at("XY"), tok("X"), m.pool_at("YZ"), tok("Y"));
    CHECK(folded == paired);
}

TEST_CASE("three-hop composition has the closed denominator form") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 50; ++i) {
        FeeParams fees = random_fees(rng);
        Market m = random_cycle_market(rng, 3, fees);
        Cycle cycle = ring_cycle(m, 3);
        auto vp = compose_path(cycle.path, m);

        Rat x1 = m.pool_at("P0").reserve0, y1 = m.pool_at("P0").reserve1;
        Rat y2 = m.pool_at("P1").reserve0, z2 = m.pool_at("P1").reserve1;
        Rat z3 = m.pool_at("P2").reserve0, x3 = m.pool_at("P2").reserve1;
        Rat rr = fees.r1 * fees.r2;
        Rat denom = y2 * z3 + rr * y1 * z3 + rr * rr * y1 * z2;
        CHECK(vp.reserve_in == x1 * y2 * z3 / denom);
        CHECK(vp.reserve_out == rr * rr * y1 * z2 * x3 / denom);
    }
}

TEST_CASE("virtual pool output equals the sequential swaps exactly") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 200; ++i) {
        FeeParams fees = random_fees(rng);
        int hops = 2 + static_cast<int>(rng() % 4);  // 2..5
        std::vector<std::string> ids;
        Market m = random_path_market(rng, hops, fees, &ids);
        TradePath path;
        for (int h = 0; h < hops; ++h) {
            path.legs.push_back({ids[static_cast<std::size_t>(h)],
                                 tok(("T" + std::to_string(h)).c_str())});
        }
        auto vp = compose_path(path, m);
        for (int s = 0; s < 3; ++s) {
            Rat delta = random_rat(rng);
            CHECK(virtual_swap_output(vp, delta) == sequential_output(path, m, delta));
        }
    }
}

TEST_CASE("pair folding is associative") {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 50; ++i) {
        FeeParams fees = random_fees(rng);
        std::vector<std::string> ids;
        Market m = random_path_market(rng, 3, fees, &ids);
        auto a = as_virtual(m.pool_at("P0"), tok("T0"));
        auto b = as_virtual(m.pool_at("P1"), tok("T1"));
        auto c = as_virtual(m.pool_at("P2"), tok("T2"));
        TradePath path{{{"P0", tok("T0")}, {"P1", tok("T1")}, {"P2", tok("T2")}}};
        CHECK(compose_pair(compose_pair(a, b), c) == compose_path(path, m));
    }
}

TEST_CASE("composed reserves stay positive") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 100; ++i) {
        FeeParams fees = random_fees(rng);
        int hops = 2 + static_cast<int>(rng() % 4);
        std::vector<std::string> ids;
        Market m = random_path_market(rng, hops, fees, &ids);
        TradePath path;
        for (int h = 0; h < hops; ++h) {
            path.legs.push_back({ids[static_cast<std::size_t>(h)],
                                 tok(("T" + std::to_string(h)).c_str())});
        }
        auto vp = compose_path(path, m);
        CHECK(vp.reserve_in > 0);
        CHECK(vp.reserve_out > 0);
    }
}

TEST_CASE("path validation rejects bad routes") {
    Market m = i65_market();
    TradePath revisits{{{"XY", tok("X")}, {"YZ", tok("Y")}, {"ZX", tok("Z")}, {"XY", tok("X")}}};
    CHECK_THROWS_AS(validate_path(revisits, m), Error);

    TradePath broken{{{"XY", tok("X")}, {"ZX", tok("Z")}}};
    CHECK_THROWS_AS(validate_path(broken, m), Error);

    TradePath unknown{{{"QQ", tok("X")}}};
    CHECK_THROWS_AS(validate_path(unknown, m), Error);

    Market mixed = i65_market();
    Pool zx = mixed.pool_at("ZX");
    zx.fees = FeeParams::from_ppm(990000, 1000000);
    mixed.replace_pool(zx);
    TradePath full{{{"XY", tok("X")}, {"YZ", tok("Y")}, {"ZX", tok("Z")}}};
    CHECK_THROWS_AS(compose_path(full, mixed), Error);
    CHECK_NOTHROW(validate_path(full, mixed, /*require_uniform_fees=*/false));
}
