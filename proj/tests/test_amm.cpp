#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "ringarb/amm.hpp"

using namespace ringarb;
using namespace ringarb::testing;

namespace {

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Errc::bad_input;
}

}  // namespace

TEST_CASE("create_pool registers an empty pool and updates adjacency") {
    Market empty;
    auto fees = FeeParams::from_ppm(997000, 1000000);
    auto created = create_pool(empty, tok("A"), tok("B"), fees);
    const Market& m = created.market;
    CHECK(m.size() == 1);
    const Pool& p = m.pool_at(created.pool_id);
    CHECK(p.reserve0 == 0);
    CHECK(p.reserve1 == 0);
    CHECK(m.pools_with_token(tok("A")) == std::vector<std::string>{created.pool_id});
    CHECK(m.pools_with_token(tok("B")) == std::vector<std::string>{created.pool_id});

    CHECK(code_of([&] { create_pool(m, tok("A"), tok("B"), fees); }) == Errc::duplicate_pair);
    CHECK(code_of([&] { create_pool(m, tok("B"), tok("A"), fees); }) == Errc::duplicate_pair);
    CHECK(code_of([&] { create_pool(m, tok("A"), tok("A"), fees); }) == Errc::identical_tokens);
}

TEST_CASE("swap_output evaluates the closed form exactly") {
    Pool p = make_pool("AB", "A", "B", Rat(1000), Rat(1000));
    CHECK(swap_output(p, tok("A"), Rat(100)) == Rat(997000, 10997));
    CHECK(swap_output(p, tok("A"), Rat(0)) == 0);
    CHECK(code_of([&] { swap_output(p, tok("C"), Rat(1)); }) == Errc::unknown_token);

    Pool empty = make_pool("CD", "C", "D", Rat(0), Rat(0));
    CHECK(code_of([&] { swap_output(empty, tok("C"), Rat(1)); }) == Errc::empty_pool);
}

TEST_CASE("input fee retains three per mille") {
    // delta = 1000 at r1 = 0.997: exactly 997 of the input acts on the curve,
    // so the post-trade invariant holds with X + 997.
    Pool p = make_pool("AB", "A", "B", Rat(5000), Rat(3000));
    Rat out = swap_output(p, tok("A"), Rat(1000));
    CHECK(out == Rat(997, 1) * 3000 / (5000 + 997));
    auto r = apply_swap(p, tok("A"), Rat(1000));
    CHECK(r.pool.reserve0 == 6000);  // full input lands in reserves
    CHECK(p.reserve0 * p.reserve1 == (p.reserve0 + Rat(997)) * (r.pool.reserve1));
}

TEST_CASE("apply_swap moves reserves and keeps the invariant") {
    Pool p = make_pool("AB", "A", "B", Rat(1000), Rat(1000));
    auto r = apply_swap(p, tok("A"), Rat(100));
    CHECK(r.pool.reserve0 == 1100);
    CHECK(r.pool.reserve1 == Rat(1000) - Rat(997000, 10997));
    CHECK(r.amount_out == Rat(997000, 10997));
    CHECK(r.pool.lp_supply == p.lp_supply);

    Pool nofee = make_pool("CD", "C", "D", Rat(100), Rat(100), FeeParams{});
    auto s = apply_swap(nofee, tok("C"), Rat(100));
    CHECK(s.pool.reserve0 == 200);
    CHECK(s.pool.reserve1 == 50);
    CHECK(s.pool.reserve0 * s.pool.reserve1 == Rat(100) * Rat(100));

    CHECK(code_of([&] { apply_swap(p, tok("A"), Rat(0)); }) == Errc::zero_amount);
}

TEST_CASE("constant-product identity holds exactly on random swaps") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 500; ++i) {
        FeeParams fees = random_fees(rng);
        Pool p = make_pool("AB", "A", "B", random_rat(rng), random_rat(rng), fees);
        Rat delta = random_rat(rng);
        TokenId input = (i % 2 == 0) ? tok("A") : tok("B");
        auto r = apply_swap(p, input, delta);
        const Rat& x = p.reserve_of(input);
        const Rat& y = p.reserve_opposite(input);
        const Rat& y_post = r.pool.reserve_opposite(input);
        Rat received = y - y_post;
        CHECK(x * y == (x + fees.r1 * delta) * (y - received / fees.r2));
        // with r1 < 1 the raw reserve product strictly grows
        Rat pre = p.reserve0 * p.reserve1;
        Rat post = r.pool.reserve0 * r.pool.reserve1;
        if (fees.r1 * fees.r2 < 1) {
            CHECK(post > pre);
        } else {
            CHECK(post == pre);
        }
    }
}

TEST_CASE("swap identity written with the received amount") {
    // X*Y == (X + r1*d) * (Y - out/r2) with out the amount the trader got
    std::mt19937_64 rng(18);
    for (int i = 0; i < 200; ++i) {
        FeeParams fees = random_fees(rng);
        Pool p = make_pool("AB", "A", "B", random_rat(rng), random_rat(rng), fees);
        Rat delta = random_rat(rng);
        Rat out = swap_output(p, tok("A"), delta);
        CHECK(p.reserve0 * p.reserve1 ==
              (p.reserve0 + fees.r1 * delta) * (p.reserve1 - out / fees.r2));
        CHECK(out < p.reserve1);
    }
}

TEST_CASE("swap_output is strictly increasing and concave in the input") {
    Pool p = make_pool("AB", "A", "B", Rat(1000), Rat(700));
    std::mt19937_64 rng(19);
    for (int i = 0; i < 100; ++i) {
        Rat a = random_rat(rng);
        Rat b = random_rat(rng);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        Rat fa = swap_output(p, tok("A"), a);
        Rat fb = swap_output(p, tok("A"), b);
        CHECK(fa < fb);
        Rat mid = swap_output(p, tok("A"), (a + b) / 2);
        CHECK(mid > (fa + fb) / 2);
    }
}

TEST_CASE("liquidity: proportional mint and withdrawal") {
    Market m;
    m.insert_pool(make_pool("AB", "A", "B", Rat(100), Rat(400)));
    {
        Pool seeded = m.pool_at("AB");
        seeded.lp_supply = Rat(50);
        m.replace_pool(seeded);
        m.set_lp_balance("alice", "AB", Rat(50));
    }

    auto added = add_liquidity(m, "bob", "AB", Rat(10));
    CHECK(added.deposit1 == 40);
    CHECK(added.minted == 5);
    const Pool& p = added.market.pool_at("AB");
    CHECK(p.lp_supply == 55);
    CHECK(p.reserve0 == 110);
    CHECK(p.reserve1 == 440);
    CHECK(p.reserve1 / p.reserve0 == 4);  // ratio preserved

    auto removed = remove_liquidity(added.market, "bob", "AB", Rat(5));
    CHECK(removed.out0 == 10);
    CHECK(removed.out1 == 40);
    CHECK(removed.market.pool_at("AB").lp_supply == 50);
    CHECK(removed.market.lp_balance("bob", "AB") == 0);

    CHECK(code_of([&] { add_liquidity(m, "bob", "AB", Rat(0)); }) == Errc::zero_deposit);
    CHECK(code_of([&] { remove_liquidity(added.market, "bob", "AB", Rat(6)); }) ==
          Errc::insufficient_lp_balance);
    CHECK(code_of([&] { add_liquidity(m, "bob", "nope", Rat(1)); }) == Errc::unknown_pool);
}

TEST_CASE("first deposit mints the geometric mean") {
    Market m;
    m.insert_pool(make_pool("AB", "A", "B", Rat(0), Rat(0)));
    auto seeded = add_liquidity(m, "alice", "AB", Rat(9), Rat(4));
    CHECK(seeded.minted == 6);
    CHECK(seeded.market.pool_at("AB").lp_supply == 6);
    CHECK(seeded.market.lp_balance("alice", "AB") == 6);

    // non-square product rounds deterministically
    Market m2;
    m2.insert_pool(make_pool("CD", "C", "D", Rat(0), Rat(0)));
    auto s2 = add_liquidity(m2, "alice", "CD", Rat(2), Rat(1));
    CHECK(s2.minted == rounded_sqrt(Rat(2), 9));

    CHECK(code_of([&] { add_liquidity(m, "alice", "AB", Rat(9)); }) == Errc::zero_deposit);
}

TEST_CASE("sole provider redeems the full reserves") {
    Market m;
    m.insert_pool(make_pool("AB", "A", "B", Rat(0), Rat(0)));
    auto seeded = add_liquidity(m, "solo", "AB", Rat(9), Rat(4));
    auto removed = remove_liquidity(seeded.market, "solo", "AB", seeded.minted);
    CHECK(removed.out0 == 9);
    CHECK(removed.out1 == 4);
    const Pool& p = removed.market.pool_at("AB");
    CHECK(p.reserve0 == 0);
    CHECK(p.reserve1 == 0);
    CHECK(p.lp_supply == 0);
}

TEST_CASE("add then remove returns the deposit exactly") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        Market m;
        m.insert_pool(make_pool("AB", "A", "B", Rat(0), Rat(0)));
        auto seeded = add_liquidity(m, "alice", "AB", random_rat(rng), random_rat(rng));
        Rat deposit = random_rat(rng);
        auto added = add_liquidity(seeded.market, "bob", "AB", deposit);
        auto removed = remove_liquidity(added.market, "bob", "AB", added.minted);
        CHECK(removed.out0 == deposit);
        CHECK(removed.out1 == added.deposit1);
    }
}

TEST_CASE("fee accrual is shared in proportion to lp holdings") {
    Market m;
    m.insert_pool(make_pool("AB", "A", "B", Rat(0), Rat(0)));
    auto a = add_liquidity(m, "alice", "AB", Rat(90), Rat(40));
    auto b = add_liquidity(a.market, "bob", "AB", Rat(45));
    Market market = b.market;
    CHECK(a.minted == 2 * b.minted);

    // accrue fees through a few swaps
    for (int i = 0; i < 3; ++i) {
        market = apply_swap(market, "AB", tok("A"), Rat(7)).market;
        market = apply_swap(market, "AB", tok("B"), Rat(3)).market;
    }

    auto wa = remove_liquidity(market, "alice", "AB", a.minted);
    auto wb = remove_liquidity(wa.market, "bob", "AB", b.minted);
    CHECK(wa.out0 == 2 * wb.out0);
    CHECK(wa.out1 == 2 * wb.out1);
}

TEST_CASE("lp balances never exceed the pool supply") {
    std::mt19937_64 rng(131);
    Market m;
    m.insert_pool(make_pool("AB", "A", "B", Rat(0), Rat(0)));
    m = add_liquidity(m, "p0", "AB", random_rat(rng), random_rat(rng)).market;
    std::vector<std::string> providers = {"p0", "p1", "p2"};
    for (int step = 0; step < 60; ++step) {
        const std::string& who = providers[rng() % providers.size()];
        switch (rng() % 3) {
            case 0:
                m = add_liquidity(m, who, "AB", random_rat(rng, 1000, 10)).market;
                break;
            case 1: {
                Rat balance = m.lp_balance(who, "AB");
                if (balance > 0) m = remove_liquidity(m, who, "AB", balance / 2).market;
                break;
            }
            default:
                m = apply_swap(m, "AB", (rng() % 2 == 0) ? tok("A") : tok("B"),
                               random_rat(rng, 100, 10))
                        .market;
        }
        Rat sum(0);
        for (const auto& [key, amount] : m.lp_balances()) sum += amount;
        CHECK(sum <= m.pool_at("AB").lp_supply);
    }
}

TEST_CASE("spot_rate is the reserve ratio") {
    Pool p = make_pool("AB", "A", "B", Rat(100), Rat(400));
    CHECK(spot_rate(p, tok("A")) == 4);
    CHECK(spot_rate(p, tok("B")) == Rat(1, 4));
    Pool balanced = make_pool("CD", "C", "D", Rat(55), Rat(55));
    CHECK(spot_rate(balanced, tok("C")) == 1);
    Pool empty = make_pool("EF", "E", "F", Rat(0), Rat(0));
    CHECK(code_of([&] { spot_rate(empty, tok("E")); }) == Errc::empty_pool);
}
