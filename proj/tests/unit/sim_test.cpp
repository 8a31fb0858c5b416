#include "doctest.h"

#include <random>

#include "../support/oracles.hpp"
#include "../support/props.hpp"
#include "tokenaudit/sim.hpp"

using namespace tokenaudit::sim;

namespace {

const Address kOwner{2}, kAlice{3}, kSpender{4}, kBob{5};

World funded(Variant v) {
    World w = make_world(v);
    w.token.owner = kOwner;
    for (std::uint32_t id = 2; id <= 6; ++id) w.fund(Address{id}, 1000);
    return w;
}

}  // namespace

TEST_CASE("arithmetic modes") {
    const U256 max = ~U256(0);
    CHECK(add(max, 1, ArithMode::Wrapping) == 0);
    CHECK_THROWS_AS(add(max, 1, ArithMode::Checked), SimError);
    CHECK(sub(0, 1, ArithMode::Wrapping) == max);
    CHECK(mul(2, pow2(255), ArithMode::Wrapping) == 0);
    try {
        mul(2, pow2(255), ArithMode::Checked);
        FAIL("expected overflow");
    } catch (const SimError& e) {
        CHECK(e.kind() == ErrorKind::Overflow);
    }
    CHECK(mul(3, 5, ArithMode::Checked) == 15);
}

TEST_CASE("variant parsing") {
    CHECK(parse_variant("secure") == Variant::Secure);
    CHECK(parse_variant("insecure") == Variant::InsecureLegacy);
    CHECK(parse_variant("insecure-legacy") == Variant::InsecureLegacy);
    CHECK_FALSE(parse_variant("other").has_value());
    CHECK_THROWS_AS(run_scenario("nope", Variant::Secure), UnknownScenario);
}

TEST_CASE("transfer, approve and tracked transferFrom") {
    World w = funded(Variant::Secure);
    REQUIRE(step(w, {kOwner, Action::mint(kOwner, 100)}).ok);
    REQUIRE(step(w, {kOwner, Action::transfer(kAlice, 30)}).ok);
    CHECK(w.token.balance_of(kAlice) == 30);
    CHECK_FALSE(step(w, {kOwner, Action::transfer(kZero, 1)}).ok);

    REQUIRE(step(w, {kOwner, Action::approve(kSpender, 40)}).ok);
    REQUIRE(step(w, {kSpender, Action::transfer_from(kOwner, kBob, 25)}).ok);
    // Allowance stays; the spent amount is tracked.
    CHECK(w.token.allowance(kOwner, kSpender) == 40);
    CHECK(w.token.transferred_of(kOwner, kSpender) == 25);
    CHECK(w.token.spendable(kOwner, kSpender) == 15);
    CHECK_FALSE(step(w, {kSpender, Action::transfer_from(kOwner, kBob, 16)}).ok);
    // Lowering the allowance below what was spent leaves nothing.
    REQUIRE(step(w, {kOwner, Action::approve(kSpender, 10)}).ok);
    CHECK(w.token.spendable(kOwner, kSpender) == 0);
}

TEST_CASE("legacy transferFrom decrements the allowance") {
    World w = funded(Variant::InsecureLegacy);
    REQUIRE(step(w, {kOwner, Action::mint(kOwner, 100)}).ok);
    REQUIRE(step(w, {kOwner, Action::approve(kSpender, 40)}).ok);
    REQUIRE(step(w, {kSpender, Action::transfer_from(kOwner, kBob, 25)}).ok);
    CHECK(w.token.allowance(kOwner, kSpender) == 15);
}

TEST_CASE("pause gates transfers but not unpause") {
    World w = funded(Variant::Secure);
    REQUIRE(step(w, {kOwner, Action::mint(kAlice, 10)}).ok);
    CHECK_FALSE(step(w, {kAlice, Action::pause()}).ok);
    REQUIRE(step(w, {kOwner, Action::pause()}).ok);
    StepResult r = step(w, {kAlice, Action::transfer(kBob, 1)});
    CHECK_FALSE(r.ok);
    CHECK(r.error == ErrorKind::Revert);
    REQUIRE(step(w, {kOwner, Action::unpause()}).ok);
    CHECK(step(w, {kAlice, Action::transfer(kBob, 1)}).ok);
}

TEST_CASE("buy, sell and withdraw move ether") {
    World w = funded(Variant::Secure);
    REQUIRE(step(w, {kAlice, Action::buy(50)}).ok);
    CHECK(w.token.balance_of(kAlice) == 50);
    CHECK(w.ether_of(kTokenContract) == 50);
    REQUIRE(step(w, {kAlice, Action::sell(20)}).ok);
    CHECK(w.ether_of(kAlice) == 970);
    CHECK_FALSE(step(w, {kAlice, Action::withdraw()}).ok);
    REQUIRE(step(w, {kOwner, Action::withdraw()}).ok);
    CHECK(w.ether_of(kTokenContract) == 0);
    CHECK(w.ether_of(kOwner) == 1030);
}

TEST_CASE("forced ether is visible as unexpected ether") {
    World w = funded(Variant::Secure);
    REQUIRE(step(w, {kAlice, Action::buy(10)}).ok);
    REQUIRE(step(w, {kBob, Action::force_ether(7)}).ok);
    CHECK(w.unexpected_ether() == 7);
    CHECK(step(w, {kAlice, Action::buy(10)}).ok);
}

TEST_CASE("re-entry runaway stops at the depth limit") {
    ModelFlags flags = ModelFlags::for_variant(Variant::InsecureLegacy);
    World w = make_world(Variant::InsecureLegacy, flags);
    w.token.owner = kOwner;
    w.fund(kOwner, 1000);
    w.fund(kSpender, 1000);
    REQUIRE(step(w, {kOwner, Action::buy(500)}).ok);
    REQUIRE(step(w, {kSpender, Action::buy(1)}).ok);
    w.attacker_program = ReentryHook{kSpender, std::vector<Action>(40, Action::sell(1)), 0, 4};
    REQUIRE(step(w, {kSpender, Action::sell(1)}).ok);
    bool depth_error = false;
    for (const TraceEvent& e : w.trace) depth_error |= e.result.find("depth limit") != std::string::npos;
    CHECK(depth_error);
    unsigned deepest = 0;
    for (const TraceEvent& e : w.trace) deepest = std::max(deepest, e.depth);
    CHECK(deepest == 5);
}

TEST_CASE("multiple-withdrawal worst case agrees with the brute-force oracle") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(1, 200);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = d(rng), m = d(rng);
        CAPTURE(n);
        CAPTURE(m);
        for (Variant v : {Variant::Secure, Variant::InsecureLegacy}) {
            MwaSetup s = mwa_setup(v, n, m);
            OrderingResult r = enumerate_orderings(s.world, s.owner_txs, s.spender_txs, s.spender);
            const bool tracked = v == Variant::Secure;
            const std::int64_t oracle = oracle::mwa_worst({n, m}, {n, m}, tracked, n + m);
            CHECK(r.worst_gain == oracle);
            CHECK(r.worst_gain == (tracked ? std::max(n, m) : n + m));
            CHECK(r.orderings == 6);
        }
    }
}

TEST_CASE("ordering enumeration refuses oversized streams") {
    MwaSetup s = mwa_setup(Variant::Secure, 1, 1);
    std::vector<Tx> many(5, s.owner_txs[0]);
    CHECK_THROWS_AS(enumerate_orderings(s.world, many, many, s.spender), TooManyTransactions);
}

TEST_CASE("same-function re-entry agrees with the oracle") {
    auto insecure = run_scenario("reentrancy-same", Variant::InsecureLegacy);
    auto secure = run_scenario("reentrancy-same", Variant::Secure);
    // Contract holds 30 + 10 wei; the hook re-enters twice.
    auto o_bad = oracle::sell_reentry(10, 1, 2, 40, false);
    auto o_good = oracle::sell_reentry(10, 1, 2, 40, true);
    CHECK(insecure.metrics.attacker_wei_gained == o_bad.wei_out);
    CHECK(secure.metrics.attacker_wei_gained == o_good.wei_out);
    CHECK(secure.metrics.reverted_steps >= static_cast<std::size_t>(o_good.rejected));
    CHECK_FALSE(insecure.property_holds);
    CHECK(secure.property_holds);
}

TEST_CASE("batch overflow") {
    auto legacy = run_scenario("overflow-batch", Variant::InsecureLegacy);
    CHECK_FALSE(legacy.metrics.invariant_violations.empty());
    CHECK_FALSE(legacy.property_holds);

    World w = funded(Variant::Secure);
    REQUIRE(step(w, {kOwner, Action::mint(kOwner, 1000)}).ok);
    const auto before = state_hash(w);
    StepResult r = step(w, {kSpender, Action::batch_transfer({kAlice, kBob}, pow2(255))});
    CHECK_FALSE(r.ok);
    CHECK(r.error == ErrorKind::Overflow);
    CHECK(state_hash(w) == before);
    // 2 x 2^255 is exactly 2^256: check it with unbounded arithmetic.
    CHECK(BigInt(2) * BigInt(pow2(255)) == (BigInt(1) << 256));
}

TEST_CASE("every scenario: secure holds, legacy is violated") {
    for (const std::string& name : scenario_names()) {
        CAPTURE(name);
        CHECK(run_scenario(name, Variant::Secure).property_holds);
        CHECK_FALSE(run_scenario(name, Variant::InsecureLegacy).property_holds);
    }
}

TEST_CASE("scenario output is deterministic") {
    for (const std::string& name : scenario_names()) {
        auto a = outcome_json(run_scenario(name, Variant::Secure), true);
        auto b = outcome_json(run_scenario(name, Variant::Secure), true);
        CHECK(a == b);
    }
}

TEST_CASE("random streams: conservation and atomic reverts (short)") {
    for (Variant v : {Variant::Secure, Variant::InsecureLegacy}) {
        props::StreamReport r = props::run_stream(v, 2000, 11);
        for (const auto& f : r.failures) MESSAGE(f);
        CHECK(r.failure_count == 0);
        CHECK(r.commits > 100);
        CHECK(r.reverts > 100);
    }
    CHECK(props::run_stream(Variant::Secure, 2000, 11).overflow_reverts > 0);
}
