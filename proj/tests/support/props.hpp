#pragma once

// Random transaction streams for the conservation and atomicity properties.

#include <random>
#include <string>
#include <vector>

#include "tokenaudit/sim.hpp"

namespace props {

namespace sim = tokenaudit::sim;

struct StreamReport {
    std::size_t commits = 0;
    std::size_t reverts = 0;
    std::size_t overflow_reverts = 0;
    std::vector<std::string> failures;  // first few only
    std::size_t failure_count = 0;

    void fail(std::string what) {
        if (failures.size() < 5) failures.push_back(std::move(what));
        ++failure_count;
    }
};

inline sim::Action random_action(std::mt19937_64& rng, bool huge_values) {
    auto pick = [&](std::uint64_t lo, std::uint64_t hi) { return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng); };
    auto addr = [&] { return sim::Address{static_cast<std::uint32_t>(pick(0, 6))}; };
    auto value = [&]() -> sim::U256 {
        if (huge_values && pick(0, 9) == 0) {
            switch (pick(0, 2)) {
                case 0: return sim::pow2(255);
                case 1: return ~sim::U256(0);
                default: return sim::pow2(255) + pick(0, 100);
            }
        }
        return pick(0, 120);
    };
    switch (pick(0, 11)) {
        case 0: return sim::Action::approve(addr(), value());
        case 1: return sim::Action::transfer(addr(), value());
        case 2: return sim::Action::transfer_from(addr(), addr(), value());
        case 3: {
            std::vector<sim::Address> to(pick(1, 3));
            for (auto& a : to) a = addr();
            return sim::Action::batch_transfer(std::move(to), value());
        }
        case 4: return sim::Action::buy(pick(0, 60));
        case 5: return sim::Action::sell(value());
        case 6: return sim::Action::withdraw();
        case 7: return pick(0, 3) == 0 ? sim::Action::pause() : sim::Action::unpause();
        case 8: return sim::Action::force_ether(pick(0, 20));
        case 9: return sim::Action::mint(addr(), value());
        case 10: return sim::Action::burn(value());
        default: return sim::Action::transfer(addr(), pick(0, 10));
    }
}

// Runs `steps` random top-level transactions. Checks after each step:
// committed -> balances sum to total supply and ether is conserved;
// reverted -> the serialized world hashes exactly as before.
inline StreamReport run_stream(sim::Variant v, std::size_t steps, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    sim::World w = sim::make_world(v);
    w.token.owner = sim::Address{2};
    for (std::uint32_t id = 2; id <= 6; ++id) w.fund(sim::Address{id}, 100000);
    // Unchecked arithmetic breaks conservation by design once count x value
    // reaches 2^256; that case is demonstrated separately.
    const bool huge = v == sim::Variant::Secure;

    StreamReport rep;
    for (std::size_t i = 0; i < steps; ++i) {
        sim::Tx tx{sim::Address{static_cast<std::uint32_t>(std::uniform_int_distribution<int>(2, 6)(rng))},
                   random_action(rng, huge)};
        const std::uint64_t before_hash = sim::state_hash(w);
        const sim::BigInt ether_before = sim::ether_sum(w);
        sim::StepResult r = sim::step(w, tx);
        w.trace.clear();
        if (r.ok) {
            ++rep.commits;
            if (sim::balance_sum(w.token) != sim::BigInt(w.token.total_supply))
                rep.fail("step " + std::to_string(i) + " (" + sim::describe(tx) + "): balances != total supply");
            if (sim::ether_sum(w) != ether_before)
                rep.fail("step " + std::to_string(i) + " (" + sim::describe(tx) + "): ether not conserved");
        } else {
            ++rep.reverts;
            if (r.error == sim::ErrorKind::Overflow) ++rep.overflow_reverts;
            if (sim::state_hash(w) != before_hash)
                rep.fail("step " + std::to_string(i) + " (" + sim::describe(tx) + "): revert changed state");
        }
    }
    return rep;
}

}  // namespace props
