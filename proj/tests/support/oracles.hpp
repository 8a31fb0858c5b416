#pragma once

// Reference models written without the simulator. They use plain int64 and
// enumerate orderings their own way, so agreement with tokenaudit::sim is
// evidence rather than tautology.

#include <algorithm>
#include <cstdint>
#include <vector>

namespace oracle {

struct MwaStep {
    bool owner;          // true: approve(value); false: spender transferFrom(value)
    std::int64_t value;
};

// Spender's total take for one ordering.
inline std::int64_t mwa_take(const std::vector<MwaStep>& order, bool tracked, std::int64_t owner_balance) {
    std::int64_t allowance = 0, spent = 0, balance = owner_balance, take = 0;
    for (const MwaStep& s : order) {
        if (s.owner) {
            allowance = s.value;
            continue;
        }
        const std::int64_t room = tracked ? std::max<std::int64_t>(allowance - spent, 0) : allowance;
        if (s.value > room || s.value > balance) continue;
        if (tracked)
            spent += s.value;
        else
            allowance -= s.value;
        balance -= s.value;
        take += s.value;
    }
    return take;
}

// Worst case over all interleavings, enumerated as bitmasks choosing which
// positions belong to the owner stream.
inline std::int64_t mwa_worst(const std::vector<std::int64_t>& approvals, const std::vector<std::int64_t>& pulls,
                              bool tracked, std::int64_t owner_balance) {
    const int n = static_cast<int>(approvals.size() + pulls.size());
    std::int64_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != static_cast<int>(approvals.size())) continue;
        std::vector<MwaStep> order;
        std::size_t a = 0, p = 0;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i))
                order.push_back({true, approvals[a++]});
            else
                order.push_back({false, pulls[p++]});
        }
        best = std::max(best, mwa_take(order, tracked, owner_balance));
    }
    return best;
}

// Same-function re-entry into sell(n): the unprotected model pays before it
// debits, so every nested entry passes the balance check and pays again.
// The protected model pays once; every nested entry is rejected.
struct ReentryResult {
    std::int64_t wei_out;
    int rejected;
};

inline ReentryResult sell_reentry(std::int64_t tokens, std::int64_t rate, int reentries, std::int64_t contract_wei,
                                  bool protected_model) {
    if (protected_model) return {std::min(tokens * rate, contract_wei), reentries > 0 ? 1 : 0};
    std::int64_t out = 0;
    for (int i = 0; i <= reentries && contract_wei - out >= tokens * rate; ++i) out += tokens * rate;
    return {out, 0};
}

}  // namespace oracle
