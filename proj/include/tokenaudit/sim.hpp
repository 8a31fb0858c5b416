#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tokenaudit::sim {

// 256-bit word. Native operators wrap mod 2^256; the helpers below pick the mode.
using U256 = boost::multiprecision::uint256_t;
// Unbounded signed integer for gains and exact sums.
using BigInt = boost::multiprecision::cpp_int;

enum class ArithMode { Wrapping, Checked };

enum class ErrorKind { Revert, Overflow, DepthExceeded };
std::string to_string(ErrorKind k);

class SimError : public std::runtime_error {
public:
    SimError(ErrorKind kind, const std::string& reason) : std::runtime_error(reason), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

class UnknownScenario : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class TooManyTransactions : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

U256 add(const U256& a, const U256& b, ArithMode mode);
U256 sub(const U256& a, const U256& b, ArithMode mode);
U256 mul(const U256& a, const U256& b, ArithMode mode);
U256 pow2(unsigned bits);  // 2^bits, bits < 256

struct Address {
    std::uint32_t id = 0;
    bool is_zero() const { return id == 0; }
    auto operator<=>(const Address&) const = default;
};

inline constexpr Address kZero{0};
inline constexpr Address kTokenContract{1};
std::string to_string(Address a);

enum class Variant { Secure, InsecureLegacy };
std::string to_string(Variant v);
std::optional<Variant> parse_variant(std::string_view s);

// Behavioural switches. The secure preset turns every mitigation on; the
// legacy preset is tuned per scenario to carry the bug under demonstration.
struct ModelFlags {
    ArithMode arithmetic = ArithMode::Checked;
    bool cei_enabled = true;
    bool mutex_enabled = true;
    bool track_transfers = true;
    bool zero_address_check = true;
    bool has_pause = true;
    bool has_withdraw = true;
    bool withdraw_owner_only = true;
    bool strict_balance_check = false;  // require(this.balance == tracked) before buy/sell

    static ModelFlags for_variant(Variant v);
};

using PairKey = std::pair<Address, Address>;

struct TokenModel {
    Variant variant = Variant::Secure;
    ModelFlags flags;
    std::map<Address, U256> balances;
    std::map<PairKey, U256> allowances;
    std::map<PairKey, U256> transferred;
    U256 total_supply = 0;
    Address owner{2};
    bool paused = false;
    bool mutex_locked = false;
    U256 contract_balance_tracked = 0;
    U256 rate = 1;

    U256 balance_of(Address a) const;
    U256 allowance(Address o, Address s) const;
    U256 transferred_of(Address o, Address s) const;
    // What a spender can still move: allowance minus already transferred under
    // the tracked rule, the raw allowance otherwise.
    U256 spendable(Address o, Address s) const;
};

enum class ActionKind {
    Approve,
    Transfer,
    TransferFrom,
    BatchTransfer,
    Buy,
    Sell,
    Withdraw,
    Pause,
    Unpause,
    ForceEther,
    Mint,
    Burn,
};
std::string to_string(ActionKind k);

struct Action {
    ActionKind kind = ActionKind::Transfer;
    Address a;  // spender / to / from
    Address b;  // to for transferFrom
    U256 value = 0;
    std::vector<Address> recipients;

    static Action approve(Address spender, U256 v) { return {ActionKind::Approve, spender, {}, v, {}}; }
    static Action transfer(Address to, U256 v) { return {ActionKind::Transfer, to, {}, v, {}}; }
    static Action transfer_from(Address from, Address to, U256 v) { return {ActionKind::TransferFrom, from, to, v, {}}; }
    static Action batch_transfer(std::vector<Address> to, U256 v) {
        return {ActionKind::BatchTransfer, {}, {}, v, std::move(to)};
    }
    static Action buy(U256 wei) { return {ActionKind::Buy, {}, {}, wei, {}}; }
    static Action sell(U256 tokens) { return {ActionKind::Sell, {}, {}, tokens, {}}; }
    static Action withdraw() { return {ActionKind::Withdraw, {}, {}, 0, {}}; }
    static Action pause() { return {ActionKind::Pause, {}, {}, 0, {}}; }
    static Action unpause() { return {ActionKind::Unpause, {}, {}, 0, {}}; }
    static Action force_ether(U256 wei) { return {ActionKind::ForceEther, {}, {}, wei, {}}; }
    static Action mint(Address to, U256 v) { return {ActionKind::Mint, to, {}, v, {}}; }
    static Action burn(U256 v) { return {ActionKind::Burn, {}, {}, v, {}}; }
};

struct Tx {
    Address sender;
    Action action;
};
std::string describe(const Action& a);
std::string describe(const Tx& tx);

// Attacker code run when the token sends ether to `owner`. Each fire pops one
// follow-up action and runs it as a nested call; a nested revert is caught by
// the hook, like a low-level call whose result is ignored.
struct ReentryHook {
    Address owner;
    std::vector<Action> program;
    std::size_t next = 0;
    unsigned depth_limit = 16;
};

struct TraceEvent {
    std::size_t index = 0;
    unsigned depth = 0;
    Address sender;
    std::string action;
    bool ok = true;
    std::string result;  // "ok" or "<kind>: reason"
    std::vector<std::string> deltas;
};

struct World {
    std::map<Address, U256> ether;
    TokenModel token;
    std::optional<ReentryHook> attacker_program;
    std::vector<TraceEvent> trace;

    U256 ether_of(Address a) const;
    // Test setup only: creates ether out of nothing.
    void fund(Address a, U256 wei);
    // Ether the contract holds beyond what it has accounted for.
    U256 unexpected_ether() const;
};

World make_world(Variant v, ModelFlags flags);
World make_world(Variant v);

// Deterministic text form of everything except the trace.
std::string serialize_state(const World& w);
std::uint64_t state_hash(const World& w);

struct StepResult {
    bool ok = true;
    std::optional<ErrorKind> error;
    std::string reason;
};

// Executes one top-level transaction. On failure the world is restored to its
// pre-state (the trace keeps the failed event).
StepResult step(World& world, const Tx& tx);

// Exact sum of balances, computed without wrapping.
BigInt balance_sum(const TokenModel& t);
BigInt ether_sum(const World& w);

struct Metrics {
    BigInt attacker_tokens_gained = 0;
    BigInt attacker_wei_gained = 0;
    std::size_t reverted_steps = 0;
    std::vector<std::string> invariant_violations;
};

struct ScenarioOutcome {
    std::string name;
    Variant variant = Variant::Secure;
    World final;
    std::size_t setup_events = 0;  // trace entries belonging to setup
    Metrics metrics;
    std::string property;  // declared safety property, in words
    bool property_holds = true;
};

const std::vector<std::string>& scenario_names();
ScenarioOutcome run_scenario(const std::string& name, Variant variant);

struct OrderingResult {
    BigInt worst_gain = 0;
    std::vector<Tx> witness;
    std::size_t orderings = 0;
};

inline constexpr std::size_t kMaxOrderingTxs = 8;

// Runs every interleaving of the two streams (each keeps its internal order)
// from a copy of `initial` and returns the largest token gain of `attacker`.
OrderingResult enumerate_orderings(const World& initial, const std::vector<Tx>& owner_txs,
                                   const std::vector<Tx>& spender_txs, Address attacker);

// Canned multiple-withdrawal setup: owner approves N then M; the spender tries
// to pull N then M.
struct MwaSetup {
    World world;
    std::vector<Tx> owner_txs;
    std::vector<Tx> spender_txs;
    Address owner;
    Address spender;
};
MwaSetup mwa_setup(Variant v, const U256& n, const U256& m);

std::string trace_text(const std::vector<TraceEvent>& trace);
std::string outcome_text(const ScenarioOutcome& o, bool with_trace);
std::string outcome_json(const ScenarioOutcome& o, bool with_trace);
std::string ordering_text(const OrderingResult& r, const U256& n, const U256& m, Variant v);
std::string ordering_json(const OrderingResult& r, const U256& n, const U256& m, Variant v);

}  // namespace tokenaudit::sim
