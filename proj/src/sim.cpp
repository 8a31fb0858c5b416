#include "tokenaudit/sim.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include "json.hpp"
#include <sstream>

namespace tokenaudit::sim {

namespace {

const BigInt kWordModulus = BigInt(1) << 256;

[[noreturn]] void revert(const std::string& reason) { throw SimError(ErrorKind::Revert, reason); }

void require(bool cond, const std::string& reason) {
    if (!cond) revert(reason);
}

U256 get(const std::map<Address, U256>& m, Address a) {
    auto it = m.find(a);
    return it == m.end() ? U256(0) : it->second;
}

U256 get(const std::map<PairKey, U256>& m, Address o, Address s) {
    auto it = m.find({o, s});
    return it == m.end() ? U256(0) : it->second;
}

}  // namespace

std::string to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::Revert: return "Revert";
        case ErrorKind::Overflow: return "Overflow";
        case ErrorKind::DepthExceeded: return "DepthExceeded";
    }
    return "?";
}

U256 add(const U256& a, const U256& b, ArithMode mode) {
    if (mode == ArithMode::Checked && BigInt(a) + BigInt(b) >= kWordModulus)
        throw SimError(ErrorKind::Overflow, "addition overflow");
    return a + b;
}

U256 sub(const U256& a, const U256& b, ArithMode mode) {
    if (mode == ArithMode::Checked && b > a) throw SimError(ErrorKind::Overflow, "subtraction underflow");
    return a - b;
}

U256 mul(const U256& a, const U256& b, ArithMode mode) {
    if (mode == ArithMode::Checked && BigInt(a) * BigInt(b) >= kWordModulus)
        throw SimError(ErrorKind::Overflow, "multiplication overflow");
    return a * b;
}

U256 pow2(unsigned bits) { return U256(1) << bits; }

std::string to_string(Address a) { return std::to_string(a.id); }

std::string to_string(Variant v) { return v == Variant::Secure ? "secure" : "insecure-legacy"; }

std::optional<Variant> parse_variant(std::string_view s) {
    if (s == "secure") return Variant::Secure;
    if (s == "insecure" || s == "insecure-legacy") return Variant::InsecureLegacy;
    return std::nullopt;
}

ModelFlags ModelFlags::for_variant(Variant v) {
    ModelFlags f;
    if (v == Variant::Secure) return f;
    f.arithmetic = ArithMode::Wrapping;
    f.cei_enabled = false;
    f.mutex_enabled = false;
    f.track_transfers = false;
    f.zero_address_check = false;
    f.has_pause = false;
    f.has_withdraw = false;
    f.withdraw_owner_only = false;
    f.strict_balance_check = false;
    return f;
}

U256 TokenModel::balance_of(Address a) const { return get(balances, a); }
U256 TokenModel::allowance(Address o, Address s) const { return get(allowances, o, s); }
U256 TokenModel::transferred_of(Address o, Address s) const { return get(transferred, o, s); }

U256 TokenModel::spendable(Address o, Address s) const {
    U256 allowed = allowance(o, s);
    if (!flags.track_transfers) return allowed;
    U256 spent = transferred_of(o, s);
    return allowed <= spent ? U256(0) : allowed - spent;
}

std::string to_string(ActionKind k) {
    switch (k) {
        case ActionKind::Approve: return "approve";
        case ActionKind::Transfer: return "transfer";
        case ActionKind::TransferFrom: return "transferFrom";
        case ActionKind::BatchTransfer: return "batchTransfer";
        case ActionKind::Buy: return "buy";
        case ActionKind::Sell: return "sell";
        case ActionKind::Withdraw: return "withdraw";
        case ActionKind::Pause: return "pause";
        case ActionKind::Unpause: return "unpause";
        case ActionKind::ForceEther: return "force_ether";
        case ActionKind::Mint: return "mint";
        case ActionKind::Burn: return "burn";
    }
    return "?";
}

std::string describe(const Action& a) {
    std::ostringstream os;
    os << to_string(a.kind) << "(";
    switch (a.kind) {
        case ActionKind::Approve:
        case ActionKind::Transfer:
        case ActionKind::Mint: os << to_string(a.a) << ", " << a.value; break;
        case ActionKind::TransferFrom: os << to_string(a.a) << ", " << to_string(a.b) << ", " << a.value; break;
        case ActionKind::BatchTransfer:
            os << "[";
            for (std::size_t i = 0; i < a.recipients.size(); ++i) os << (i ? ", " : "") << to_string(a.recipients[i]);
            os << "], " << a.value;
            break;
        case ActionKind::Buy:
        case ActionKind::Sell:
        case ActionKind::ForceEther:
        case ActionKind::Burn: os << a.value; break;
        case ActionKind::Withdraw:
        case ActionKind::Pause:
        case ActionKind::Unpause: break;
    }
    os << ")";
    return os.str();
}

std::string describe(const Tx& tx) { return to_string(tx.sender) + ": " + describe(tx.action); }

U256 World::ether_of(Address a) const { return get(ether, a); }

void World::fund(Address a, U256 wei) { ether[a] = ether_of(a) + wei; }

U256 World::unexpected_ether() const {
    U256 actual = ether_of(kTokenContract);
    return actual <= token.contract_balance_tracked ? U256(0) : actual - token.contract_balance_tracked;
}

World make_world(Variant v, ModelFlags flags) {
    World w;
    w.token.variant = v;
    w.token.flags = flags;
    return w;
}

World make_world(Variant v) { return make_world(v, ModelFlags::for_variant(v)); }

namespace {

// Canonical key/value view of the state; zero entries are omitted so that a
// map slot holding 0 and an absent slot compare equal.
std::map<std::string, std::string> state_entries(const World& w) {
    std::map<std::string, std::string> out;
    auto put = [&](const std::string& k, const U256& v) {
        if (v != 0) out[k] = v.str();
    };
    for (const auto& [a, v] : w.ether) put("ether[" + to_string(a) + "]", v);
    const TokenModel& t = w.token;
    for (const auto& [a, v] : t.balances) put("balance[" + to_string(a) + "]", v);
    for (const auto& [k, v] : t.allowances) put("allowance[" + to_string(k.first) + "," + to_string(k.second) + "]", v);
    for (const auto& [k, v] : t.transferred)
        put("transferred[" + to_string(k.first) + "," + to_string(k.second) + "]", v);
    put("total_supply", t.total_supply);
    put("tracked", t.contract_balance_tracked);
    out["rate"] = t.rate.str();
    out["owner"] = to_string(t.owner);
    out["paused"] = t.paused ? "true" : "false";
    out["mutex"] = t.mutex_locked ? "true" : "false";
    if (w.attacker_program) out["hook.next"] = std::to_string(w.attacker_program->next);
    return out;
}

std::vector<std::string> diff_entries(const std::map<std::string, std::string>& before,
                                      const std::map<std::string, std::string>& after) {
    std::vector<std::string> out;
    auto value = [](const std::map<std::string, std::string>& m, const std::string& k) {
        auto it = m.find(k);
        return it == m.end() ? std::string("0") : it->second;
    };
    std::set<std::string> keys;
    for (const auto& [k, v] : before) keys.insert(k);
    for (const auto& [k, v] : after) keys.insert(k);
    for (const auto& k : keys) {
        std::string a = value(before, k), b = value(after, k);
        if (a != b) out.push_back(k + ": " + a + " -> " + b);
    }
    return out;
}

struct Snapshot {
    std::map<Address, U256> ether;
    TokenModel token;
    std::optional<ReentryHook> hook;
};

Snapshot take(const World& w) { return {w.ether, w.token, w.attacker_program}; }

void restore(World& w, Snapshot s) {
    w.ether = std::move(s.ether);
    w.token = std::move(s.token);
    w.attacker_program = std::move(s.hook);
}

class Engine {
public:
    explicit Engine(World& w) : w_(w) {}

    // Runs one call frame. Throws on failure after restoring the pre-state.
    void call(Address sender, const Action& action, unsigned depth) {
        std::size_t idx = w_.trace.size();
        w_.trace.push_back({idx, depth, sender, describe(action), true, "ok", {}});
        auto before = state_entries(w_);
        Snapshot snap = take(w_);
        try {
            if (w_.attacker_program && depth > w_.attacker_program->depth_limit)
                throw SimError(ErrorKind::DepthExceeded, "re-entry depth limit reached");
            execute(sender, action, depth);
        } catch (const SimError& e) {
            restore(w_, std::move(snap));
            w_.trace[idx].ok = false;
            w_.trace[idx].result = to_string(e.kind()) + ": " + e.what();
            throw;
        }
        w_.trace[idx].deltas = diff_entries(before, state_entries(w_));
    }

private:
    TokenModel& t() { return w_.token; }
    const ModelFlags& f() { return w_.token.flags; }
    ArithMode mode() { return w_.token.flags.arithmetic; }

    void not_paused() {
        if (f().has_pause) require(!t().paused, "token is paused");
    }
    void only_owner(Address s) { require(s == t().owner, "caller is not the owner"); }
    void recipient_ok(Address to) {
        if (f().zero_address_check) require(!to.is_zero(), "transfer to the zero address");
    }
    void enter_mutex() {
        if (!f().mutex_enabled) return;
        require(!t().mutex_locked, "reentrant call");
        t().mutex_locked = true;
    }
    void exit_mutex() {
        if (f().mutex_enabled) t().mutex_locked = false;
    }
    void strict_balance() {
        if (f().strict_balance_check)
            require(w_.ether_of(kTokenContract) == t().contract_balance_tracked, "ether balance mismatch");
    }

    void move_tokens(Address from, Address to, const U256& v) {
        require(t().balance_of(from) >= v, "insufficient balance");
        t().balances[from] = sub(t().balance_of(from), v, mode());
        t().balances[to] = add(t().balance_of(to), v, mode());
    }

    void move_ether(Address from, Address to, const U256& wei) {
        require(w_.ether_of(from) >= wei, "insufficient ether");
        w_.ether[from] = w_.ether_of(from) - wei;
        w_.ether[to] = w_.ether_of(to) + wei;
    }

    // Ether leaving the token; the recipient's code may run.
    void send(Address to, const U256& wei, unsigned depth) {
        move_ether(kTokenContract, to, wei);
        auto& hook = w_.attacker_program;
        if (!hook || hook->owner != to || hook->next >= hook->program.size()) return;
        Action next = hook->program[hook->next++];
        try {
            call(to, next, depth + 1);
        } catch (const SimError&) {
            // caught by the attacker's low-level call
        }
    }

    void execute(Address s, const Action& a, unsigned depth) {
        switch (a.kind) {
            case ActionKind::Approve:
                not_paused();
                if (f().zero_address_check) require(!a.a.is_zero(), "approve to the zero address");
                t().allowances[{s, a.a}] = a.value;
                return;
            case ActionKind::Transfer:
                not_paused();
                recipient_ok(a.a);
                move_tokens(s, a.a, a.value);
                return;
            case ActionKind::TransferFrom: {
                not_paused();
                recipient_ok(a.b);
                require(a.value <= t().spendable(a.a, s), "allowance exceeded");
                if (f().track_transfers)
                    t().transferred[{a.a, s}] = add(t().transferred_of(a.a, s), a.value, mode());
                else
                    t().allowances[{a.a, s}] = sub(t().allowance(a.a, s), a.value, mode());
                move_tokens(a.a, a.b, a.value);
                return;
            }
            case ActionKind::BatchTransfer: {
                not_paused();
                require(!a.recipients.empty(), "no recipients");
                U256 amount = mul(U256(a.recipients.size()), a.value, mode());
                require(t().balance_of(s) >= amount, "insufficient balance");
                t().balances[s] = sub(t().balance_of(s), amount, mode());
                for (Address r : a.recipients) {
                    recipient_ok(r);
                    t().balances[r] = add(t().balance_of(r), a.value, mode());
                }
                return;
            }
            case ActionKind::Buy: {
                not_paused();
                enter_mutex();
                strict_balance();
                require(a.value > 0, "no ether sent");
                move_ether(s, kTokenContract, a.value);
                U256 tokens = a.value / t().rate;
                t().balances[s] = add(t().balance_of(s), tokens, mode());
                t().total_supply = add(t().total_supply, tokens, mode());
                t().contract_balance_tracked = add(t().contract_balance_tracked, a.value, mode());
                exit_mutex();
                return;
            }
            case ActionKind::Sell: {
                not_paused();
                enter_mutex();
                strict_balance();
                require(t().balance_of(s) >= a.value, "insufficient balance");
                U256 payout = mul(a.value, t().rate, mode());
                auto settle = [&] {
                    t().balances[s] = sub(t().balance_of(s), a.value, mode());
                    t().total_supply = sub(t().total_supply, a.value, mode());
                    t().contract_balance_tracked = sub(t().contract_balance_tracked, payout, mode());
                };
                if (f().cei_enabled) {
                    require(payout <= t().contract_balance_tracked, "insufficient ether");
                    settle();
                    send(s, payout, depth);
                } else {
                    send(s, payout, depth);
                    settle();
                }
                exit_mutex();
                return;
            }
            case ActionKind::Withdraw: {
                require(f().has_withdraw, "no withdrawal function");
                if (f().withdraw_owner_only) only_owner(s);
                enter_mutex();
                U256 amount = w_.ether_of(kTokenContract);
                t().contract_balance_tracked = 0;
                send(s, amount, depth);
                exit_mutex();
                return;
            }
            case ActionKind::Pause:
            case ActionKind::Unpause:
                require(f().has_pause, "no fail-safe switch");
                only_owner(s);
                t().paused = a.kind == ActionKind::Pause;
                return;
            case ActionKind::ForceEther:
                // selfdestruct deposit: no code of the token runs
                move_ether(s, kTokenContract, a.value);
                return;
            case ActionKind::Mint:
                not_paused();
                only_owner(s);
                recipient_ok(a.a);
                t().balances[a.a] = add(t().balance_of(a.a), a.value, mode());
                t().total_supply = add(t().total_supply, a.value, mode());
                return;
            case ActionKind::Burn:
                not_paused();
                require(t().balance_of(s) >= a.value, "insufficient balance");
                t().balances[s] = sub(t().balance_of(s), a.value, mode());
                t().total_supply = sub(t().total_supply, a.value, mode());
                return;
        }
    }

    World& w_;
};

}  // namespace

std::string serialize_state(const World& w) {
    std::string out;
    for (const auto& [k, v] : state_entries(w)) out += k + "=" + v + "\n";
    return out;
}

std::uint64_t state_hash(const World& w) { return std::hash<std::string>{}(serialize_state(w)); }

StepResult step(World& world, const Tx& tx) {
    Engine engine(world);
    try {
        engine.call(tx.sender, tx.action, 0);
    } catch (const SimError& e) {
        return {false, e.kind(), e.what()};
    }
    return {};
}

BigInt balance_sum(const TokenModel& t) {
    BigInt sum = 0;
    for (const auto& [a, v] : t.balances) sum += BigInt(v);
    return sum;
}

BigInt ether_sum(const World& w) {
    BigInt sum = 0;
    for (const auto& [a, v] : w.ether) sum += BigInt(v);
    return sum;
}

// ---------------------------------------------------------------------------
// Scenarios

namespace {

constexpr Address kOwner{2};
constexpr Address kAlice{3};
constexpr Address kAttacker{4};
constexpr Address kAccomplice{5};
constexpr Address kAccomplice2{6};

struct Scenario {
    std::string name;
    std::function<void(ModelFlags&)> legacy_flags;
    std::vector<Tx> setup;
    std::optional<ReentryHook> hook;
    std::vector<Tx> attack;
    std::vector<Address> attackers;
    std::string property;
    // (outcome, per-attack-step results) -> property holds
    std::function<bool(const ScenarioOutcome&, const std::vector<StepResult>&)> holds;
};

BigInt token_holdings(const World& w, const std::vector<Address>& who) {
    BigInt sum = 0;
    for (Address a : who) sum += BigInt(w.token.balance_of(a));
    return sum;
}

BigInt ether_holdings(const World& w, const std::vector<Address>& who) {
    BigInt sum = 0;
    for (Address a : who) sum += BigInt(w.ether_of(a));
    return sum;
}

std::vector<Scenario> build_scenarios() {
    std::vector<Scenario> s;
    const std::vector<Address> attacker{kAttacker};

    s.push_back({"mwa-frontrun",
                 nullptr,
                 {{kOwner, Action::mint(kOwner, 1000)}},
                 std::nullopt,
                 {{kOwner, Action::approve(kAttacker, 100)},
                  {kAttacker, Action::transfer_from(kOwner, kAttacker, 100)},
                  {kOwner, Action::approve(kAttacker, 50)},
                  {kAttacker, Action::transfer_from(kOwner, kAttacker, 50)}},
                 attacker,
                 "spender moves at most max(100, 50) = 100 tokens",
                 [](const ScenarioOutcome& o, const std::vector<StepResult>&) {
                     return o.metrics.attacker_tokens_gained <= 100;
                 }});

    s.push_back({"reentrancy-same",
                 nullptr,
                 {{kOwner, Action::buy(30)}, {kAttacker, Action::buy(10)}},
                 ReentryHook{kAttacker, {Action::sell(10), Action::sell(10)}, 0, 16},
                 {{kAttacker, Action::sell(10)}},
                 attacker,
                 "attacker receives at most 10 tokens x rate = 10 wei",
                 [](const ScenarioOutcome& o, const std::vector<StepResult>&) {
                     return o.metrics.attacker_wei_gained <= BigInt(10) * BigInt(o.final.token.rate);
                 }});

    s.push_back({"reentrancy-cross",
                 nullptr,
                 {{kOwner, Action::buy(30)}, {kAttacker, Action::buy(10)}},
                 ReentryHook{kAttacker, {Action::transfer(kAccomplice, 10)}, 0, 16},
                 {{kAttacker, Action::sell(10)}},
                 {kAttacker, kAccomplice},
                 "attacker side gains no value: wei gained + tokens gained x rate <= 0",
                 [](const ScenarioOutcome& o, const std::vector<StepResult>&) {
                     return o.metrics.attacker_wei_gained +
                                o.metrics.attacker_tokens_gained * BigInt(o.final.token.rate) <=
                            0;
                 }});

    s.push_back({"overflow-batch",
                 nullptr,
                 {{kOwner, Action::mint(kOwner, 1000)}},
                 std::nullopt,
                 {{kAttacker, Action::batch_transfer({kAccomplice, kAccomplice2}, pow2(255))}},
                 {kAttacker, kAccomplice, kAccomplice2},
                 "no tokens are created: batch overflow is rejected",
                 [](const ScenarioOutcome& o, const std::vector<StepResult>&) {
                     return o.metrics.attacker_tokens_gained == 0 && o.metrics.invariant_violations.empty();
                 }});

    s.push_back({"frozen-ether",
                 nullptr,
                 {{kAlice, Action::buy(50)}},
                 std::nullopt,
                 {{kOwner, Action::withdraw()}},
                 attacker,
                 "owner can recover the contract's ether",
                 [](const ScenarioOutcome& o, const std::vector<StepResult>&) {
                     return o.final.ether_of(kTokenContract) == 0;
                 }});

    s.push_back({"unprotected-withdraw",
                 [](ModelFlags& f) {
                     f.has_withdraw = true;
                     f.withdraw_owner_only = false;
                 },
                 {{kAlice, Action::buy(50)}},
                 std::nullopt,
                 {{kAttacker, Action::withdraw()}},
                 attacker,
                 "only the owner can withdraw ether",
                 [](const ScenarioOutcome& o, const std::vector<StepResult>&) {
                     return o.metrics.attacker_wei_gained <= 0;
                 }});

    s.push_back({"forced-ether",
                 [](ModelFlags& f) { f.strict_balance_check = true; },
                 {{kAlice, Action::buy(20)}},
                 std::nullopt,
                 {{kAttacker, Action::force_ether(5)}, {kAlice, Action::buy(10)}},
                 attacker,
                 "forced ether neither blocks buy() nor goes unaccounted (unexpectedEther = 5)",
                 [](const ScenarioOutcome& o, const std::vector<StepResult>& r) {
                     return r.size() == 2 && r[1].ok && o.final.unexpected_ether() == 5;
                 }});

    s.push_back({"pause-gate",
                 nullptr,
                 {{kOwner, Action::mint(kAttacker, 100)}},
                 std::nullopt,
                 {{kOwner, Action::pause()},
                  {kAttacker, Action::transfer(kAccomplice, 10)},
                  {kOwner, Action::unpause()},
                  {kAttacker, Action::transfer(kAccomplice, 10)}},
                 attacker,
                 "transfers revert while paused and resume after unpause",
                 [](const ScenarioOutcome&, const std::vector<StepResult>& r) {
                     return r.size() == 4 && r[0].ok && !r[1].ok && r[2].ok && r[3].ok;
                 }});
    return s;
}

const std::vector<Scenario>& scenarios() {
    static const std::vector<Scenario> all = build_scenarios();
    return all;
}

// Invariants checked after each committed top-level step.
void check_invariants(const World& w, const BigInt& ether_before, std::size_t step_no,
                      std::vector<std::string>& out) {
    const TokenModel& t = w.token;
    BigInt sum = balance_sum(t);
    if (sum != BigInt(t.total_supply))
        out.push_back("step " + std::to_string(step_no) + ": sum of balances " + sum.str() + " != total supply " +
                      t.total_supply.str());
    if (t.contract_balance_tracked > w.ether_of(kTokenContract))
        out.push_back("step " + std::to_string(step_no) + ": tracked ether " + t.contract_balance_tracked.str() +
                      " exceeds actual " + w.ether_of(kTokenContract).str());
    if (ether_sum(w) != ether_before)
        out.push_back("step " + std::to_string(step_no) + ": ether not conserved");
}

}  // namespace

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& s : scenarios()) n.push_back(s.name);
        return n;
    }();
    return names;
}

ScenarioOutcome run_scenario(const std::string& name, Variant variant) {
    auto it = std::find_if(scenarios().begin(), scenarios().end(), [&](const Scenario& s) { return s.name == name; });
    if (it == scenarios().end()) throw UnknownScenario("unknown scenario: " + name);
    const Scenario& sc = *it;

    ModelFlags flags = ModelFlags::for_variant(variant);
    if (variant == Variant::InsecureLegacy && sc.legacy_flags) sc.legacy_flags(flags);
    World w = make_world(variant, flags);
    w.token.owner = kOwner;
    for (Address a : {kOwner, kAlice, kAttacker, kAccomplice, kAccomplice2}) w.fund(a, 1000);

    ScenarioOutcome out;
    out.name = sc.name;
    out.variant = variant;
    out.property = sc.property;

    std::size_t step_no = 0;
    for (const Tx& tx : sc.setup) {
        BigInt before = ether_sum(w);
        StepResult r = step(w, tx);
        if (!r.ok) throw std::logic_error("scenario setup failed: " + describe(tx) + ": " + r.reason);
        check_invariants(w, before, step_no++, out.metrics.invariant_violations);
    }
    out.setup_events = w.trace.size();
    w.attacker_program = sc.hook;

    BigInt tokens0 = token_holdings(w, sc.attackers);
    BigInt wei0 = ether_holdings(w, sc.attackers);
    std::vector<StepResult> results;
    for (const Tx& tx : sc.attack) {
        BigInt before = ether_sum(w);
        StepResult r = step(w, tx);
        if (r.ok) check_invariants(w, before, step_no, out.metrics.invariant_violations);
        results.push_back(r);
        ++step_no;
    }
    out.metrics.attacker_tokens_gained = token_holdings(w, sc.attackers) - tokens0;
    out.metrics.attacker_wei_gained = ether_holdings(w, sc.attackers) - wei0;
    for (std::size_t i = out.setup_events; i < w.trace.size(); ++i)
        if (!w.trace[i].ok) ++out.metrics.reverted_steps;
    out.final = std::move(w);
    out.property_holds = sc.holds(out, results);
    return out;
}

// ---------------------------------------------------------------------------
// Orderings

OrderingResult enumerate_orderings(const World& initial, const std::vector<Tx>& owner_txs,
                                   const std::vector<Tx>& spender_txs, Address attacker) {
    if (owner_txs.size() + spender_txs.size() > kMaxOrderingTxs)
        throw TooManyTransactions("at most " + std::to_string(kMaxOrderingTxs) + " transactions can be interleaved");
    OrderingResult best;
    bool have = false;
    std::vector<Tx> order;
    const BigInt start = BigInt(initial.token.balance_of(attacker));

    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t j) {
        if (i == owner_txs.size() && j == spender_txs.size()) {
            World w = initial;
            for (const Tx& tx : order) step(w, tx);
            BigInt gain = BigInt(w.token.balance_of(attacker)) - start;
            ++best.orderings;
            if (!have || gain > best.worst_gain) {
                have = true;
                best.worst_gain = gain;
                best.witness = order;
            }
            return;
        }
        if (i < owner_txs.size()) {
            order.push_back(owner_txs[i]);
            rec(i + 1, j);
            order.pop_back();
        }
        if (j < spender_txs.size()) {
            order.push_back(spender_txs[j]);
            rec(i, j + 1);
            order.pop_back();
        }
    };
    rec(0, 0);
    return best;
}

MwaSetup mwa_setup(Variant v, const U256& n, const U256& m) {
    MwaSetup s{make_world(v), {}, {}, kOwner, kAttacker};
    s.world.token.owner = kOwner;
    StepResult r = step(s.world, {kOwner, Action::mint(kOwner, n + m)});
    if (!r.ok) throw std::logic_error("mwa setup failed: " + r.reason);
    s.world.trace.clear();
    s.owner_txs = {{kOwner, Action::approve(kAttacker, n)}, {kOwner, Action::approve(kAttacker, m)}};
    s.spender_txs = {{kAttacker, Action::transfer_from(kOwner, kAttacker, n)},
                     {kAttacker, Action::transfer_from(kOwner, kAttacker, m)}};
    return s;
}

// ---------------------------------------------------------------------------
// Rendering

std::string trace_text(const std::vector<TraceEvent>& trace) {
    std::ostringstream os;
    for (const auto& e : trace) {
        os << "#" << e.index << " " << std::string(e.depth * 2, ' ') << "[" << to_string(e.sender) << "] " << e.action
           << " -> " << e.result << "\n";
        for (const auto& d : e.deltas) os << "      " << std::string(e.depth * 2, ' ') << d << "\n";
    }
    return os.str();
}

std::string outcome_text(const ScenarioOutcome& o, bool with_trace) {
    std::ostringstream os;
    os << "scenario " << o.name << " (" << to_string(o.variant) << ")\n";
    if (with_trace) os << trace_text(o.final.trace);
    os << "attacker_tokens_gained: " << o.metrics.attacker_tokens_gained << "\n";
    os << "attacker_wei_gained: " << o.metrics.attacker_wei_gained << "\n";
    os << "reverted_steps: " << o.metrics.reverted_steps << "\n";
    os << "invariant_violations: " << o.metrics.invariant_violations.size() << "\n";
    for (const auto& v : o.metrics.invariant_violations) os << "  " << v << "\n";
    os << "property: " << o.property << " -> " << (o.property_holds ? "holds" : "VIOLATED") << "\n";
    return os.str();
}

namespace {

nlohmann::ordered_json trace_json(const std::vector<TraceEvent>& trace) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& e : trace) {
        nlohmann::ordered_json j;
        j["step"] = e.index;
        j["depth"] = e.depth;
        j["sender"] = e.sender.id;
        j["action"] = e.action;
        j["result"] = e.result;
        j["deltas"] = e.deltas;
        arr.push_back(std::move(j));
    }
    return arr;
}

}  // namespace

std::string outcome_json(const ScenarioOutcome& o, bool with_trace) {
    nlohmann::ordered_json j;
    j["scenario"] = o.name;
    j["variant"] = to_string(o.variant);
    j["metrics"] = {{"attacker_tokens_gained", o.metrics.attacker_tokens_gained.str()},
                    {"attacker_wei_gained", o.metrics.attacker_wei_gained.str()},
                    {"reverted_steps", o.metrics.reverted_steps},
                    {"invariant_violations", o.metrics.invariant_violations}};
    j["property"] = o.property;
    j["property_holds"] = o.property_holds;
    if (with_trace) j["trace"] = trace_json(o.final.trace);
    return j.dump(2) + "\n";
}

std::string ordering_text(const OrderingResult& r, const U256& n, const U256& m, Variant v) {
    std::ostringstream os;
    os << "mwa n=" << n << " m=" << m << " (" << to_string(v) << ")\n";
    os << "orderings: " << r.orderings << "\n";
    os << "worst case: " << r.worst_gain << "\n";
    os << "witness:\n";
    for (const Tx& tx : r.witness) os << "  " << describe(tx) << "\n";
    return os.str();
}

std::string ordering_json(const OrderingResult& r, const U256& n, const U256& m, Variant v) {
    nlohmann::ordered_json j;
    j["n"] = n.str();
    j["m"] = m.str();
    j["variant"] = to_string(v);
    j["orderings"] = r.orderings;
    j["worst_case"] = r.worst_gain.str();
    auto w = nlohmann::ordered_json::array();
    for (const Tx& tx : r.witness) w.push_back(describe(tx));
    j["witness"] = w;
    return j.dump(2) + "\n";
}

}  // namespace tokenaudit::sim
