#include "doctest.h"

#include <algorithm>
#include <functional>

#include "tokenaudit/rules.hpp"

using namespace tokenaudit;

namespace {

struct Built {
    AnalysisBundle bundle;
    const ContractAnalysis& contract(std::string_view name) const {
        const ContractBundle* c = bundle.contract(name);
        REQUIRE(c != nullptr);
        REQUIRE(c->analysis != nullptr);
        return *c->analysis;
    }
};

Built build(const std::string& text) {
    return Built{build_bundle({SourceFile::from_string("t.sol", text)})};
}

const char* kBank = R"(
pragma solidity 0.5.11;
contract Bank {
    mapping(address => uint256) balances;
    address owner;
    bool locked;
    modifier onlyOwner() { require(msg.sender == owner); _; }
    modifier lock() { require(!locked); locked = true; _; locked = false; }
    function bad() public {
        uint256 amount = balances[msg.sender];
        (bool ok, ) = msg.sender.call.value(amount)("");
        require(ok);
        balances[msg.sender] = 0;
    }
    function good() public lock {
        uint256 amount = balances[msg.sender];
        balances[msg.sender] = 0;
        msg.sender.transfer(amount);
    }
    function admin(address payable to) public onlyOwner { selfdestruct(to); }
    function branchy(uint256 x) public returns (uint256) {
        if (x > 1) { return 1; } else { revert(); }
    }
    function loop(uint256 n) public {
        for (uint256 i = 0; i < n; i++) { if (i == 3) { break; } }
    }
}
)";

}  // namespace

TEST_CASE("modifier expansion records origins and wraps the body") {
    Built b = build(kBank);
    const FunctionAnalysis* good = b.contract("Bank").find("good");
    REQUIRE(good != nullptr);
    const Stmt& root = good->body.root;
    bool from_lock = false, from_fn = false;
    std::function<void(const Stmt&)> walk = [&](const Stmt& s) {
        if (s.kind != StmtKind::Block) {
            from_lock |= s.origin == "lock";
            from_fn |= s.origin.empty();
        }
        for (const Stmt& c : s.body) walk(c);
    };
    walk(root);
    CHECK(from_lock);
    CHECK(from_fn);
}

TEST_CASE("cfg edges for branches and loops") {
    Built b = build(kBank);
    const ContractAnalysis& c = b.contract("Bank");

    const FunctionAnalysis* branchy = c.find("branchy");
    REQUIRE(branchy != nullptr);
    bool t = false, f = false, revert_exit = false, normal_exit = false;
    for (const CfgEdge& e : branchy->cfg.edges) {
        t |= e.kind == EdgeKind::True;
        f |= e.kind == EdgeKind::False;
        revert_exit |= e.to == Cfg::kRevertExit;
        normal_exit |= e.to == Cfg::kNormalExit;
    }
    CHECK(t);
    CHECK(f);
    CHECK(revert_exit);
    CHECK(normal_exit);

    const FunctionAnalysis* loop = c.find("loop");
    REQUIRE(loop != nullptr);
    CHECK(loop->cfg.loop_edges().size() == 1);
    CHECK(loop->cfg.reachable_from(loop->cfg.entry).count(loop->cfg.entry) == 1);
}

TEST_CASE("every block is reachable from the entry in straight-line code") {
    Built b = build(kBank);
    const FunctionAnalysis* bad = b.contract("Bank").find("bad");
    REQUIRE(bad != nullptr);
    auto reach = bad->cfg.reachable_from(bad->cfg.entry);
    CHECK(reach.size() == bad->cfg.blocks.size());
}

TEST_CASE("call classification") {
    Built b = build(kBank);
    const ContractAnalysis& c = b.contract("Bank");
    auto kinds = [&](std::string_view fn) {
        std::vector<CallKind> out;
        for (const CallSite& cs : c.find(fn)->calls) out.push_back(cs.kind);
        return out;
    };
    auto has = [](const std::vector<CallKind>& v, CallKind k) { return std::find(v.begin(), v.end(), k) != v.end(); };
    CHECK(has(kinds("bad"), CallKind::CallWithValue));
    CHECK(has(kinds("good"), CallKind::EtherTransfer));
    CHECK(has(kinds("admin"), CallKind::Selfdestruct));
    CHECK(is_external(CallKind::CallWithValue));
    CHECK_FALSE(is_external(CallKind::InternalCall));

    for (const CallSite& cs : c.find("bad")->calls)
        if (cs.kind == CallKind::CallWithValue) {
            CHECK(cs.value_forwarded);
            CHECK(cs.sends_ether());
        }
}

TEST_CASE("state written after an external call") {
    Built b = build(kBank);
    const ContractAnalysis& c = b.contract("Bank");
    const FunctionAnalysis* bad = c.find("bad");
    bool late_write = false;
    for (const auto& [call, vars] : bad->access.post_call_writes) late_write |= vars.count("balances") > 0;
    CHECK(late_write);

    const FunctionAnalysis* good = c.find("good");
    for (const auto& [call, vars] : good->access.post_call_function_writes) CHECK(vars.count("balances") == 0);
    CHECK(good->access.writes().count("balances") == 1);
}

TEST_CASE("guard facts: sender checks and mutexes") {
    Built b = build(kBank);
    const ContractAnalysis& c = b.contract("Bank");
    CHECK(c.guards.guarding_modifiers.count("onlyOwner") == 1);
    REQUIRE(c.guards.mutex_modifiers.count("lock") == 1);
    CHECK(c.guards.mutex_modifiers.at("lock") == "locked");

    const FunctionDef* admin = c.contract->find_function("admin");
    const FunctionDef* good = c.contract->find_function("good");
    const FunctionDef* bad = c.contract->find_function("bad");
    CHECK(c.guards.functions.at(admin).authorized());
    CHECK(c.guards.functions.at(good).mutex_protected());
    CHECK_FALSE(c.guards.functions.at(bad).authorized());
    CHECK_FALSE(c.guards.functions.at(bad).mutex_protected());
}

TEST_CASE("nesting depth") {
    Built b = build(kBank);
    const ContractAnalysis& c = b.contract("Bank");
    CHECK(nesting_depth(*c.contract->find_function("loop")->body) >= 2);
    CHECK(nesting_depth(*c.contract->find_function("bad")->body) <= 1);
}

TEST_CASE("erc-20 conformance on a partial token") {
    Built b = build(R"(
pragma solidity 0.8.4;
contract T {
    mapping(address => uint256) b;
    function totalSupply() external view returns (uint256) { return 0; }
    function balanceOf(address a) external view returns (uint256) { return b[a]; }
    function transfer(address to, uint256 v) external returns (bool) { b[to] += v; return true; }
    event Transfer(address indexed from, address indexed to, uint256 value);
}
)");
    const ContractBundle* t = b.bundle.contract("T");
    REQUIRE(t != nullptr);
    REQUIRE(t->conformance.has_value());
    CHECK_FALSE(t->conformance->overall);
    auto missing = t->conformance->missing();
    CHECK(std::find(missing.begin(), missing.end(), "approve") != missing.end());
    CHECK(std::find(missing.begin(), missing.end(), "transfer") == missing.end());
    CHECK(t->conformance->item("balanceOf")->signature_match);
}
