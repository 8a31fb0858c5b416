#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tokenaudit/ast.hpp"
#include "tokenaudit/scope.hpp"

namespace tokenaudit {

// ---------------------------------------------------------------------------
// Modifier expansion

/// Function body with modifier bodies wrapped around it. Every statement carries its
/// origin in `Stmt::origin`: the modifier name, or empty for the function itself.
struct EffectiveBody {
    const FunctionDef* function = nullptr;
    Stmt root;  // a Block

    /// Origin of a statement inside `root`: modifier name or "" for the function.
    static const std::string& origin_of(const Stmt& s) { return s.origin; }
};

/// Wrap `body` in the given modifiers, outermost first. Unknown modifiers become
/// `ModifierMarker` statements placed before the inner content.
Stmt expand_statements(const Stmt& body, const std::vector<ModifierInvocation>& invocations,
                       const ContractScope& scope);

EffectiveBody expand_modifiers(const FunctionDef& fn, const ContractScope& scope);

// ---------------------------------------------------------------------------
// Control-flow graph

enum class EdgeKind { Seq, True, False, LoopBack };
const char* to_string(EdgeKind k);

/// Which part of a statement a CFG item stands for. Compound statements occupy the
/// block where their condition is evaluated; a `for` header also owns a Post item.
enum class ItemPart { Whole, Condition, Post };

struct CfgItem {
    const Stmt* stmt = nullptr;
    ItemPart part = ItemPart::Whole;
};

struct BasicBlock {
    int id = 0;
    std::vector<CfgItem> items;
};

struct CfgEdge {
    int from = 0;
    int to = 0;  // block id, or kNormalExit / kRevertExit
    EdgeKind kind = EdgeKind::Seq;
};

struct Cfg {
    static constexpr int kNormalExit = -1;
    static constexpr int kRevertExit = -2;

    std::vector<BasicBlock> blocks;
    std::vector<CfgEdge> edges;
    int entry = 0;

    std::vector<int> successors(int block) const;
    std::vector<int> predecessors(int block) const;
    std::set<int> reachable_from(int block) const;  // includes `block`
    std::vector<CfgEdge> loop_edges() const;
};

Cfg build_cfg(const EffectiveBody& body);

/// Maximum nesting depth of compound statements (if/loops/blocks inside them).
int nesting_depth(const Stmt& s);

// ---------------------------------------------------------------------------
// Call sites

enum class CallKind {
    LowLevelCall,
    CallWithValue,
    Send,
    EtherTransfer,
    Delegatecall,
    Selfdestruct,
    ExternalMemberCall,
    InternalCall,
    LibraryCall,
    EventEmit,
    // Not calls in the message-passing sense but call syntax all the same.
    Builtin,
    TypeConversion,
    Creation,
};
const char* to_string(CallKind k);
bool is_external(CallKind k);

struct CallSite {
    SourceSpan span;
    CallKind kind = CallKind::Builtin;
    std::string target;  // source text of the receiver or callee
    std::string member;  // member name for member calls, function name for internal calls
    bool value_forwarded = false;
    std::optional<std::string> gas_literal;  // digits of a literal gas stipend
    bool return_used = true;
    bool in_loop = false;
    const Expr* expr = nullptr;  // null for emit statements
    const Stmt* stmt = nullptr;
    std::string origin;  // modifier origin of the enclosing statement
    const FunctionDef* callee = nullptr;  // resolved internal or library function
    const Expr* value = nullptr;          // forwarded wei, if any
    const Expr* receiver = nullptr;       // address receiving the call/ether

    bool sends_ether() const;
};

std::vector<CallSite> classify_calls(const EffectiveBody& body, const ContractScope& scope, const TypeEnv& env);

// ---------------------------------------------------------------------------
// State access

struct AccessEvent {
    enum class Kind { Read, Write, Call } kind = Kind::Read;
    std::string var;      // state variable, or "self-balance"
    int call = -1;        // index into the function's call sites
    bool external = false;  // Call events: an external call, possibly inside an internal callee
    bool from_modifier = false;
    SourceSpan span;
};

struct StateAccessSummary {
    /// Events per CFG block in evaluation order.
    std::vector<std::vector<AccessEvent>> per_block;
    /// External call site (or internal call reaching one) -> state writes on some path after it.
    std::map<int, std::set<std::string>> post_call_writes;
    /// Same, restricted to writes that are not modifier-origin, with one representative span each.
    std::map<int, std::map<std::string, SourceSpan>> post_call_function_writes;

    std::set<std::string> reads() const;
    std::set<std::string> writes() const;
};

/// Flattened, control-flow-insensitive effects of a whole function (used to inline
/// internal callees into callers).
struct FunctionEffects {
    std::vector<AccessEvent> events;
    bool has_external_call = false;
};

class EffectsCache;

StateAccessSummary state_access(const Cfg& cfg, const std::vector<CallSite>& calls, const TypeEnv& env,
                                EffectsCache& cache);

// ---------------------------------------------------------------------------
// Guards

struct FunctionGuards {
    std::optional<std::string> sender_guard;  // compared state variable (or expression text)
    std::set<std::string> guarding_modifiers;
    std::set<std::string> mutex_vars;
    bool mutex_protected() const { return !mutex_vars.empty(); }
    bool authorized() const { return sender_guard.has_value() || !guarding_modifiers.empty(); }
};

struct GuardFacts {
    std::set<std::string> guarding_modifiers;              // modifiers with a sender check
    std::map<std::string, std::string> mutex_modifiers;    // modifier -> lock variable
    std::map<const FunctionDef*, FunctionGuards> functions;
};

GuardFacts guard_facts(const ContractScope& scope);

/// Sender-equality guard inside a statement list (require/assert/if-revert), if any.
std::optional<std::string> find_sender_guard(const Stmt& body, const ContractScope& scope);

// ---------------------------------------------------------------------------
// Per-function bundle

struct FunctionAnalysis {
    const FunctionDef* function = nullptr;
    const ContractDef* owner = nullptr;  // contract declaring the function
    EffectiveBody body;
    Cfg cfg;
    std::vector<CallSite> calls;
    StateAccessSummary access;
    std::unique_ptr<TypeEnv> env;
};

class EffectsCache {
public:
    EffectsCache(const ContractScope& scope, const ProgramIndex& index) : scope_(scope), index_(index) {}
    /// Effects of a function in this scope; recursion yields an empty summary.
    const FunctionEffects& effects(const FunctionDef* fn);

private:
    const ContractScope& scope_;
    const ProgramIndex& index_;
    std::map<const FunctionDef*, FunctionEffects> done_;
    std::set<const FunctionDef*> active_;
};

struct ContractAnalysis {
    const ContractDef* contract = nullptr;
    ContractScope scope;
    GuardFacts guards;
    std::vector<std::unique_ptr<FunctionAnalysis>> functions;  // every function in scope with a body

    const FunctionAnalysis* find(const FunctionDef* fn) const;
    const FunctionAnalysis* find(std::string_view name) const;
};

std::unique_ptr<FunctionAnalysis> analyze_function(const FunctionDef& fn, const ContractScope& scope,
                                                   const ProgramIndex& index, EffectsCache& cache);
std::unique_ptr<ContractAnalysis> analyze_contract(const ContractDef& c, const ProgramIndex& index);

}  // namespace tokenaudit
