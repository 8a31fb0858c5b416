#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tokenaudit/rules.hpp"
#include "tokenaudit/walk.hpp"

namespace tokenaudit::rules {

using Evidence = std::vector<std::pair<std::string, std::string>>;

struct Ctx {
    const AnalysisBundle& bundle;
    const RuleConfig& config;
    int check = 0;
    std::vector<Finding>* out = nullptr;

    void report(const SourceSpan& span, std::string message, const ContractDef* contract = nullptr,
                const FunctionDef* function = nullptr, Evidence evidence = {}) const;
};

using CheckFn = void (*)(Ctx&);

/// Check implementations by id. Informational-only rows have no entry.
const std::map<int, CheckFn>& check_table();
void register_source_checks(std::map<int, CheckFn>& table);
void register_flow_checks(std::map<int, CheckFn>& table);
void register_token_checks(std::map<int, CheckFn>& table);

// ---------------------------------------------------------------------------
// Traversal

/// Functions analyzed in the context of `cb` and declared by it.
std::vector<const FunctionAnalysis*> own_functions(const ContractBundle& cb);

/// Every raw (unexpanded) body declared in a contract: functions and modifiers.
struct BodyRef {
    const Stmt* body = nullptr;
    const FunctionDef* function = nullptr;  // null for modifiers
    const ModifierDef* modifier = nullptr;
};
std::vector<BodyRef> own_bodies(const ContractDef& c);

/// Visit every expression of a contract: bodies, state-variable initializers, base arguments.
void visit_contract_exprs(const ContractDef& c, const std::function<void(const Expr&, const FunctionDef*)>& f);

// ---------------------------------------------------------------------------
// Versions

/// Lowest compiler version allowed by the file's pragma, if any.
std::optional<Version> file_version(const SourceUnit& unit);
/// True when the file may compile below `v`. A file without a pragma may compile anywhere.
bool may_compile_below(const SourceUnit& unit, Version v);

// ---------------------------------------------------------------------------
// Expressions

bool is_msg_sender(const Expr& e);
bool is_zero_address(const Expr& e);
bool is_self_balance(const Expr& e);
/// block.timestamp, now, block.number (the time proxies).
bool is_time_attribute(const Expr& e);
/// Time proxies plus block.difficulty, block.coinbase, block.gaslimit, blockhash(...).
bool is_chain_attribute(const Expr& e);
bool contains(const Expr& e, const std::function<bool(const Expr&)>& pred);
bool mentions_identifier(const Expr& e, std::string_view name);
/// Statement reverts unconditionally (revert/throw, possibly as the first statement of a block).
bool reverts(const Stmt& s);

/// Conditions a statement enforces: require/assert arguments and `if (c) revert` conditions.
const Expr* enforced_condition(const Stmt& s);

/// State variable written by an expression statement (plain or compound assignment,
/// ++/--, delete), with the assignment node.
struct WriteSite {
    std::string var;
    const Expr* node = nullptr;
};
std::vector<WriteSite> writes_in(const Stmt& s, const ContractScope& scope);

// ---------------------------------------------------------------------------
// Token helpers

/// Statements of a function with internal callees spliced in after the calling statement.
struct FlatStmt {
    const Stmt* stmt = nullptr;
    const FunctionDef* function = nullptr;
};
std::vector<FlatStmt> flatten(const FunctionDef& fn, const ContractScope& scope);

struct TokenVars {
    std::string balances;
    std::string allowance;
};
TokenVars token_vars(const ContractScope& scope);

/// Token method with a body, picked by canonical parameter count.
const FunctionDef* token_method(const ContractScope& scope, std::string_view name);

}  // namespace tokenaudit::rules
