#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tokenaudit/ast.hpp"

namespace tokenaudit {

/// Name resolution across every contract of the analyzed file set.
class ProgramIndex {
public:
    explicit ProgramIndex(std::vector<const SourceUnit*> units);

    const std::vector<const SourceUnit*>& units() const { return units_; }
    const ContractDef* find(std::string_view name) const;
    const SourceUnit* unit_of(const ContractDef* c) const;
    bool is_library(std::string_view name) const;
    bool is_contract_type(std::string_view name) const;
    /// Linearized inheritance chain, most derived first. Unresolved bases are skipped.
    std::vector<const ContractDef*> lineage(const ContractDef& c) const;
    /// True if some other contract in the file set lists `c` as a base.
    bool is_base_of_another(const ContractDef& c) const;

private:
    std::vector<const SourceUnit*> units_;
    std::map<std::string, const ContractDef*, std::less<>> by_name_;
    std::map<const ContractDef*, const SourceUnit*> unit_of_;
};

/// Members visible inside one contract, including inherited ones.
struct ContractScope {
    const ContractDef* contract = nullptr;
    std::vector<const ContractDef*> lineage;  // most derived first
    std::vector<const StateVarDecl*> state_vars;
    std::vector<const FunctionDef*> functions;  // overridden base versions removed
    std::vector<const ModifierDef*> modifiers;
    std::vector<const EventDef*> events;
    std::vector<const StructDef*> structs;
    std::vector<const UsingFor*> using_for;

    const StateVarDecl* state_var(std::string_view name) const;
    const ModifierDef* modifier(std::string_view name) const;
    const EventDef* event(std::string_view name) const;
    const StructDef* struct_def(std::string_view name) const;
    std::vector<const FunctionDef*> functions_named(std::string_view name) const;
    /// Contract in the lineage that declares `fn`.
    const ContractDef* owner_of(const FunctionDef* fn) const;
};

ContractScope make_scope(const ContractDef& contract, const ProgramIndex& index);

/// Local names (parameters, named returns, declared variables) of one function body.
struct LocalVar {
    TypeExpr type;
    std::string location;
    bool is_param = false;
    bool is_return = false;
    SourceSpan span;
    /// Storage pointer initialized from a state variable path: the variable it aliases.
    std::string storage_alias;
};

/// Type lookup for expressions inside one function. Inference is shallow and best-effort.
class TypeEnv {
public:
    TypeEnv(const ContractScope& scope, const ProgramIndex& index);

    void add_local(const std::string& name, LocalVar var);
    const LocalVar* local(std::string_view name) const;
    const std::map<std::string, LocalVar, std::less<>>& locals() const { return locals_; }

    /// State variable named by `name`, unless shadowed by a local.
    const StateVarDecl* state_var(std::string_view name) const;
    /// State variable an lvalue/access path ultimately refers to ("" if none).
    std::string state_root(const Expr& e) const;

    std::optional<TypeExpr> type_of(const Expr& e) const;
    bool is_address_like(const Expr& e) const;

    const ContractScope& scope() const { return scope_; }
    const ProgramIndex& index() const { return index_; }

private:
    const ContractScope& scope_;
    const ProgramIndex& index_;
    std::map<std::string, LocalVar, std::less<>> locals_;
};

/// Populate a TypeEnv with the parameters, returns and declared locals of `fn`.
TypeEnv make_type_env(const FunctionDef& fn, const Stmt* body, const ContractScope& scope, const ProgramIndex& index);

}  // namespace tokenaudit
