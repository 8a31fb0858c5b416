#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tokenaudit/diagnostic.hpp"
#include "tokenaudit/source.hpp"

namespace tokenaudit {

// ---------------------------------------------------------------------------
// Types

struct TypeExpr {
    enum class Kind { Elementary, User, Mapping, Array, Function, Unknown };

    Kind kind = Kind::Unknown;
    std::string name;               // elementary or (dotted) user type name, normalized
    std::vector<TypeExpr> children;  // mapping: {key, value}; array: {element}
    std::string array_length;       // raw length text; empty for dynamic arrays
    bool payable = false;           // `address payable`
    SourceSpan span;

    /// Canonical text used for signature matching: `uint` -> `uint256`, payable dropped.
    std::string text() const;

    bool is_mapping() const { return kind == Kind::Mapping; }
    bool is_dynamic_array() const { return kind == Kind::Array && array_length.empty(); }
    bool is_address() const { return kind == Kind::Elementary && name == "address"; }
    bool is_unsigned_integer() const;
    bool is_integer() const;
    bool is_bool() const { return kind == Kind::Elementary && name == "bool"; }
    /// string, bytes and dynamic arrays.
    bool is_dynamic_length() const;
    const TypeExpr* mapping_value() const { return is_mapping() ? &children[1] : nullptr; }
};

bool is_elementary_type_name(std::string_view word);
std::string normalize_elementary(std::string_view word);

// ---------------------------------------------------------------------------
// Expressions

enum class ExprKind {
    Identifier,
    ElementaryType,  // `address`, `uint256` used in expression position
    Member,
    Index,
    Call,
    Binary,
    Unary,
    Assignment,
    Conditional,
    Literal,
    Tuple,
    New,
    TypeCast,
    Empty,  // tuple hole
    Unsupported,
};

enum class LiteralKind { Decimal, Hex, Address, String, HexString, Bool };

struct Expr {
    ExprKind kind = ExprKind::Unsupported;
    SourceSpan span;
    /// Identifier/member name, operator text, literal source text, or type name.
    std::string name;
    /// Member: {base}; Index: {base, index?}; Call: {callee, args...}; Binary: {lhs, rhs};
    /// Unary/TypeCast: {operand}; Assignment: {lhs, rhs}; Conditional: {cond, then, else};
    /// Tuple: elements.
    std::vector<Expr> operands;

    // Call options, from `{value: v, gas: g}` or the older `.value(v).gas(g)` chain.
    std::vector<std::string> option_names;
    std::vector<Expr> option_values;

    // Literal details.
    LiteralKind literal = LiteralKind::Decimal;
    std::string unit;  // `ether`, `wei`, `days`...

    // Unary: prefix or postfix. Assignment: raw operator text, e.g. "=+" for `x =+ 1`.
    bool prefix = true;
    std::string raw_operator;

    const Expr& callee() const { return operands.front(); }
    std::size_t arg_count() const { return kind == ExprKind::Call ? operands.size() - 1 : 0; }
    const Expr& arg(std::size_t i) const { return operands[i + 1]; }
    const Expr* option(std::string_view option_name) const;

    bool is_identifier(std::string_view n) const { return kind == ExprKind::Identifier && name == n; }
    bool is_member(std::string_view base, std::string_view member) const;
    /// Digits of a numeric literal, without underscores, exponent or the 0x prefix.
    std::string literal_digits() const;
    int literal_radix() const { return literal == LiteralKind::Decimal ? 10 : 16; }
};

// ---------------------------------------------------------------------------
// Statements

enum class StmtKind {
    Block,
    Expression,
    If,
    For,
    While,
    DoWhile,
    Return,
    Require,
    Assert,
    Revert,
    Emit,
    VarDecl,
    Assembly,
    Placeholder,
    Break,
    Continue,
    Throw,
    Unchecked,
    Try,
    ModifierMarker,  // opaque guard for a modifier whose definition is unknown
    Empty,
    Unsupported,
};

const char* to_string(StmtKind kind);

struct VarDeclItem {
    std::string name;  // empty for a tuple hole
    TypeExpr type;
    std::string location;  // storage/memory/calldata or empty
    SourceSpan span;
};

struct Stmt {
    StmtKind kind = StmtKind::Unsupported;
    SourceSpan span;
    /// If/While/DoWhile: {cond}; For: {cond, post} (Empty when absent); Return: {value?};
    /// Require/Assert/Revert/Emit/ModifierMarker: arguments; VarDecl: {init?};
    /// Expression: {expr}; Try: {call}.
    std::vector<Expr> exprs;
    /// Block/Unchecked: children; If: {then, else?}; For: {init, body}; While/DoWhile: {body};
    /// Try: clause blocks.
    std::vector<Stmt> body;
    std::vector<VarDeclItem> decls;
    std::string name;    // Emit: event; Revert: custom error; ModifierMarker: modifier; Assembly: raw text
    std::string origin;  // modifier that contributed this statement during expansion; empty = function
};

// ---------------------------------------------------------------------------
// Declarations

enum class Visibility { Unspecified, Public, Internal, Private, External };
enum class Mutability { NonPayable, Payable, View, Pure };
enum class FunctionKind { Function, Constructor, Fallback, Receive };
enum class ContractKind { Contract, Library, Interface };

const char* to_string(Visibility v);
const char* to_string(Mutability m);
const char* to_string(ContractKind k);

struct Param {
    std::string name;
    TypeExpr type;
    std::string location;
    bool indexed = false;
    SourceSpan span;
};

struct ModifierInvocation {
    std::string name;
    std::vector<Expr> args;
    SourceSpan span;
};

/// One keyword or modifier in a function header, in source order.
struct HeaderItem {
    enum class Kind { Visibility, Mutability, Modifier, Virtual, Override } kind;
    std::string text;
};

struct FunctionDef {
    std::string name;  // empty for fallback/receive
    FunctionKind kind = FunctionKind::Function;
    std::vector<Param> params;
    std::vector<Param> returns;
    Visibility visibility = Visibility::Unspecified;
    Mutability mutability = Mutability::NonPayable;
    std::vector<ModifierInvocation> modifiers;
    std::vector<HeaderItem> header;
    std::optional<Stmt> body;
    std::optional<std::string> doc;
    SourceSpan span;
    SourceSpan name_span;

    bool is_constructor() const { return kind == FunctionKind::Constructor; }
    bool is_fallback_like() const { return kind == FunctionKind::Fallback || kind == FunctionKind::Receive; }
    /// Callable from outside the contract (public, external, or unspecified which defaults to public).
    bool externally_visible() const {
        return visibility == Visibility::Public || visibility == Visibility::External ||
               visibility == Visibility::Unspecified;
    }
    bool state_mutating() const { return mutability == Mutability::NonPayable || mutability == Mutability::Payable; }
    /// `name(type1,type2)` with normalized parameter types.
    std::string signature() const;
    std::string display_name() const;
};

struct ModifierDef {
    std::string name;
    std::vector<Param> params;
    std::optional<Stmt> body;
    SourceSpan span;
};

struct EventDef {
    std::string name;
    std::vector<Param> params;
    bool anonymous = false;
    SourceSpan span;

    std::string signature() const;
};

struct StateVarDecl {
    std::string name;
    TypeExpr type;
    Visibility visibility = Visibility::Unspecified;
    bool constant = false;
    bool immutable = false;
    std::optional<Expr> initializer;
    std::optional<std::string> doc;
    SourceSpan span;
};

struct UsingFor {
    std::string library;
    std::string target;  // normalized type text, or "*"
    SourceSpan span;
};

struct StructDef {
    std::string name;
    std::vector<Param> fields;
    SourceSpan span;
};

struct BaseSpec {
    std::string name;
    std::vector<Expr> args;
    SourceSpan span;
};

struct ContractDef {
    std::string name;
    ContractKind kind = ContractKind::Contract;
    bool is_abstract = false;
    std::vector<BaseSpec> bases;
    std::vector<StateVarDecl> state_vars;
    std::vector<FunctionDef> functions;
    std::vector<ModifierDef> modifiers;
    std::vector<EventDef> events;
    std::vector<StructDef> structs;
    std::vector<std::string> enums;
    std::vector<UsingFor> using_for;
    std::optional<std::string> doc;
    SourceSpan span;
    SourceSpan name_span;

    const FunctionDef* find_function(std::string_view name) const;
    const ModifierDef* find_modifier(std::string_view name) const;
    const StateVarDecl* find_state_var(std::string_view name) const;
    const EventDef* find_event(std::string_view name) const;
};

// ---------------------------------------------------------------------------
// Pragmas

struct Version {
    int major = 0;
    int minor = 0;
    int patch = 0;

    auto operator<=>(const Version&) const = default;
    std::string str() const;
    static std::optional<Version> parse(std::string_view text);
};

struct VersionComparator {
    enum class Op { Exact, Caret, Tilde, Greater, GreaterEq, Less, LessEq };
    Op op = Op::Exact;
    Version version;
};

struct VersionConstraint {
    enum class Kind { Exact, Caret, Range };
    /// Alternatives separated by `||`; each is a conjunction of comparators.
    std::vector<std::vector<VersionComparator>> alternatives;

    Kind kind() const;
    /// Lowest version admitted by the constraint.
    Version lowest() const;
    static std::optional<VersionConstraint> parse(std::string_view text);
};

struct PragmaDirective {
    enum class Kind { SolidityVersion, Other };
    Kind kind = Kind::Other;
    std::string text;  // everything after `pragma` up to the semicolon
    std::optional<VersionConstraint> constraint;
    SourceSpan span;
};

struct ImportDirective {
    std::string path;
    SourceSpan span;
};

// ---------------------------------------------------------------------------

struct SourceUnit {
    std::shared_ptr<const SourceFile> file;
    std::vector<PragmaDirective> pragmas;
    std::vector<ImportDirective> imports;
    std::vector<ContractDef> contracts;
    std::vector<FunctionDef> free_functions;
    std::vector<SourceSpan> unsupported;
    std::vector<Diagnostic> diagnostics;  // lexer and parser

    /// Lowest compiler version admitted by the solidity pragmas, if any.
    std::optional<Version> min_compiler_version() const;
    bool has_errors() const;
};

}  // namespace tokenaudit
