#include "tokenaudit/ast.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace tokenaudit {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool sized_type(std::string_view word, std::string_view prefix, int lo, int hi, int step) {
    if (word.substr(0, prefix.size()) != prefix) return false;
    auto rest = word.substr(prefix.size());
    if (rest.empty()) return true;
    if (!all_digits(rest)) return false;
    int n = 0;
    std::from_chars(rest.data(), rest.data() + rest.size(), n);
    return n >= lo && n <= hi && n % step == 0;
}

}  // namespace

bool is_elementary_type_name(std::string_view word) {
    if (word == "address" || word == "bool" || word == "string" || word == "byte" || word == "bytes" ||
        word == "fixed" || word == "ufixed")
        return true;
    if (word.substr(0, 4) == "uint") return sized_type(word, "uint", 8, 256, 8);
    if (word.substr(0, 3) == "int") return sized_type(word, "int", 8, 256, 8);
    if (word.substr(0, 5) == "bytes") return word.size() > 5 && sized_type(word, "bytes", 1, 32, 1);
    return false;
}

std::string normalize_elementary(std::string_view word) {
    if (word == "uint") return "uint256";
    if (word == "int") return "int256";
    if (word == "byte") return "bytes1";
    return std::string(word);
}

std::string TypeExpr::text() const {
    switch (kind) {
        case Kind::Elementary:
        case Kind::User: return name;
        case Kind::Mapping: return "mapping(" + children[0].text() + "=>" + children[1].text() + ")";
        case Kind::Array: return children[0].text() + "[" + array_length + "]";
        case Kind::Function: return "function";
        case Kind::Unknown: return "?";
    }
    return "?";
}

bool TypeExpr::is_unsigned_integer() const {
    return kind == Kind::Elementary && name.rfind("uint", 0) == 0;
}

bool TypeExpr::is_integer() const {
    return kind == Kind::Elementary && (name.rfind("uint", 0) == 0 || name.rfind("int", 0) == 0);
}

bool TypeExpr::is_dynamic_length() const {
    if (kind == Kind::Elementary) return name == "string" || name == "bytes";
    return is_dynamic_array();
}

const Expr* Expr::option(std::string_view option_name) const {
    for (std::size_t i = 0; i < option_names.size(); ++i) {
        if (option_names[i] == option_name) return &option_values[i];
    }
    return nullptr;
}

bool Expr::is_member(std::string_view base, std::string_view member) const {
    return kind == ExprKind::Member && name == member && operands.front().is_identifier(base);
}

std::string Expr::literal_digits() const {
    std::string_view raw = name;
    if (literal != LiteralKind::Decimal) raw.remove_prefix(std::min<std::size_t>(2, raw.size()));
    std::string out;
    for (char c : raw) {
        if (c == '_') continue;
        if (literal == LiteralKind::Decimal && (c == 'e' || c == 'E')) break;
        out.push_back(c);
    }
    return out;
}

const char* to_string(StmtKind kind) {
    switch (kind) {
        case StmtKind::Block: return "block";
        case StmtKind::Expression: return "expression";
        case StmtKind::If: return "if";
        case StmtKind::For: return "for";
        case StmtKind::While: return "while";
        case StmtKind::DoWhile: return "do-while";
        case StmtKind::Return: return "return";
        case StmtKind::Require: return "require";
        case StmtKind::Assert: return "assert";
        case StmtKind::Revert: return "revert";
        case StmtKind::Emit: return "emit";
        case StmtKind::VarDecl: return "variable-decl";
        case StmtKind::Assembly: return "assembly";
        case StmtKind::Placeholder: return "placeholder";
        case StmtKind::Break: return "break";
        case StmtKind::Continue: return "continue";
        case StmtKind::Throw: return "throw";
        case StmtKind::Unchecked: return "unchecked";
        case StmtKind::Try: return "try";
        case StmtKind::ModifierMarker: return "modifier-marker";
        case StmtKind::Empty: return "empty";
        case StmtKind::Unsupported: return "unsupported";
    }
    return "?";
}

const char* to_string(Visibility v) {
    switch (v) {
        case Visibility::Unspecified: return "default";
        case Visibility::Public: return "public";
        case Visibility::Internal: return "internal";
        case Visibility::Private: return "private";
        case Visibility::External: return "external";
    }
    return "?";
}

const char* to_string(Mutability m) {
    switch (m) {
        case Mutability::NonPayable: return "nonpayable";
        case Mutability::Payable: return "payable";
        case Mutability::View: return "view";
        case Mutability::Pure: return "pure";
    }
    return "?";
}

const char* to_string(ContractKind k) {
    switch (k) {
        case ContractKind::Contract: return "contract";
        case ContractKind::Library: return "library";
        case ContractKind::Interface: return "interface";
    }
    return "?";
}

std::string FunctionDef::signature() const {
    std::string out = display_name() + "(";
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) out += ",";
        out += params[i].type.text();
    }
    return out + ")";
}

std::string FunctionDef::display_name() const {
    switch (kind) {
        case FunctionKind::Constructor: return "constructor";
        case FunctionKind::Fallback: return name.empty() ? "fallback" : name;
        case FunctionKind::Receive: return "receive";
        case FunctionKind::Function: return name;
    }
    return name;
}

std::string EventDef::signature() const {
    std::string out = name + "(";
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) out += ",";
        out += params[i].type.text();
    }
    return out + ")";
}

const FunctionDef* ContractDef::find_function(std::string_view n) const {
    for (const auto& f : functions)
        if (f.name == n && f.kind == FunctionKind::Function) return &f;
    return nullptr;
}

const ModifierDef* ContractDef::find_modifier(std::string_view n) const {
    for (const auto& m : modifiers)
        if (m.name == n) return &m;
    return nullptr;
}

const StateVarDecl* ContractDef::find_state_var(std::string_view n) const {
    for (const auto& v : state_vars)
        if (v.name == n) return &v;
    return nullptr;
}

const EventDef* ContractDef::find_event(std::string_view n) const {
    for (const auto& e : events)
        if (e.name == n) return &e;
    return nullptr;
}

// ---------------------------------------------------------------------------

std::string Version::str() const {
    return std::to_string(major) + "." + std::to_string(minor) + "." + std::to_string(patch);
}

std::optional<Version> Version::parse(std::string_view text) {
    Version v;
    int* parts[3] = {&v.major, &v.minor, &v.patch};
    std::size_t idx = 0;
    std::size_t pos = 0;
    while (idx < 3 && pos <= text.size()) {
        auto dot = text.find('.', pos);
        auto piece = text.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
        if (piece == "x" || piece == "X" || piece == "*") {
            break;
        }
        if (!all_digits(piece) || piece.size() > 6) return std::nullopt;
        std::from_chars(piece.data(), piece.data() + piece.size(), *parts[idx]);
        ++idx;
        if (dot == std::string_view::npos) break;
        pos = dot + 1;
    }
    if (idx == 0) return std::nullopt;
    return v;
}

std::optional<VersionConstraint> VersionConstraint::parse(std::string_view text) {
    VersionConstraint out;
    std::vector<VersionComparator> current;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r')) ++i;
    };
    while (true) {
        skip_ws();
        if (i >= text.size()) break;
        if (text.substr(i, 2) == "||") {
            if (current.empty()) return std::nullopt;
            out.alternatives.push_back(std::move(current));
            current.clear();
            i += 2;
            continue;
        }
        VersionComparator cmp;
        if (text.substr(i, 2) == ">=") cmp.op = VersionComparator::Op::GreaterEq, i += 2;
        else if (text.substr(i, 2) == "<=") cmp.op = VersionComparator::Op::LessEq, i += 2;
        else if (text[i] == '>') cmp.op = VersionComparator::Op::Greater, ++i;
        else if (text[i] == '<') cmp.op = VersionComparator::Op::Less, ++i;
        else if (text[i] == '^') cmp.op = VersionComparator::Op::Caret, ++i;
        else if (text[i] == '~') cmp.op = VersionComparator::Op::Tilde, ++i;
        else if (text[i] == '=') cmp.op = VersionComparator::Op::Exact, ++i;
        skip_ws();
        std::size_t start = i;
        while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '|' && text[i] != '<' &&
               text[i] != '>' && text[i] != '^' && text[i] != '~' && text[i] != '=')
            ++i;
        auto v = Version::parse(text.substr(start, i - start));
        if (!v) return std::nullopt;
        cmp.version = *v;
        current.push_back(cmp);
    }
    if (!current.empty()) out.alternatives.push_back(std::move(current));
    if (out.alternatives.empty()) return std::nullopt;
    return out;
}

VersionConstraint::Kind VersionConstraint::kind() const {
    if (alternatives.size() == 1 && alternatives[0].size() == 1) {
        switch (alternatives[0][0].op) {
            case VersionComparator::Op::Exact: return Kind::Exact;
            case VersionComparator::Op::Caret: return Kind::Caret;
            default: return Kind::Range;
        }
    }
    return Kind::Range;
}

Version VersionConstraint::lowest() const {
    std::optional<Version> best;
    for (const auto& alt : alternatives) {
        Version lo{0, 0, 0};
        for (const auto& c : alt) {
            Version candidate = c.version;
            switch (c.op) {
                case VersionComparator::Op::Exact:
                case VersionComparator::Op::Caret:
                case VersionComparator::Op::Tilde:
                case VersionComparator::Op::GreaterEq: break;
                case VersionComparator::Op::Greater: ++candidate.patch; break;
                case VersionComparator::Op::Less:
                case VersionComparator::Op::LessEq: continue;
            }
            lo = std::max(lo, candidate);
        }
        if (!best || lo < *best) best = lo;
    }
    return best.value_or(Version{});
}

std::optional<Version> SourceUnit::min_compiler_version() const {
    std::optional<Version> out;
    for (const auto& p : pragmas) {
        if (p.kind != PragmaDirective::Kind::SolidityVersion || !p.constraint) continue;
        auto lo = p.constraint->lowest();
        if (!out || *out < lo) out = lo;
    }
    return out;
}

bool SourceUnit::has_errors() const {
    return std::any_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) { return d.is_error(); });
}

}  // namespace tokenaudit
