#include "tokenaudit/scope.hpp"

#include <algorithm>
#include <set>

#include "tokenaudit/walk.hpp"

namespace tokenaudit {

ProgramIndex::ProgramIndex(std::vector<const SourceUnit*> units) : units_(std::move(units)) {
    for (const SourceUnit* u : units_) {
        for (const auto& c : u->contracts) {
            by_name_.emplace(c.name, &c);  // first definition wins
            unit_of_[&c] = u;
        }
    }
}

const ContractDef* ProgramIndex::find(std::string_view name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? nullptr : it->second;
}

const SourceUnit* ProgramIndex::unit_of(const ContractDef* c) const {
    auto it = unit_of_.find(c);
    return it == unit_of_.end() ? nullptr : it->second;
}

bool ProgramIndex::is_library(std::string_view name) const {
    const ContractDef* c = find(name);
    return c && c->kind == ContractKind::Library;
}

bool ProgramIndex::is_contract_type(std::string_view name) const { return find(name) != nullptr; }

bool ProgramIndex::is_base_of_another(const ContractDef& c) const {
    for (const SourceUnit* u : units_)
        for (const auto& other : u->contracts)
            for (const auto& b : other.bases)
                if (&other != &c && b.name == c.name) return true;
    return false;
}

namespace {

using Chain = std::vector<const ContractDef*>;

bool c3_merge(std::vector<Chain> seqs, Chain& out) {
    while (true) {
        seqs.erase(std::remove_if(seqs.begin(), seqs.end(), [](const Chain& s) { return s.empty(); }), seqs.end());
        if (seqs.empty()) return true;
        const ContractDef* pick = nullptr;
        for (const Chain& s : seqs) {
            const ContractDef* head = s.front();
            bool in_tail = false;
            for (const Chain& other : seqs)
                if (std::find(other.begin() + 1, other.end(), head) != other.end()) in_tail = true;
            if (!in_tail) {
                pick = head;
                break;
            }
        }
        if (!pick) return false;
        out.push_back(pick);
        for (Chain& s : seqs)
            if (!s.empty() && s.front() == pick) s.erase(s.begin());
    }
}

Chain linearize(const ContractDef& c, const ProgramIndex& index, std::set<const ContractDef*>& visiting) {
    if (visiting.count(&c)) return {};
    visiting.insert(&c);
    std::vector<const ContractDef*> direct;
    for (const auto& b : c.bases)
        if (const ContractDef* bc = index.find(b.name); bc && bc != &c) direct.push_back(bc);
    // Solidity lists bases from most base-like to most derived.
    std::reverse(direct.begin(), direct.end());
    std::vector<Chain> seqs;
    for (const ContractDef* b : direct) seqs.push_back(linearize(*b, index, visiting));
    seqs.push_back(direct);
    Chain out{&c};
    if (!c3_merge(seqs, out)) {
        out = {&c};
        for (const Chain& s : seqs)
            for (const ContractDef* x : s)
                if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    }
    visiting.erase(&c);
    return out;
}

}  // namespace

std::vector<const ContractDef*> ProgramIndex::lineage(const ContractDef& c) const {
    std::set<const ContractDef*> visiting;
    return linearize(c, *this, visiting);
}

// ---------------------------------------------------------------------------

const StateVarDecl* ContractScope::state_var(std::string_view name) const {
    for (const auto* v : state_vars)
        if (v->name == name) return v;
    return nullptr;
}

const ModifierDef* ContractScope::modifier(std::string_view name) const {
    for (const auto* m : modifiers)
        if (m->name == name) return m;
    return nullptr;
}

const EventDef* ContractScope::event(std::string_view name) const {
    for (const auto* e : events)
        if (e->name == name) return e;
    return nullptr;
}

const StructDef* ContractScope::struct_def(std::string_view name) const {
    for (const auto* s : structs)
        if (s->name == name) return s;
    return nullptr;
}

std::vector<const FunctionDef*> ContractScope::functions_named(std::string_view name) const {
    std::vector<const FunctionDef*> out;
    for (const auto* f : functions)
        if (f->kind == FunctionKind::Function && f->name == name) out.push_back(f);
    return out;
}

const ContractDef* ContractScope::owner_of(const FunctionDef* fn) const {
    for (const ContractDef* c : lineage)
        for (const auto& f : c->functions)
            if (&f == fn) return c;
    return nullptr;
}

ContractScope make_scope(const ContractDef& contract, const ProgramIndex& index) {
    ContractScope s;
    s.contract = &contract;
    s.lineage = index.lineage(contract);
    std::set<std::string> signatures;
    std::set<std::string> names;
    for (const ContractDef* c : s.lineage) {
        for (const auto& v : c->state_vars) s.state_vars.push_back(&v);
        for (const auto& f : c->functions) {
            if (f.is_constructor() && c != &contract) continue;
            const std::string sig = f.kind == FunctionKind::Function ? f.signature() : f.display_name();
            if (signatures.insert(sig).second) s.functions.push_back(&f);
        }
        for (const auto& m : c->modifiers)
            if (names.insert("modifier " + m.name).second) s.modifiers.push_back(&m);
        for (const auto& e : c->events)
            if (names.insert("event " + e.signature()).second) s.events.push_back(&e);
        for (const auto& st : c->structs) s.structs.push_back(&st);
        for (const auto& u : c->using_for) s.using_for.push_back(&u);
    }
    return s;
}

// ---------------------------------------------------------------------------

namespace {

TypeExpr elementary(std::string name) {
    TypeExpr t;
    t.kind = TypeExpr::Kind::Elementary;
    t.name = std::move(name);
    return t;
}

TypeExpr user(std::string name) {
    TypeExpr t;
    t.kind = TypeExpr::Kind::User;
    t.name = std::move(name);
    return t;
}

bool is_comparison(std::string_view op) {
    return op == "==" || op == "!=" || op == "<" || op == ">" || op == "<=" || op == ">=" || op == "&&" ||
           op == "||";
}

}  // namespace

TypeEnv::TypeEnv(const ContractScope& scope, const ProgramIndex& index) : scope_(scope), index_(index) {}

void TypeEnv::add_local(const std::string& name, LocalVar var) { locals_[name] = std::move(var); }

const LocalVar* TypeEnv::local(std::string_view name) const {
    auto it = locals_.find(name);
    return it == locals_.end() ? nullptr : &it->second;
}

const StateVarDecl* TypeEnv::state_var(std::string_view name) const {
    if (local(name)) return nullptr;
    return scope_.state_var(name);
}

std::string TypeEnv::state_root(const Expr& e) const {
    const Expr* root = access_root(unparen(e));
    if (!root) return {};
    if (const LocalVar* l = local(root->name)) return l->storage_alias;
    if (scope_.state_var(root->name)) return root->name;
    return {};
}

std::optional<TypeExpr> TypeEnv::type_of(const Expr& e) const {
    switch (e.kind) {
        case ExprKind::Identifier: {
            if (const LocalVar* l = local(e.name)) return l->type;
            if (const StateVarDecl* v = scope_.state_var(e.name)) return v->type;
            if (e.name == "this") return user(scope_.contract->name);
            if (e.name == "now") return elementary("uint256");
            if (index_.is_contract_type(e.name)) return user(e.name);
            return std::nullopt;
        }
        case ExprKind::Member: {
            const Expr& base = e.operands.front();
            if (base.is_identifier("msg")) {
                if (e.name == "sender") return elementary("address");
                if (e.name == "value" || e.name == "gas") return elementary("uint256");
                if (e.name == "data") return elementary("bytes");
                if (e.name == "sig") return elementary("bytes4");
            }
            if (base.is_identifier("tx")) {
                if (e.name == "origin") return elementary("address");
                return elementary("uint256");
            }
            if (base.is_identifier("block")) {
                if (e.name == "coinbase") return elementary("address");
                return elementary("uint256");
            }
            if (e.name == "balance" || e.name == "length") return elementary("uint256");
            auto bt = type_of(base);
            if (bt && bt->kind == TypeExpr::Kind::User) {
                if (const StructDef* sd = scope_.struct_def(bt->name))
                    for (const auto& f : sd->fields)
                        if (f.name == e.name) return f.type;
            }
            return std::nullopt;
        }
        case ExprKind::Index: {
            auto bt = type_of(e.operands.front());
            if (!bt) return std::nullopt;
            if (bt->kind == TypeExpr::Kind::Mapping || bt->kind == TypeExpr::Kind::Array) {
                return bt->kind == TypeExpr::Kind::Mapping ? bt->children[1] : bt->children[0];
            }
            if (bt->kind == TypeExpr::Kind::Elementary && bt->name == "bytes") return elementary("bytes1");
            return std::nullopt;
        }
        case ExprKind::TypeCast: return elementary(e.name);
        case ExprKind::Call: {
            const Expr& callee = e.callee();
            if (callee.kind == ExprKind::Identifier) {
                if (index_.is_contract_type(callee.name)) return user(callee.name);
                for (const FunctionDef* f : scope_.functions_named(callee.name))
                    if (f->returns.size() == 1) return f->returns[0].type;
                if (callee.name == "keccak256" || callee.name == "sha256" || callee.name == "sha3")
                    return elementary("bytes32");
                if (callee.name == "ecrecover") return elementary("address");
            }
            if (callee.kind == ExprKind::Member) {
                const Expr& base = callee.operands.front();
                // Library helpers such as SafeMath keep the operand type.
                for (const UsingFor* u : scope_.using_for) {
                    if (const ContractDef* lib = index_.find(u->library)) {
                        for (const auto& f : lib->functions)
                            if (f.name == callee.name && f.returns.size() == 1) return f.returns[0].type;
                    }
                }
                if (base.kind == ExprKind::Identifier && index_.is_library(base.name)) {
                    if (const ContractDef* lib = index_.find(base.name))
                        for (const auto& f : lib->functions)
                            if (f.name == callee.name && f.returns.size() == 1) return f.returns[0].type;
                }
                if (auto bt = type_of(base); bt && bt->kind == TypeExpr::Kind::User) {
                    if (const ContractDef* c = index_.find(bt->name))
                        for (const auto& f : c->functions)
                            if (f.name == callee.name && f.returns.size() == 1) return f.returns[0].type;
                }
            }
            return std::nullopt;
        }
        case ExprKind::Literal:
            switch (e.literal) {
                case LiteralKind::Decimal:
                case LiteralKind::Hex: return elementary("uint256");
                case LiteralKind::Address: return elementary("address");
                case LiteralKind::String: return elementary("string");
                case LiteralKind::HexString: return elementary("bytes");
                case LiteralKind::Bool: return elementary("bool");
            }
            return std::nullopt;
        case ExprKind::Binary:
            if (is_comparison(e.name)) return elementary("bool");
            if (auto lt = type_of(e.operands[0])) return lt;
            return type_of(e.operands[1]);
        case ExprKind::Unary:
            if (e.name == "!") return elementary("bool");
            return type_of(e.operands.front());
        case ExprKind::Assignment: return type_of(e.operands.front());
        case ExprKind::Conditional: return type_of(e.operands[1]);
        default: return std::nullopt;
    }
}

bool TypeEnv::is_address_like(const Expr& e) const {
    const Expr& x = unparen(e);
    if (x.is_member("msg", "sender") || x.is_member("tx", "origin") || x.is_member("block", "coinbase")) return true;
    if (x.kind == ExprKind::TypeCast && x.name == "address") return true;
    auto t = type_of(x);
    return t && t->is_address();
}

TypeEnv make_type_env(const FunctionDef& fn, const Stmt* body, const ContractScope& scope, const ProgramIndex& index) {
    TypeEnv env(scope, index);
    for (const auto& p : fn.params)
        if (!p.name.empty()) env.add_local(p.name, {p.type, p.location, true, false, p.span, {}});
    for (const auto& p : fn.returns)
        if (!p.name.empty()) env.add_local(p.name, {p.type, p.location, false, true, p.span, {}});
    if (body) {
        visit_stmt(*body, [&](const Stmt& s) {
            if (s.kind != StmtKind::VarDecl) return;
            for (const auto& d : s.decls) {
                if (d.name.empty()) continue;
                LocalVar v{d.type, d.location, false, false, d.span, {}};
                if (d.location == "storage" && s.decls.size() == 1 && !s.exprs.empty())
                    v.storage_alias = env.state_root(s.exprs.front());
                env.add_local(d.name, std::move(v));
            }
        });
    }
    return env;
}

}  // namespace tokenaudit
