#include "tokenaudit/analysis.hpp"

namespace tokenaudit {

namespace {

void set_origin(Stmt& s, const std::string& origin) {
    s.origin = origin;
    for (auto& child : s.body) set_origin(child, origin);
}

void substitute(Expr& e, const std::map<std::string, const Expr*>& params) {
    if (e.kind == ExprKind::Identifier) {
        auto it = params.find(e.name);
        if (it != params.end()) {
            e = *it->second;
            return;
        }
    }
    for (auto& op : e.operands) substitute(op, params);
    for (auto& op : e.option_values) substitute(op, params);
}

void substitute(Stmt& s, const std::map<std::string, const Expr*>& params) {
    for (auto& e : s.exprs) substitute(e, params);
    for (auto& child : s.body) substitute(child, params);
}

// Replace every placeholder in `s` with `inner`. Placeholders directly inside a block
// are spliced; elsewhere they become a nested block.
void fill_placeholders(Stmt& s, const Stmt& inner) {
    std::vector<Stmt> out;
    out.reserve(s.body.size());
    const bool splice = s.kind == StmtKind::Block || s.kind == StmtKind::Unchecked;
    for (auto& child : s.body) {
        if (child.kind == StmtKind::Placeholder) {
            if (splice) {
                for (const auto& st : inner.body) out.push_back(st);
            } else {
                out.push_back(inner);
            }
            continue;
        }
        fill_placeholders(child, inner);
        out.push_back(std::move(child));
    }
    s.body = std::move(out);
}

Stmt wrap(const Stmt& inner, const ModifierInvocation& inv, const ContractScope& scope) {
    const ModifierDef* mod = scope.modifier(inv.name);
    if (!mod) {
        // Base constructor arguments use the same syntax as modifier invocations.
        for (const ContractDef* c : scope.lineage)
            if (c->name == inv.name) return inner;
    }
    if (!mod || !mod->body) {
        Stmt block;
        block.kind = StmtKind::Block;
        block.span = inner.span;
        block.origin = inner.origin;
        Stmt marker;
        marker.kind = StmtKind::ModifierMarker;
        marker.span = inv.span;
        marker.name = inv.name;
        marker.exprs = inv.args;
        marker.origin = inv.name;
        block.body.push_back(std::move(marker));
        for (const auto& st : inner.body) block.body.push_back(st);
        return block;
    }
    Stmt copy = *mod->body;
    set_origin(copy, mod->name);
    if (inv.args.size() == mod->params.size() && !inv.args.empty()) {
        std::map<std::string, const Expr*> params;
        for (std::size_t i = 0; i < inv.args.size(); ++i)
            if (!mod->params[i].name.empty()) params[mod->params[i].name] = &inv.args[i];
        substitute(copy, params);
    }
    fill_placeholders(copy, inner);
    return copy;
}

}  // namespace

Stmt expand_statements(const Stmt& body, const std::vector<ModifierInvocation>& invocations,
                       const ContractScope& scope) {
    Stmt current = body;
    for (auto it = invocations.rbegin(); it != invocations.rend(); ++it) current = wrap(current, *it, scope);
    return current;
}

EffectiveBody expand_modifiers(const FunctionDef& fn, const ContractScope& scope) {
    EffectiveBody out;
    out.function = &fn;
    if (fn.body) {
        out.root = expand_statements(*fn.body, fn.modifiers, scope);
    } else {
        out.root.kind = StmtKind::Block;
        out.root.span = fn.span;
    }
    return out;
}

}  // namespace tokenaudit
