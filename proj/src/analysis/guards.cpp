#include "tokenaudit/analysis.hpp"
#include "tokenaudit/walk.hpp"

namespace tokenaudit {

namespace {

bool is_sender(const Expr& e) {
    const Expr& x = unparen(e);
    if (x.is_member("msg", "sender")) return true;
    if (x.kind == ExprKind::TypeCast && x.name == "address") return is_sender(x.operands.front());
    return x.kind == ExprKind::Call && x.callee().is_identifier("_msgSender") && x.arg_count() == 0;
}

std::string guard_name(const Expr& other) {
    const Expr* root = access_root(unparen(other));
    if (root) return root->name;
    return std::string(other.span.text());
}

// `msg.sender == X`, `X == msg.sender`, `isAdmin[msg.sender]`, and conjunctions thereof.
std::optional<std::string> sender_check(const Expr& cond, bool negated) {
    const Expr& c = unparen(cond);
    if (c.kind == ExprKind::Binary && c.name == (negated ? "||" : "&&")) {
        if (auto l = sender_check(c.operands[0], negated)) return l;
        return sender_check(c.operands[1], negated);
    }
    if (c.kind == ExprKind::Binary && c.name == (negated ? "!=" : "==")) {
        if (is_sender(c.operands[0]) && !is_sender(c.operands[1])) return guard_name(c.operands[1]);
        if (is_sender(c.operands[1]) && !is_sender(c.operands[0])) return guard_name(c.operands[0]);
    }
    if (c.kind == ExprKind::Unary && c.name == "!") return sender_check(c.operands[0], !negated);
    if (!negated && c.kind == ExprKind::Index && c.operands.size() == 2 && is_sender(c.operands[1]))
        return guard_name(c.operands[0]);
    return std::nullopt;
}

bool reverts(const Stmt& s) {
    if (s.kind == StmtKind::Revert || s.kind == StmtKind::Throw) return true;
    if (s.kind == StmtKind::Block && !s.body.empty()) return reverts(s.body.front());
    return false;
}

std::optional<std::string> sender_guard_impl(const Stmt& body, const ContractScope& scope, int depth) {
    std::optional<std::string> found;
    visit_stmt(body, [&](const Stmt& s) {
        if (found) return;
        if ((s.kind == StmtKind::Require || s.kind == StmtKind::Assert) && !s.exprs.empty()) {
            found = sender_check(s.exprs[0], false);
        } else if (s.kind == StmtKind::If && !s.body.empty() && reverts(s.body[0])) {
            found = sender_check(s.exprs[0], true);
        } else if (s.kind == StmtKind::Expression && depth < 2) {
            const Expr& e = s.exprs[0];
            if (e.kind == ExprKind::Call && e.callee().kind == ExprKind::Identifier) {
                for (const FunctionDef* f : scope.functions_named(e.callee().name))
                    if (f->body && !found) found = sender_guard_impl(*f->body, scope, depth + 1);
            }
        }
    });
    return found;
}

bool is_bool_literal(const Expr& e, bool value) {
    const Expr& x = unparen(e);
    return x.kind == ExprKind::Literal && x.literal == LiteralKind::Bool && x.name == (value ? "true" : "false");
}

// Boolean state variable assigned `value` by a top-level statement.
std::optional<std::string> bool_write(const Stmt& s, const ContractScope& scope, bool value) {
    if (s.kind != StmtKind::Expression) return std::nullopt;
    const Expr& e = s.exprs[0];
    if (e.kind != ExprKind::Assignment || e.name != "=" || !is_bool_literal(e.operands[1], value))
        return std::nullopt;
    const Expr& lhs = unparen(e.operands[0]);
    if (lhs.kind != ExprKind::Identifier) return std::nullopt;
    const StateVarDecl* v = scope.state_var(lhs.name);
    if (!v || !v->type.is_bool()) return std::nullopt;
    return lhs.name;
}

std::optional<std::string> mutex_variable(const ModifierDef& m, const ContractScope& scope) {
    if (!m.body) return std::nullopt;
    const auto& stmts = m.body->body;
    std::size_t placeholder = stmts.size();
    for (std::size_t i = 0; i < stmts.size(); ++i)
        if (stmts[i].kind == StmtKind::Placeholder) placeholder = i;
    if (placeholder == stmts.size()) return std::nullopt;
    for (std::size_t i = 0; i < placeholder; ++i) {
        auto set = bool_write(stmts[i], scope, true);
        if (!set) continue;
        for (std::size_t j = placeholder + 1; j < stmts.size(); ++j) {
            auto clear = bool_write(stmts[j], scope, false);
            if (clear && *clear == *set) return set;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::string> find_sender_guard(const Stmt& body, const ContractScope& scope) {
    return sender_guard_impl(body, scope, 0);
}

GuardFacts guard_facts(const ContractScope& scope) {
    GuardFacts facts;
    for (const ModifierDef* m : scope.modifiers) {
        if (!m->body) continue;
        if (find_sender_guard(*m->body, scope)) facts.guarding_modifiers.insert(m->name);
        if (auto lock = mutex_variable(*m, scope)) facts.mutex_modifiers[m->name] = *lock;
    }
    for (const FunctionDef* fn : scope.functions) {
        FunctionGuards g;
        if (fn->body) g.sender_guard = find_sender_guard(*fn->body, scope);
        for (const auto& inv : fn->modifiers) {
            if (facts.guarding_modifiers.count(inv.name)) g.guarding_modifiers.insert(inv.name);
            if (auto it = facts.mutex_modifiers.find(inv.name); it != facts.mutex_modifiers.end())
                g.mutex_vars.insert(it->second);
        }
        facts.functions[fn] = std::move(g);
    }
    return facts;
}

}  // namespace tokenaudit
