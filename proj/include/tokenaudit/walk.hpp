#pragma once

#include <functional>

#include "tokenaudit/ast.hpp"

namespace tokenaudit {

/// Pre-order visit of an expression and all of its sub-expressions, including call options.
template <typename F>
void visit_expr(const Expr& e, F&& f) {
    f(e);
    for (const auto& op : e.operands) visit_expr(op, f);
    for (const auto& op : e.option_values) visit_expr(op, f);
}

/// Pre-order visit of a statement tree. The callback receives each statement.
template <typename F>
void visit_stmt(const Stmt& s, F&& f) {
    f(s);
    for (const auto& child : s.body) visit_stmt(child, f);
}

/// Every expression reachable from a statement tree, with the statement that owns it.
template <typename F>
void visit_stmt_exprs(const Stmt& s, F&& f) {
    visit_stmt(s, [&](const Stmt& st) {
        for (const auto& e : st.exprs) visit_expr(e, [&](const Expr& sub) { f(st, sub); });
    });
}

/// Root identifier of an lvalue or access path (`a[i].b` -> `a`), or nullptr.
inline const Expr* access_root(const Expr& e) {
    const Expr* cur = &e;
    while (cur->kind == ExprKind::Index || cur->kind == ExprKind::Member) {
        if (cur->operands.empty()) return nullptr;
        cur = &cur->operands.front();
    }
    return cur->kind == ExprKind::Identifier ? cur : nullptr;
}

/// Strip redundant parentheses-only tuples.
inline const Expr& unparen(const Expr& e) {
    const Expr* cur = &e;
    while (cur->kind == ExprKind::Tuple && cur->name == "()" && cur->operands.size() == 1) cur = &cur->operands.front();
    return *cur;
}

}  // namespace tokenaudit
