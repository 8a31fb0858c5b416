#include <algorithm>

#include "internal.hpp"

namespace tokenaudit::rules {

void Ctx::report(const SourceSpan& span, std::string message, const ContractDef* contract,
                 const FunctionDef* function, Evidence evidence) const {
    const CheckDescriptor* d = find_check(check);
    Finding f;
    f.check = check;
    f.severity = config.severity_of(*d);
    f.file = span.file ? span.file->path() : std::string();
    f.start = span.start;
    f.end = span.end;
    f.line = span.line;
    f.column = span.column;
    f.message = std::move(message);
    if (contract) f.contract = contract->name;
    if (function) f.function = function->display_name();
    f.evidence = std::move(evidence);
    out->push_back(std::move(f));
}

std::vector<const FunctionAnalysis*> own_functions(const ContractBundle& cb) {
    std::vector<const FunctionAnalysis*> out;
    if (!cb.analysis) return out;
    for (const auto& fa : cb.analysis->functions)
        if (fa->owner == cb.contract) out.push_back(fa.get());
    return out;
}

std::vector<BodyRef> own_bodies(const ContractDef& c) {
    std::vector<BodyRef> out;
    for (const auto& f : c.functions)
        if (f.body) out.push_back({&*f.body, &f, nullptr});
    for (const auto& m : c.modifiers)
        if (m.body) out.push_back({&*m.body, nullptr, &m});
    return out;
}

void visit_contract_exprs(const ContractDef& c, const std::function<void(const Expr&, const FunctionDef*)>& f) {
    for (const auto& b : c.bases)
        for (const auto& a : b.args) visit_expr(a, [&](const Expr& e) { f(e, nullptr); });
    for (const auto& v : c.state_vars)
        if (v.initializer) visit_expr(*v.initializer, [&](const Expr& e) { f(e, nullptr); });
    for (const auto& fn : c.functions)
        for (const auto& inv : fn.modifiers)
            for (const auto& a : inv.args) visit_expr(a, [&](const Expr& e) { f(e, &fn); });
    for (const BodyRef& b : own_bodies(c))
        visit_stmt_exprs(*b.body, [&](const Stmt&, const Expr& e) { f(e, b.function); });
}

std::optional<Version> file_version(const SourceUnit& unit) { return unit.min_compiler_version(); }

bool may_compile_below(const SourceUnit& unit, Version v) {
    auto have = file_version(unit);
    return !have || *have < v;
}

bool is_msg_sender(const Expr& e) {
    const Expr& x = unparen(e);
    if (x.is_member("msg", "sender")) return true;
    if (x.kind == ExprKind::TypeCast) return is_msg_sender(x.operands.front());
    return x.kind == ExprKind::Call && x.callee().is_identifier("_msgSender");
}

bool is_zero_address(const Expr& e) {
    const Expr& x = unparen(e);
    if (x.kind == ExprKind::TypeCast && x.name == "address") return is_zero_address(x.operands.front());
    if (x.kind != ExprKind::Literal) return false;
    if (x.literal != LiteralKind::Decimal && x.literal != LiteralKind::Hex && x.literal != LiteralKind::Address)
        return false;
    const std::string digits = x.literal_digits();
    return !digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return c == '0'; });
}

bool is_self_balance(const Expr& e) {
    const Expr& x = unparen(e);
    if (x.kind != ExprKind::Member || x.name != "balance") return false;
    const Expr& base = unparen(x.operands.front());
    if (base.is_identifier("this")) return true;
    return base.kind == ExprKind::TypeCast && unparen(base.operands.front()).is_identifier("this");
}

bool is_time_attribute(const Expr& e) {
    return e.is_identifier("now") || e.is_member("block", "timestamp") || e.is_member("block", "number");
}

bool is_chain_attribute(const Expr& e) {
    if (is_time_attribute(e)) return true;
    if (e.is_member("block", "difficulty") || e.is_member("block", "coinbase") || e.is_member("block", "gaslimit") ||
        e.is_member("block", "prevrandao"))
        return true;
    if (e.kind == ExprKind::Call) {
        const Expr& c = e.callee();
        return c.is_identifier("blockhash") || c.is_member("block", "blockhash");
    }
    return false;
}

bool contains(const Expr& e, const std::function<bool(const Expr&)>& pred) {
    bool found = false;
    visit_expr(e, [&](const Expr& x) { found = found || pred(x); });
    return found;
}

bool mentions_identifier(const Expr& e, std::string_view name) {
    return contains(e, [&](const Expr& x) { return x.is_identifier(name); });
}

bool reverts(const Stmt& s) {
    if (s.kind == StmtKind::Revert || s.kind == StmtKind::Throw) return true;
    if ((s.kind == StmtKind::Block || s.kind == StmtKind::Unchecked) && !s.body.empty()) return reverts(s.body.front());
    return false;
}

const Expr* enforced_condition(const Stmt& s) {
    if ((s.kind == StmtKind::Require || s.kind == StmtKind::Assert) && !s.exprs.empty()) return &s.exprs[0];
    if (s.kind == StmtKind::If && !s.body.empty() && reverts(s.body[0])) return &s.exprs[0];
    return nullptr;
}

namespace {

void collect_writes(const Expr& lhs, const Expr* node, const ContractScope& scope, std::vector<WriteSite>& out) {
    const Expr& l = unparen(lhs);
    if (l.kind == ExprKind::Tuple) {
        for (const auto& el : l.operands)
            if (el.kind != ExprKind::Empty) collect_writes(el, node, scope, out);
        return;
    }
    const Expr* root = access_root(l);
    if (root && scope.state_var(root->name)) out.push_back({root->name, node});
}

}  // namespace

std::vector<WriteSite> writes_in(const Stmt& s, const ContractScope& scope) {
    std::vector<WriteSite> out;
    for (const auto& top : s.exprs) {
        visit_expr(top, [&](const Expr& e) {
            if (e.kind == ExprKind::Assignment) collect_writes(e.operands[0], &e, scope, out);
            if (e.kind == ExprKind::Unary && (e.name == "++" || e.name == "--" || e.name == "delete"))
                collect_writes(e.operands[0], &e, scope, out);
        });
    }
    return out;
}

namespace {

void flatten_into(const Stmt& body, const FunctionDef* fn, const ContractScope& scope,
                  std::set<const FunctionDef*>& active, std::vector<FlatStmt>& out) {
    visit_stmt(body, [&](const Stmt& s) {
        out.push_back({&s, fn});
        for (const auto& top : s.exprs) {
            visit_expr(top, [&](const Expr& e) {
                if (e.kind != ExprKind::Call || e.callee().kind != ExprKind::Identifier) return;
                for (const FunctionDef* callee : scope.functions_named(e.callee().name)) {
                    if (!callee->body || callee->params.size() != e.arg_count() || active.count(callee)) continue;
                    active.insert(callee);
                    flatten_into(*callee->body, callee, scope, active, out);
                    active.erase(callee);
                    break;
                }
            });
        }
    });
}

}  // namespace

std::vector<FlatStmt> flatten(const FunctionDef& fn, const ContractScope& scope) {
    std::vector<FlatStmt> out;
    std::set<const FunctionDef*> active{&fn};
    for (const auto& inv : fn.modifiers) {
        const ModifierDef* m = scope.modifier(inv.name);
        if (m && m->body) flatten_into(*m->body, &fn, scope, active, out);
    }
    if (fn.body) flatten_into(*fn.body, &fn, scope, active, out);
    return out;
}

namespace {

std::string returned_root(const FunctionDef* fn, const ContractScope& scope) {
    if (!fn || !fn->body) return {};
    std::string found;
    visit_stmt(*fn->body, [&](const Stmt& s) {
        if (!found.empty() || s.kind != StmtKind::Return || s.exprs.empty()) return;
        const Expr* root = access_root(unparen(s.exprs[0]));
        if (root && scope.state_var(root->name)) found = root->name;
    });
    return found;
}

bool is_nested_mapping(const TypeExpr& t) { return t.is_mapping() && t.children[1].is_mapping(); }

bool is_balance_mapping(const TypeExpr& t) {
    return t.is_mapping() && t.children[0].is_address() && t.children[1].is_integer();
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

const FunctionDef* token_method(const ContractScope& scope, std::string_view name) {
    std::size_t arity = 0;
    for (const auto& m : canonical_interface())
        if (m.name == name) arity = m.params.size();
    for (const FunctionDef* f : scope.functions_named(name))
        if (f->body && f->params.size() == arity) return f;
    return nullptr;
}

TokenVars token_vars(const ContractScope& scope) {
    TokenVars v;
    v.balances = returned_root(token_method(scope, "balanceOf"), scope);
    v.allowance = returned_root(token_method(scope, "allowance"), scope);
    for (const StateVarDecl* s : scope.state_vars) {
        if (v.balances.empty() && is_balance_mapping(s->type) &&
            (s->name == "balanceOf" || lower(s->name).find("balance") != std::string::npos))
            v.balances = s->name;
        if (v.allowance.empty() && is_nested_mapping(s->type) &&
            (s->name == "allowance" || lower(s->name).find("allow") != std::string::npos))
            v.allowance = s->name;
    }
    if (v.allowance.empty()) {
        if (const FunctionDef* approve = token_method(scope, "approve")) {
            for (const FlatStmt& fs : flatten(*approve, scope))
                for (const WriteSite& w : writes_in(*fs.stmt, scope))
                    if (v.allowance.empty() && is_nested_mapping(scope.state_var(w.var)->type)) v.allowance = w.var;
        }
    }
    return v;
}

}  // namespace tokenaudit::rules
