// ERC-20 conformance checks. They read the bodies of the token methods with internal
// helpers spliced in, so `_transfer`-style implementations are judged as a whole.

#include "internal.hpp"

namespace tokenaudit::rules {

namespace {

bool is_comparison(const Expr& e) {
    return e.kind == ExprKind::Binary && (e.name == "<" || e.name == "<=" || e.name == ">" || e.name == ">=");
}

bool is_sub_call(const Expr& e) {
    return e.kind == ExprKind::Call && e.callee().kind == ExprKind::Member && e.callee().name == "sub";
}

template <typename F>
void each_token(Ctx& ctx, F&& f) {
    for (const auto& cb : ctx.bundle.contracts)
        if (cb.is_token) f(cb, cb.analysis->scope);
}

struct TokenFunction {
    const FunctionDef* fn;
    std::vector<FlatStmt> flat;
};

std::vector<TokenFunction> transfer_functions(const ContractScope& scope) {
    std::vector<TokenFunction> out;
    for (const char* name : {"transfer", "transferFrom"})
        if (const FunctionDef* f = token_method(scope, name)) out.push_back({f, flatten(*f, scope)});
    return out;
}

bool writes_var(const FlatStmt& fs, const ContractScope& scope, const std::string& var) {
    for (const WriteSite& w : writes_in(*fs.stmt, scope))
        if (w.var == var) return true;
    return false;
}

bool emits(const std::vector<FlatStmt>& flat, std::string_view event) {
    for (const FlatStmt& fs : flat)
        if (fs.stmt->kind == StmtKind::Emit && fs.stmt->name == event) return true;
    return false;
}

/// A balance-style guard on `var` before it is first written, or a reverting subtraction.
bool guarded_debit(const std::vector<FlatStmt>& flat, const ContractScope& scope, const std::string& var,
                   std::string_view getter, bool checked_arithmetic) {
    if (var.empty()) return false;
    auto mentions = [&](const Expr& e) {
        return mentions_identifier(e, var) ||
               contains(e, [&](const Expr& x) { return x.kind == ExprKind::Call && x.callee().is_identifier(getter); });
    };
    bool before_write = true;
    for (const FlatStmt& fs : flat) {
        if (before_write) {
            if (const Expr* cond = enforced_condition(*fs.stmt)) {
                bool hit = false;
                visit_expr(*cond, [&](const Expr& e) {
                    if (is_comparison(e) && (mentions(e.operands[0]) || mentions(e.operands[1]))) hit = true;
                });
                if (hit) return true;
            }
        }
        for (const WriteSite& w : writes_in(*fs.stmt, scope)) {
            if (w.var != var) continue;
            before_write = false;
            const Expr& a = *w.node;
            if (a.kind != ExprKind::Assignment) continue;
            if (contains(a.operands[1], is_sub_call)) return true;
            if (checked_arithmetic &&
                (a.name == "-=" || contains(a.operands[1], [](const Expr& x) {
                     return x.kind == ExprKind::Binary && x.name == "-";
                 })))
                return true;
        }
    }
    return false;
}

bool checked_arithmetic(const ContractBundle& cb) { return !may_compile_below(cb.file->unit, Version{0, 8, 0}); }

// 38: transferFrom consumes the allowance (or records what was spent against it).
void check_allowance_decrease(Ctx& ctx) {
    each_token(ctx, [&](const ContractBundle& cb, const ContractScope& scope) {
        const FunctionDef* tf = token_method(scope, "transferFrom");
        if (!tf) return;
        const TokenVars vars = token_vars(scope);
        bool consumed = false;
        for (const FlatStmt& fs : flatten(*tf, scope))
            for (const WriteSite& w : writes_in(*fs.stmt, scope)) {
                const StateVarDecl* v = scope.state_var(w.var);
                if (w.var == vars.allowance || (v->type.is_mapping() && v->type.children[1].is_mapping())) consumed = true;
            }
        if (!consumed) ctx.report(tf->name_span, "transferFrom does not reduce the allowance", cb.contract, tf);
    });
}

// 39: allowance() is a plain mapping lookup.
void check_allowance_getter(Ctx& ctx) {
    each_token(ctx, [&](const ContractBundle& cb, const ContractScope& scope) {
        const FunctionDef* f = token_method(scope, "allowance");
        if (!f) return;
        std::vector<const Stmt*> stmts;
        visit_stmt(*f->body, [&](const Stmt& s) {
            if (s.kind != StmtKind::Block) stmts.push_back(&s);
        });
        bool direct = stmts.size() == 1 && stmts[0]->kind == StmtKind::Return && !stmts[0]->exprs.empty();
        if (direct) {
            const Expr& e = unparen(stmts[0]->exprs[0]);
            const Expr* root = access_root(e);
            direct = e.kind == ExprKind::Index && root && scope.state_var(root->name) &&
                     !contains(e, [](const Expr& x) { return x.kind == ExprKind::Call; });
        }
        if (!direct) ctx.report(f->name_span, "allowance() computes its result instead of reading the mapping", cb.contract, f);
    });
}

// 40: approve(spender, 0) must be allowed.
void check_allowance_cancel(Ctx& ctx) {
    each_token(ctx, [&](const ContractBundle& cb, const ContractScope& scope) {
        const FunctionDef* f = token_method(scope, "approve");
        if (!f || f->params.size() < 2 || f->params[1].name.empty()) return;
        const std::string& value = f->params[1].name;
        for (const Stmt& s : f->body->body) {
            const Expr* cond = enforced_condition(s);
            if (!cond) continue;
            bool nonzero = false;
            const bool negated = s.kind == StmtKind::If;
            visit_expr(*cond, [&](const Expr& e) {
                if (e.kind != ExprKind::Binary) return;
                const Expr& l = unparen(e.operands[0]);
                const Expr& r = unparen(e.operands[1]);
                const bool lz = is_zero_address(l) && l.kind == ExprKind::Literal;
                const bool rz = is_zero_address(r) && r.kind == ExprKind::Literal;
                const bool lv = l.is_identifier(value), rv = r.is_identifier(value);
                if (!negated && ((lv && rz && (e.name == ">" || e.name == "!=")) || (rv && lz && (e.name == "<" || e.name == "!="))))
                    nonzero = true;
                if (negated && ((lv && rz && (e.name == "==" || e.name == "<=")) || (rv && lz && (e.name == "==" || e.name == ">="))))
                    nonzero = true;
            });
            if (nonzero) {
                ctx.report(s.span, "approve rejects a zero amount, so allowances cannot be revoked", cb.contract, f);
                return;
            }
        }
    });
}

// 41: transfer checks the sender's balance.
void check_transfer_balance(Ctx& ctx) {
    each_token(ctx, [&](const ContractBundle& cb, const ContractScope& scope) {
        const FunctionDef* f = token_method(scope, "transfer");
        if (!f) return;
        const TokenVars vars = token_vars(scope);
        if (!guarded_debit(flatten(*f, scope), scope, vars.balances, "balanceOf", checked_arithmetic(cb)))
            ctx.report(f->name_span, "transfer does not check the sender balance before updating it", cb.contract, f);
    });
}

// 42: both sides of a transfer are updated.
void check_balances_updated(Ctx& ctx) {
    each_token(ctx, [&](const ContractBundle& cb, const ContractScope& scope) {
        const TokenVars vars = token_vars(scope);
        for (const TokenFunction& tf : transfer_functions(scope)) {
            std::set<std::string> keys;
            for (const FlatStmt& fs : tf.flat)
                for (const WriteSite& w : writes_in(*fs.stmt, scope))
                    if (w.var == vars.balances) keys.insert(std::string(unparen(w.node->operands[0]).span.text()));
            if (keys.size() < 2)
                ctx.report(tf.fn->name_span, tf.fn->name + " does not update both sender and recipient balances",
                           cb.contract, tf.fn);
        }
    });
}

// 43: Transfer is emitted.
void check_transfer_event(Ctx& ctx) {
    each_token(ctx, [&](const ContractBundle& cb, const ContractScope& scope) {
        for (const TokenFunction& tf : transfer_functions(scope))
            if (!emits(tf.flat, "Transfer"))
                ctx.report(tf.fn->name_span, tf.fn->name + " does not emit Transfer", cb.contract, tf.fn);
    });
}

// 44: transferFrom checks the allowance.
void check_transfer_from_allowance(Ctx& ctx) {
    each_token(ctx, [&](const ContractBundle& cb, const ContractScope& scope) {
        const FunctionDef* f = token_method(scope, "transferFrom");
        if (!f) return;
        const TokenVars vars = token_vars(scope);
        if (!guarded_debit(flatten(*f, scope), scope, vars.allowance, "allowance", checked_arithmetic(cb)))
            ctx.report(f->name_span, "transferFrom does not check the allowance before spending it", cb.contract, f);
    });
}

// 45: short-address posture needs a 0.5+ compiler.
void check_short_address(Ctx& ctx) {
    std::set<const FileBundle*> token_files;
    for (const auto& cb : ctx.bundle.contracts)
        if (cb.is_token) token_files.insert(cb.file);
    for (const FileBundle* fb : token_files)
        for (const auto& p : fb->unit.pragmas)
            if (p.constraint && p.constraint->lowest() < Version{0, 5, 0})
                ctx.report(p.span, "compilers before 0.5.0 do not reject short addresses", nullptr, nullptr,
                           {{"lowest", p.constraint->lowest().str()}});
}

// 46: overloaded function names.
void check_unique_names(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts) {
        for (const auto& f : cb.contract->functions) {
            if (f.kind != FunctionKind::Function) continue;
            std::size_t same = 0;
            if (cb.analysis) {
                same = cb.analysis->scope.functions_named(f.name).size();
            } else {
                for (const auto& g : cb.contract->functions) same += g.kind == FunctionKind::Function && g.name == f.name;
            }
            if (same > 1) ctx.report(f.name_span, "function name '" + f.name + "' is overloaded", cb.contract, &f);
        }
    }
}

// 49: revert on failure rather than returning false.
void check_no_false_return(Ctx& ctx) {
    each_token(ctx, [&](const ContractBundle& cb, const ContractScope& scope) {
        for (const TokenFunction& tf : transfer_functions(scope))
            for (const FlatStmt& fs : tf.flat)
                if (fs.stmt->kind == StmtKind::Return && !fs.stmt->exprs.empty()) {
                    const Expr& e = unparen(fs.stmt->exprs[0]);
                    if (e.kind == ExprKind::Literal && e.literal == LiteralKind::Bool && e.name == "false")
                        ctx.report(fs.stmt->span, tf.fn->name + " returns false instead of reverting", cb.contract, tf.fn);
                }
    });
}

void check_allowance_extension(Ctx& ctx, const char* name) {
    each_token(ctx, [&](const ContractBundle& cb, const ContractScope& scope) {
        for (const FunctionDef* f : scope.functions_named(name)) {
            const bool params = f->params.size() == 2 && f->params[0].type.text() == "address" &&
                                f->params[1].type.text() == "uint256";
            const bool returns = f->returns.size() == 1 && f->returns[0].type.text() == "bool";
            if (!params || !returns)
                ctx.report(f->name_span, std::string(name) + " should be (address,uint256) returns (bool)",
                           cb.contract, f, {{"signature", f->signature()}});
        }
    });
}

// 55 / 56
void check_decrease_allowance(Ctx& ctx) { check_allowance_extension(ctx, "decreaseAllowance"); }
void check_increase_allowance(Ctx& ctx) { check_allowance_extension(ctx, "increaseAllowance"); }

// 57: externally callable surface beyond the allowlist.
void check_attack_surface(Ctx& ctx) {
    each_token(ctx, [&](const ContractBundle& cb, const ContractScope& scope) {
        std::set<std::string> extra;
        for (const FunctionDef* f : scope.functions)
            if (f->kind == FunctionKind::Function && f->externally_visible() && !ctx.config.surface_allowlist.count(f->name))
                extra.insert(f->name);
        if (extra.empty()) return;
        std::string joined;
        for (const auto& n : extra) joined += (joined.empty() ? "" : ",") + n;
        ctx.report(cb.contract->name_span,
                   std::to_string(extra.size()) + " externally callable functions beyond the ERC-20 set: " + joined,
                   cb.contract, nullptr, {{"count", std::to_string(extra.size())}, {"functions", joined}});
    });
}

// 58: transfers to the zero address revert.
void check_burn_address(Ctx& ctx) {
    each_token(ctx, [&](const ContractBundle& cb, const ContractScope& scope) {
        for (const TokenFunction& tf : transfer_functions(scope)) {
            bool guarded = false;
            for (const FlatStmt& fs : tf.flat) {
                const Expr* cond = enforced_condition(*fs.stmt);
                if (!cond) continue;
                const bool negated = fs.stmt->kind == StmtKind::If;
                visit_expr(*cond, [&](const Expr& e) {
                    if (e.kind != ExprKind::Binary) return;
                    const bool zero = is_zero_address(e.operands[0]) || is_zero_address(e.operands[1]);
                    if (zero && e.name == (negated ? "==" : "!=")) guarded = true;
                });
            }
            if (!guarded)
                ctx.report(tf.fn->name_span, tf.fn->name + " does not reject the zero address", cb.contract, tf.fn);
        }
    });
}

// 61: deep nesting.
void check_nesting(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        for (const auto& f : cb.contract->functions) {
            if (!f.body) continue;
            const int depth = nesting_depth(*f.body);
            if (depth > ctx.config.max_nesting)
                ctx.report(f.name_span.empty() ? f.span : f.name_span,
                           "nesting depth " + std::to_string(depth) + " exceeds " + std::to_string(ctx.config.max_nesting),
                           cb.contract, &f, {{"depth", std::to_string(depth)}});
        }
}

// 63: Approval is emitted.
void check_approval_event(Ctx& ctx) {
    each_token(ctx, [&](const ContractBundle& cb, const ContractScope& scope) {
        const FunctionDef* f = token_method(scope, "approve");
        if (f && !emits(flatten(*f, scope), "Approval"))
            ctx.report(f->name_span, "approve does not emit Approval", cb.contract, f);
    });
}

bool emits_any(const FunctionAnalysis* fa, const ContractBundle& cb) {
    for (const CallSite& c : fa->calls)
        if (c.kind == CallKind::EventEmit) return true;
    const ContractScope& scope = cb.analysis->scope;
    for (const FlatStmt& fs : flatten(*fa->function, scope)) {
        if (fs.stmt->kind == StmtKind::Emit) return true;
        for (const auto& e : fs.stmt->exprs)
            if (contains(e, [&](const Expr& x) {
                    return x.kind == ExprKind::Call && x.callee().kind == ExprKind::Identifier &&
                           scope.event(x.callee().name);
                }))
                return true;
    }
    return false;
}

// 66: state-changing entry points log something.
void check_change_events(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts) {
        if (!cb.analysis || cb.contract->kind != ContractKind::Contract) continue;
        for (const FunctionAnalysis* fa : own_functions(cb)) {
            const FunctionDef& f = *fa->function;
            if (f.kind != FunctionKind::Function || !f.externally_visible() || !f.state_mutating()) continue;
            std::string written;
            for (const auto& block : fa->access.per_block)
                for (const AccessEvent& ev : block)
                    if (ev.kind == AccessEvent::Kind::Write && !ev.from_modifier && written.empty()) written = ev.var;
            if (written.empty() || emits_any(fa, cb)) continue;
            ctx.report(f.name_span, f.name + " changes '" + written + "' without emitting an event", cb.contract, &f);
        }
    }
}

// 68: full ERC-20 interface.
void check_compliance(Ctx& ctx) {
    each_token(ctx, [&](const ContractBundle& cb, const ContractScope&) {
        const ConformanceReport& r = *cb.conformance;
        if (r.overall) return;
        std::string missing, mismatched;
        for (const auto& it : r.items) {
            if (!it.present) missing += (missing.empty() ? "" : ",") + it.canonical->signature();
            else if (!it.signature_match) mismatched += (mismatched.empty() ? "" : ",") + it.canonical->signature();
        }
        std::string msg = "not ERC-20 compliant";
        if (!missing.empty()) msg += "; missing " + missing;
        if (!mismatched.empty()) msg += "; mismatched " + mismatched;
        ctx.report(cb.contract->name_span, msg, cb.contract, nullptr, {{"missing", missing}, {"mismatched", mismatched}});
    });
}

void check_metadata(Ctx& ctx, const char* name) {
    each_token(ctx, [&](const ContractBundle& cb, const ContractScope& scope) {
        if (!scope.state_var(name) && scope.functions_named(name).empty())
            ctx.report(cb.contract->name_span, std::string("token declares no '") + name + "'", cb.contract);
    });
}

// 70 / 75 / 81
void check_decimals(Ctx& ctx) { check_metadata(ctx, "decimals"); }
void check_name(Ctx& ctx) { check_metadata(ctx, "name"); }
void check_symbol(Ctx& ctx) { check_metadata(ctx, "symbol"); }

// 82: transferFrom actually moves tokens on behalf of the owner.
void check_allowance_spending(Ctx& ctx) {
    each_token(ctx, [&](const ContractBundle& cb, const ContractScope& scope) {
        const FunctionDef* f = token_method(scope, "transferFrom");
        if (!f) {
            ctx.report(cb.contract->name_span, "no transferFrom: allowances cannot be spent", cb.contract);
            return;
        }
        const TokenVars vars = token_vars(scope);
        bool moves = false;
        for (const FlatStmt& fs : flatten(*f, scope)) moves = moves || (!vars.balances.empty() && writes_var(fs, scope, vars.balances));
        if (!f->externally_visible() || !moves)
            ctx.report(f->name_span, "transferFrom cannot move tokens on behalf of the owner", cb.contract, f);
    });
}

}  // namespace

void register_token_checks(std::map<int, CheckFn>& t) {
    t[38] = check_allowance_decrease;
    t[39] = check_allowance_getter;
    t[40] = check_allowance_cancel;
    t[41] = check_transfer_balance;
    t[42] = check_balances_updated;
    t[43] = check_transfer_event;
    t[44] = check_transfer_from_allowance;
    t[45] = check_short_address;
    t[46] = check_unique_names;
    t[49] = check_no_false_return;
    t[55] = check_decrease_allowance;
    t[56] = check_increase_allowance;
    t[57] = check_attack_surface;
    t[58] = check_burn_address;
    t[61] = check_nesting;
    t[63] = check_approval_event;
    t[66] = check_change_events;
    t[68] = check_compliance;
    t[70] = check_decimals;
    t[75] = check_name;
    t[81] = check_symbol;
    t[82] = check_allowance_spending;
}

}  // namespace tokenaudit::rules
