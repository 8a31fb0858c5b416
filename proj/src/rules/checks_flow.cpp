// Checks driven by call-site classification, state-access ordering and guard facts.

#include <regex>

#include "internal.hpp"

namespace tokenaudit::rules {

namespace {

/// Whether a function can only be reached by authorized callers: it carries a sender
/// guard, is a constructor, or is internal and every caller is authorized.
class Authorization {
public:
    explicit Authorization(const ContractAnalysis& ca) : ca_(ca) {}

    bool authorized(const FunctionDef* fn) {
        if (auto it = memo_.find(fn); it != memo_.end()) return it->second;
        if (active_.count(fn)) return true;
        active_.insert(fn);
        const bool result = compute(fn);
        active_.erase(fn);
        memo_[fn] = result;
        return result;
    }

private:
    bool compute(const FunctionDef* fn) {
        if (fn->is_constructor()) return true;
        if (auto g = ca_.guards.functions.find(fn); g != ca_.guards.functions.end() && g->second.authorized())
            return true;
        if (fn->externally_visible() || fn->is_fallback_like()) return false;
        for (const auto& fa : ca_.functions)
            for (const CallSite& c : fa->calls)
                if (c.kind == CallKind::InternalCall && c.callee == fn && !authorized(fa->function)) return false;
        return true;
    }

    const ContractAnalysis& ca_;
    std::map<const FunctionDef*, bool> memo_;
    std::set<const FunctionDef*> active_;
};

bool is_contract_kind(const ContractBundle& cb) {
    return cb.analysis && cb.contract->kind == ContractKind::Contract;
}

// 2: unchecked arithmetic before 0.8 without SafeMath coverage.
void check_overflow(Ctx& ctx) {
    static const std::map<std::string, std::string> safe_name = {{"+", "add"}, {"-", "sub"}, {"*", "mul"}};
    for (const auto& cb : ctx.bundle.contracts) {
        if (!is_contract_kind(cb) || !may_compile_below(cb.file->unit, Version{0, 8, 0})) continue;
        const ContractScope& scope = cb.analysis->scope;
        auto covered = [&](const std::string& op, const TypeExpr& t) {
            for (const UsingFor* u : scope.using_for) {
                if (u->target != "*" && u->target != t.text()) continue;
                const ContractDef* lib = ctx.bundle.index->find(u->library);
                if (lib && lib->find_function(safe_name.at(op))) return true;
            }
            return false;
        };
        for (const FunctionAnalysis* fa : own_functions(cb)) {
            visit_stmt_exprs(fa->body.root, [&](const Stmt&, const Expr& e) {
                std::string op;
                if (e.kind == ExprKind::Binary && safe_name.count(e.name)) op = e.name;
                if (e.kind == ExprKind::Assignment && e.name.size() == 2 && e.name[1] == '=' &&
                    safe_name.count(e.name.substr(0, 1)))
                    op = e.name.substr(0, 1);
                if (op.empty()) return;
                const Expr& l = unparen(e.operands[0]);
                const Expr& r = unparen(e.operands[1]);
                if (l.kind == ExprKind::Literal && r.kind == ExprKind::Literal) return;
                std::optional<TypeExpr> t = fa->env->type_of(l);
                if (!t || !t->is_integer()) t = fa->env->type_of(r);
                if (!t || !t->is_integer() || covered(op, *t)) return;
                ctx.report(e.span, "unchecked '" + op + "' on " + t->text(), cb.contract, fa->function,
                           {{"operator", op}, {"type", t->text()}});
            });
        }
    }
}

// 5: low-level call whose success flag is ignored.
void check_unchecked_call(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        for (const FunctionAnalysis* fa : own_functions(cb))
            for (const CallSite& c : fa->calls)
                if ((c.kind == CallKind::LowLevelCall || c.kind == CallKind::CallWithValue) && !c.return_used)
                    ctx.report(c.span, "return value of low-level call is not checked", cb.contract, fa->function,
                               {{"kind", to_string(c.kind)}});
}

// 53: send whose result is ignored.
void check_unchecked_send(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        for (const FunctionAnalysis* fa : own_functions(cb))
            for (const CallSite& c : fa->calls)
                if (c.kind == CallKind::Send && !c.return_used)
                    ctx.report(c.span, "return value of send is not checked", cb.contract, fa->function);
}

bool writes_sender_entry(const FunctionAnalysis& fa, const ContractScope& scope, EffectsCache& cache) {
    bool found = false;
    visit_stmt(fa.body.root, [&](const Stmt& s) {
        for (const WriteSite& w : writes_in(s, scope)) {
            if (!w.node || w.node->operands.empty()) continue;
            visit_expr(w.node->operands[0], [&](const Expr& x) {
                if (x.kind == ExprKind::Index && x.operands.size() == 2 && is_msg_sender(x.operands[1])) found = true;
            });
        }
    });
    if (found) return true;
    // An internal helper handed msg.sender that writes state, e.g. `_burn(msg.sender, n)`.
    for (const CallSite& c : fa.calls) {
        if (c.kind != CallKind::InternalCall || !c.callee || !c.expr) continue;
        bool passes_sender = false;
        for (std::size_t i = 0; i < c.expr->arg_count(); ++i) passes_sender = passes_sender || is_msg_sender(c.expr->arg(i));
        if (!passes_sender) continue;
        for (const AccessEvent& ev : cache.effects(c.callee).events)
            if (ev.kind == AccessEvent::Kind::Write) return true;
    }
    return false;
}

/// Receiver is a state variable only assigned by authorized code (e.g. the owner).
bool fixed_receiver(const CallSite& c, const ContractAnalysis& ca, Authorization& auth) {
    if (!c.receiver) return false;
    const Expr* r = &unparen(*c.receiver);
    while (r->kind == ExprKind::TypeCast) r = &unparen(r->operands.front());
    if (r->kind != ExprKind::Identifier || !ca.scope.state_var(r->name)) return false;
    for (const auto& fa : ca.functions)
        if (fa->access.writes().count(r->name) && !auth.authorized(fa->function)) return false;
    return true;
}

// 6: ether leaves the contract from a function anyone can call.
void check_unprotected_withdrawal(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts) {
        if (!is_contract_kind(cb)) continue;
        const ContractAnalysis& ca = *cb.analysis;
        Authorization auth(ca);
        EffectsCache cache(ca.scope, *ctx.bundle.index);
        for (const FunctionAnalysis* fa : own_functions(cb)) {
            if (auth.authorized(fa->function)) continue;
            for (const CallSite& c : fa->calls) {
                if (!c.sends_ether()) continue;
                if (c.value && contains(*c.value, [](const Expr& x) { return x.is_member("msg", "value"); })) continue;
                if (c.receiver && is_msg_sender(*c.receiver) && writes_sender_entry(*fa, ca.scope, cache)) continue;
                if (fixed_receiver(c, ca, auth)) continue;
                ctx.report(c.span, "ether sent from a function without sender authorization", cb.contract,
                           fa->function, {{"kind", to_string(c.kind)}});
            }
        }
    }
}

// 7: selfdestruct reachable without authorization.
void check_unprotected_selfdestruct(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts) {
        if (!is_contract_kind(cb)) continue;
        Authorization auth(*cb.analysis);
        for (const FunctionAnalysis* fa : own_functions(cb))
            for (const CallSite& c : fa->calls)
                if (c.kind == CallKind::Selfdestruct && !auth.authorized(fa->function))
                    ctx.report(c.span, "selfdestruct reachable without sender authorization", cb.contract,
                               fa->function);
    }
}

// 8: state written after an external call, with neither CEI nor a mutex.
void check_reentrancy(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts) {
        if (!cb.analysis) continue;
        const ContractAnalysis& ca = *cb.analysis;
        std::set<std::string> mutex_vars;
        for (const auto& [name, var] : ca.guards.mutex_modifiers) mutex_vars.insert(var);
        for (const FunctionAnalysis* fa : own_functions(cb)) {
            auto g = ca.guards.functions.find(fa->function);
            if (g != ca.guards.functions.end() && g->second.mutex_protected()) continue;
            for (const auto& [site, writes] : fa->access.post_call_function_writes) {
                std::vector<std::string> vars;
                for (const auto& [var, span] : writes)
                    if (!mutex_vars.count(var)) vars.push_back(var);
                if (vars.empty()) continue;
                std::string joined;
                for (const auto& v : vars) joined += (joined.empty() ? "" : ",") + v;
                const CallSite& c = fa->calls[site];
                ctx.report(c.span, "state written after external call: " + joined, cb.contract, fa->function,
                           {{"call", to_string(c.kind)}, {"writes", joined}});
            }
        }
    }
}

// 10: uninitialized storage pointers (pre-0.5 only).
void check_uninitialized_storage(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts) {
        if (!cb.analysis || !may_compile_below(cb.file->unit, Version{0, 5, 0})) continue;
        for (const BodyRef& b : own_bodies(*cb.contract))
            visit_stmt(*b.body, [&](const Stmt& s) {
                if (s.kind != StmtKind::VarDecl || !s.exprs.empty()) return;
                for (const auto& d : s.decls) {
                    const bool complex = (d.type.kind == TypeExpr::Kind::User && cb.analysis->scope.struct_def(d.type.name)) ||
                                         d.type.kind == TypeExpr::Kind::Array || d.type.is_mapping();
                    if (d.location == "storage" || (d.location.empty() && complex))
                        ctx.report(d.span, "storage pointer '" + d.name + "' declared without initializer", cb.contract,
                                   b.function);
                }
            });
    }
}

// 11: assert used to validate parameters.
void check_assert_inputs(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        for (const BodyRef& b : own_bodies(*cb.contract)) {
            const auto& params = b.function ? b.function->params : b.modifier->params;
            visit_stmt(*b.body, [&](const Stmt& s) {
                if (s.kind != StmtKind::Assert || s.exprs.empty()) return;
                for (const auto& p : params)
                    if (!p.name.empty() && mentions_identifier(s.exprs[0], p.name)) {
                        ctx.report(s.span, "assert checks parameter '" + p.name + "'; use require", cb.contract,
                                   b.function);
                        return;
                    }
            });
        }
}

// 13: delegatecall into an address that is not fixed.
void check_delegatecall(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        for (const FunctionAnalysis* fa : own_functions(cb))
            for (const CallSite& c : fa->calls) {
                if (c.kind != CallKind::Delegatecall) continue;
                if (c.receiver) {
                    const Expr* r = &unparen(*c.receiver);
                    while (r->kind == ExprKind::TypeCast) r = &unparen(r->operands.front());
                    if (r->kind == ExprKind::Literal) continue;
                    if (r->kind == ExprKind::Identifier) {
                        const StateVarDecl* v = fa->env->state_var(r->name);
                        if (v && (v->constant || v->immutable)) continue;
                    }
                }
                ctx.report(c.span, "delegatecall to a caller-influenced address", cb.contract, fa->function);
            }
}

// 14: several ether sends in one function, or one inside a loop.
void check_multiple_sends(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        for (const FunctionAnalysis* fa : own_functions(cb)) {
            int seen = 0;
            for (const CallSite& c : fa->calls) {
                if (!c.sends_ether()) continue;
                ++seen;
                if (c.in_loop)
                    ctx.report(c.span, "ether send inside a loop", cb.contract, fa->function);
                else if (seen >= 2)
                    ctx.report(c.span, "multiple ether sends in one function", cb.contract, fa->function);
            }
        }
}

// 15: approve without zero-first enforcement or tracked transfers.
void check_approve_race(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts) {
        if (!cb.is_token) continue;
        const ContractScope& scope = cb.analysis->scope;
        const FunctionDef* approve = token_method(scope, "approve");
        if (!approve) continue;
        const TokenVars vars = token_vars(scope);
        const auto approve_stmts = flatten(*approve, scope);
        bool writes_allowance = false;
        for (const FlatStmt& fs : approve_stmts)
            for (const WriteSite& w : writes_in(*fs.stmt, scope)) writes_allowance = writes_allowance || w.var == vars.allowance;
        if (!writes_allowance) continue;

        bool zero_first = false;
        for (const FlatStmt& fs : approve_stmts) {
            const Expr* cond = enforced_condition(*fs.stmt);
            if (!cond) continue;
            visit_expr(*cond, [&](const Expr& e) {
                if (e.kind != ExprKind::Binary || e.name != "==") return;
                for (int side = 0; side < 2; ++side) {
                    const Expr& z = unparen(e.operands[side]);
                    if (z.kind == ExprKind::Literal && z.literal_digits().find_first_not_of('0') == std::string::npos &&
                        mentions_identifier(e.operands[1 - side], vars.allowance))
                        zero_first = true;
                }
            });
        }
        bool tracked = false;
        if (const FunctionDef* tf = token_method(scope, "transferFrom")) {
            std::set<std::string> written;
            for (const FlatStmt& fs : flatten(*tf, scope))
                for (const WriteSite& w : writes_in(*fs.stmt, scope))
                    if (w.var != vars.allowance && w.var != vars.balances && scope.state_var(w.var)->type.is_mapping())
                        written.insert(w.var);
            for (const FlatStmt& fs : approve_stmts)
                for (const auto& e : fs.stmt->exprs)
                    for (const auto& m : written)
                        if (mentions_identifier(e, m)) tracked = true;
        }
        if (!zero_first && !tracked)
            ctx.report(approve->name_span, "approve can be front-run: no zero-first rule and no tracked transfers",
                       cb.contract, approve);
    }
}

bool is_ecrecover(const CallSite& c) { return c.expr && c.expr->callee().is_identifier("ecrecover"); }

// 18: ecrecover without an upper bound on s.
void check_malleability(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        for (const FunctionAnalysis* fa : own_functions(cb)) {
            bool bounded = false;
            visit_stmt_exprs(fa->body.root, [&](const Stmt&, const Expr& e) {
                if (e.kind != ExprKind::Binary || (e.name != "<" && e.name != "<=" && e.name != ">" && e.name != ">="))
                    return;
                for (const auto& op : e.operands) {
                    const Expr& x = unparen(op);
                    if (x.kind == ExprKind::Literal && x.literal != LiteralKind::Decimal && x.literal_digits().size() >= 60)
                        bounded = true;
                    if (x.kind == ExprKind::Identifier) {
                        const StateVarDecl* v = fa->env->state_var(x.name);
                        if (v && v->constant && v->initializer && v->initializer->literal_digits().size() >= 60)
                            bounded = true;
                    }
                }
            });
            if (bounded) continue;
            for (const CallSite& c : fa->calls)
                if (is_ecrecover(c))
                    ctx.report(c.span, "ecrecover without a range check on s", cb.contract, fa->function);
        }
}

// 20: shadowed state variables.
void check_shadowing(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts) {
        if (!cb.analysis) continue;
        const ContractScope& scope = cb.analysis->scope;
        for (const auto& v : cb.contract->state_vars)
            for (std::size_t i = 1; i < scope.lineage.size(); ++i)
                if (scope.lineage[i]->find_state_var(v.name)) {
                    ctx.report(v.span, "state variable '" + v.name + "' shadows one in " + scope.lineage[i]->name,
                               cb.contract);
                    break;
                }
        for (const auto& f : cb.contract->functions) {
            if (!f.body) continue;
            auto flag = [&](const std::string& name, const SourceSpan& span) {
                if (!name.empty() && scope.state_var(name))
                    ctx.report(span, "'" + name + "' shadows a state variable", cb.contract, &f);
            };
            for (const auto& p : f.params) flag(p.name, p.span);
            for (const auto& p : f.returns) flag(p.name, p.span);
            visit_stmt(*f.body, [&](const Stmt& s) {
                if (s.kind == StmtKind::VarDecl)
                    for (const auto& d : s.decls) flag(d.name, d.span);
            });
        }
    }
}

// 22: signatures accepted without recording what was signed.
void check_signature_replay(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        for (const FunctionAnalysis* fa : own_functions(cb)) {
            bool recorded = false;
            for (const auto& w : fa->access.writes()) {
                const StateVarDecl* v = fa->env->scope().state_var(w);
                std::string n = w;
                std::transform(n.begin(), n.end(), n.begin(), [](unsigned char ch) { return std::tolower(ch); });
                if ((v && v->type.is_mapping() && v->type.children[0].name == "bytes32") ||
                    n.find("nonce") != std::string::npos)
                    recorded = true;
            }
            if (recorded) continue;
            for (const CallSite& c : fa->calls)
                if (is_ecrecover(c))
                    ctx.report(c.span, "recovered signer used without storing the message hash or a nonce",
                               cb.contract, fa->function);
        }
}

// 23: ecrecover over a hash supplied by the caller.
void check_signature_verification(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        for (const FunctionAnalysis* fa : own_functions(cb))
            for (const CallSite& c : fa->calls) {
                if (!is_ecrecover(c) || c.expr->arg_count() == 0) continue;
                const Expr& h = unparen(c.expr->arg(0));
                const LocalVar* l = h.kind == ExprKind::Identifier ? fa->env->local(h.name) : nullptr;
                if (l && l->is_param)
                    ctx.report(c.span, "signature checked against caller-supplied hash '" + h.name + "'", cb.contract,
                               fa->function);
            }
}

// 24: requirement made only of constants.
void check_constant_requirement(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts) {
        if (!cb.analysis) continue;
        const ContractScope& scope = cb.analysis->scope;
        for (const BodyRef& b : own_bodies(*cb.contract))
            visit_stmt(*b.body, [&](const Stmt& s) {
                if ((s.kind != StmtKind::Require && s.kind != StmtKind::Assert) || s.exprs.empty()) return;
                const bool variable = contains(s.exprs[0], [&](const Expr& x) {
                    switch (x.kind) {
                        case ExprKind::Literal:
                        case ExprKind::Binary:
                        case ExprKind::Unary:
                        case ExprKind::Tuple:
                        case ExprKind::Conditional: return false;
                        case ExprKind::Identifier: {
                            const StateVarDecl* v = scope.state_var(x.name);
                            return !(v && v->constant);
                        }
                        default: return true;
                    }
                });
                if (!variable) ctx.report(s.span, "condition depends only on constants", cb.contract, b.function);
            });
    }
}

// 25: storage array written at a caller-chosen index without a bounds check.
void check_arbitrary_storage(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        for (const FunctionAnalysis* fa : own_functions(cb)) {
            const TypeEnv& env = *fa->env;
            auto param_in = [&](const Expr& e) {
                return contains(e, [&](const Expr& x) {
                    const LocalVar* l = x.kind == ExprKind::Identifier ? env.local(x.name) : nullptr;
                    return l && l->is_param;
                });
            };
            std::set<std::string> bounded;
            visit_stmt(fa->body.root, [&](const Stmt& s) {
                const Expr* cond = enforced_condition(s);
                if (!cond) return;
                visit_expr(*cond, [&](const Expr& x) {
                    if (x.kind == ExprKind::Member && x.name == "length") {
                        const std::string root = env.state_root(x.operands.front());
                        if (!root.empty()) bounded.insert(root);
                    }
                });
            });
            visit_stmt(fa->body.root, [&](const Stmt& s) {
                for (const WriteSite& w : writes_in(s, env.scope())) {
                    const StateVarDecl* v = env.state_var(w.var);
                    if (!v || v->type.kind != TypeExpr::Kind::Array || !v->type.array_length.empty()) continue;
                    const Expr& lhs = unparen(w.node->operands[0]);
                    bool hit = false;
                    if (lhs.kind == ExprKind::Index && lhs.operands.size() == 2 && param_in(lhs.operands[1]) &&
                        !bounded.count(w.var))
                        hit = true;
                    if (lhs.kind == ExprKind::Member && lhs.name == "length") hit = true;
                    if (hit)
                        ctx.report(w.node->span, "write to '" + w.var + "' at an unchecked caller-supplied position",
                                   cb.contract, fa->function);
                }
            });
        }
}

// 26: the same function inherited from unrelated bases.
void check_inheritance_order(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts) {
        if (!cb.analysis || cb.contract->bases.size() < 2) continue;
        const auto& lineage = cb.analysis->scope.lineage;
        auto related = [&](const ContractDef* a, const ContractDef* b) {
            auto la = ctx.bundle.index->lineage(*a);
            auto lb = ctx.bundle.index->lineage(*b);
            return std::find(la.begin(), la.end(), b) != la.end() || std::find(lb.begin(), lb.end(), a) != lb.end();
        };
        std::map<std::string, std::vector<const ContractDef*>> definers;
        for (std::size_t i = 1; i < lineage.size(); ++i)
            for (const auto& f : lineage[i]->functions)
                if (f.body && f.kind == FunctionKind::Function) definers[f.signature()].push_back(lineage[i]);
        for (const auto& [sig, defs] : definers) {
            bool overridden = false;
            for (const auto& f : cb.contract->functions) overridden = overridden || f.signature() == sig;
            if (overridden) continue;
            for (std::size_t i = 0; i < defs.size(); ++i)
                for (std::size_t j = i + 1; j < defs.size(); ++j)
                    if (!related(defs[i], defs[j])) {
                        ctx.report(cb.contract->name_span,
                                   "'" + sig + "' inherited from both " + defs[i]->name + " and " + defs[j]->name,
                                   cb.contract);
                        i = defs.size();
                        break;
                    }
        }
    }
}

// 27: relaying caller-supplied calldata with no gas handling.
void check_gas_griefing(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        for (const FunctionAnalysis* fa : own_functions(cb)) {
            bool gas_checked = false;
            visit_stmt_exprs(fa->body.root, [&](const Stmt&, const Expr& e) {
                if ((e.kind == ExprKind::Call && e.callee().is_identifier("gasleft")) || e.is_member("msg", "gas"))
                    gas_checked = true;
            });
            if (gas_checked) continue;
            for (const CallSite& c : fa->calls) {
                if ((c.kind != CallKind::LowLevelCall && c.kind != CallKind::CallWithValue) || c.gas_literal || !c.expr ||
                    c.expr->arg_count() == 0)
                    continue;
                const bool relays = contains(c.expr->arg(0), [&](const Expr& x) {
                    const LocalVar* l = x.kind == ExprKind::Identifier ? fa->env->local(x.name) : nullptr;
                    return l && l->is_param && l->type.name == "bytes";
                });
                if (relays)
                    ctx.report(c.span, "relays caller-supplied data without checking remaining gas", cb.contract,
                               fa->function);
            }
        }
}

// 29: loops bounded by storage arrays or caller input in state-changing code.
void check_gas_limit_loops(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        for (const FunctionAnalysis* fa : own_functions(cb)) {
            const FunctionDef& fn = *fa->function;
            if (!fn.state_mutating() || fn.is_constructor()) continue;
            visit_stmt(fa->body.root, [&](const Stmt& s) {
                if (s.kind != StmtKind::For && s.kind != StmtKind::While && s.kind != StmtKind::DoWhile) return;
                if (s.exprs.empty() || s.exprs[0].kind == ExprKind::Empty) return;
                const bool unbounded = contains(s.exprs[0], [&](const Expr& x) {
                    if (x.kind == ExprKind::Member && x.name == "length" && !fa->env->state_root(x.operands.front()).empty())
                        return true;
                    const LocalVar* l = x.kind == ExprKind::Identifier ? fa->env->local(x.name) : nullptr;
                    return l && l->is_param;
                });
                if (unbounded)
                    ctx.report(s.span, "loop bound grows with storage or caller input", cb.contract, fa->function);
            });
        }
}

// 33: strict equality on the contract's ether balance.
void check_balance_equality(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        visit_contract_exprs(*cb.contract, [&](const Expr& e, const FunctionDef* fn) {
            if (e.kind == ExprKind::Binary && (e.name == "==" || e.name == "!=") &&
                (is_self_balance(e.operands[0]) || is_self_balance(e.operands[1])))
                ctx.report(e.span, "strict equality on the contract balance", cb.contract, fn);
        });
}

// 36: expression statements without any effect.
void check_no_effect(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        for (const BodyRef& b : own_bodies(*cb.contract))
            visit_stmt(*b.body, [&](const Stmt& s) {
                if (s.kind != StmtKind::Expression || s.exprs.empty()) return;
                const Expr& e = s.exprs[0];
                if (e.kind == ExprKind::Unsupported || e.kind == ExprKind::Empty) return;
                const bool effect = contains(e, [](const Expr& x) {
                    return x.kind == ExprKind::Assignment || x.kind == ExprKind::Call || x.kind == ExprKind::New ||
                           x.kind == ExprKind::Unsupported ||
                           (x.kind == ExprKind::Unary && (x.name == "++" || x.name == "--" || x.name == "delete"));
                });
                if (!effect) ctx.report(s.span, "statement has no effect", cb.contract, b.function);
            });
}

// 37: private variables that look like secrets.
void check_private_data(Ctx& ctx) {
    static const std::regex secret("secret|password|passwd|passphrase|private.*data|seed", std::regex::icase);
    static const std::regex key_word("(^|_)[kK]ey($|_|[A-Z0-9])|[a-z0-9]Key($|_|[A-Z0-9])");
    for (const auto& cb : ctx.bundle.contracts)
        for (const auto& v : cb.contract->state_vars)
            if (v.visibility == Visibility::Private &&
                (std::regex_search(v.name, secret) || std::regex_search(v.name, key_word)))
                ctx.report(v.span, "private variable '" + v.name + "' is still readable on-chain", cb.contract);
}

bool leaf_contract(const ContractBundle& cb, const AnalysisBundle& bundle) {
    return is_contract_kind(cb) && !cb.contract->is_abstract && !bundle.index->is_base_of_another(*cb.contract);
}

bool sends_ether_anywhere(const ContractAnalysis& ca) {
    for (const auto& fa : ca.functions)
        for (const CallSite& c : fa->calls)
            if (c.sends_ether() || c.kind == CallKind::Selfdestruct) return true;
    return false;
}

bool has_payable_function(const ContractAnalysis& ca, bool include_constructor) {
    for (const FunctionDef* f : ca.scope.functions)
        if (f->mutability == Mutability::Payable && (include_constructor || !f->is_constructor())) return true;
    return false;
}

// 71: ether can come in but never go out.
void check_locked_ether(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts) {
        if (!leaf_contract(cb, ctx.bundle)) continue;
        if (has_payable_function(*cb.analysis, true) && !sends_ether_anywhere(*cb.analysis))
            ctx.report(cb.contract->name_span, "contract accepts ether but has no way to send it out", cb.contract);
    }
}

// 73: value-handling contract without fallback or receive.
void check_missing_fallback(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts) {
        if (!leaf_contract(cb, ctx.bundle)) continue;
        const ContractAnalysis& ca = *cb.analysis;
        if (!has_payable_function(ca, false) && !sends_ether_anywhere(ca)) continue;
        bool has_fallback = false;
        for (const FunctionDef* f : ca.scope.functions) has_fallback = has_fallback || f->is_fallback_like();
        if (!has_fallback)
            ctx.report(cb.contract->name_span, "contract handles ether but declares no fallback or receive",
                       cb.contract);
    }
}

int count_statements(const Stmt& s) {
    int n = 0;
    visit_stmt(s, [&](const Stmt& x) {
        if (x.kind != StmtKind::Block && x.kind != StmtKind::Unchecked && x.kind != StmtKind::Empty) ++n;
    });
    return n;
}

// 77: fallback doing more than logging.
void check_complex_fallback(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        for (const FunctionAnalysis* fa : own_functions(cb)) {
            if (!fa->function->is_fallback_like()) continue;
            const int n = count_statements(*fa->function->body);
            bool external = false;
            for (const CallSite& c : fa->calls) external = external || is_external(c.kind);
            if (n > ctx.config.fallback_statements || external)
                ctx.report(fa->function->span,
                           external ? "fallback performs external calls"
                                    : "fallback has " + std::to_string(n) + " statements",
                           cb.contract, fa->function, {{"statements", std::to_string(n)}});
        }
}

}  // namespace

void register_flow_checks(std::map<int, CheckFn>& t) {
    t[2] = check_overflow;
    t[5] = check_unchecked_call;
    t[6] = check_unprotected_withdrawal;
    t[7] = check_unprotected_selfdestruct;
    t[8] = check_reentrancy;
    t[10] = check_uninitialized_storage;
    t[11] = check_assert_inputs;
    t[13] = check_delegatecall;
    t[14] = check_multiple_sends;
    t[15] = check_approve_race;
    t[18] = check_malleability;
    t[20] = check_shadowing;
    t[22] = check_signature_replay;
    t[23] = check_signature_verification;
    t[24] = check_constant_requirement;
    t[25] = check_arbitrary_storage;
    t[26] = check_inheritance_order;
    t[27] = check_gas_griefing;
    t[29] = check_gas_limit_loops;
    t[33] = check_balance_equality;
    t[36] = check_no_effect;
    t[37] = check_private_data;
    t[53] = check_unchecked_send;
    t[71] = check_locked_ether;
    t[73] = check_missing_fallback;
    t[77] = check_complex_fallback;
}

}  // namespace tokenaudit::rules
