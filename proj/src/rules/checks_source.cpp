// Lexical and syntactic checks: rows whose trigger is visible in tokens or the AST alone,
// plus a few that borrow type or call-site facts from the analysis.

#include <filesystem>
#include <regex>

#include "internal.hpp"

namespace tokenaudit::rules {

namespace {

// 1: function without an explicit visibility keyword.
void check_default_function_visibility(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        for (const auto& f : cb.contract->functions)
            if (!f.is_constructor() && f.visibility == Visibility::Unspecified)
                ctx.report(f.name_span, "function '" + f.display_name() + "' has no explicit visibility", cb.contract,
                           &f);
}

// 3: pragma admits compilers older than the configured minimum.
void check_outdated_compiler(Ctx& ctx) {
    for (const auto& fb : ctx.bundle.files)
        for (const auto& p : fb->unit.pragmas) {
            if (!p.constraint) continue;
            const Version low = p.constraint->lowest();
            if (low < ctx.config.pragma_min)
                ctx.report(p.span, "pragma allows solidity " + low.str() + ", below " + ctx.config.pragma_min.str(),
                           nullptr, nullptr, {{"lowest", low.str()}, {"minimum", ctx.config.pragma_min.str()}});
        }
}

// 4: floating pragma.
void check_floating_pragma(Ctx& ctx) {
    for (const auto& fb : ctx.bundle.files)
        for (const auto& p : fb->unit.pragmas)
            if (p.constraint && p.constraint->kind() != VersionConstraint::Kind::Exact)
                ctx.report(p.span, "pragma is not locked to one compiler version", nullptr, nullptr,
                           {{"pragma", p.text}});
}

// 9: state variable without an explicit visibility keyword.
void check_default_state_visibility(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        for (const auto& v : cb.contract->state_vars)
            if (v.visibility == Visibility::Unspecified)
                ctx.report(v.span, "state variable '" + v.name + "' has no explicit visibility", cb.contract);
}

// 12: deprecated builtins, scanned on the token stream.
void check_deprecated(Ctx& ctx) {
    for (const auto& fb : ctx.bundle.files) {
        std::vector<const Token*> toks;
        for (const auto& t : fb->tokens.tokens)
            if (!t.is_trivia() && t.kind != TokenKind::End) toks.push_back(&t);
        for (std::size_t i = 0; i < toks.size(); ++i) {
            const Token& t = *toks[i];
            if (t.kind != TokenKind::Identifier && t.kind != TokenKind::Keyword) continue;
            const bool after_dot = i > 0 && toks[i - 1]->is_punct(".");
            const std::string_view prev = i > 1 && after_dot ? toks[i - 2]->text : std::string_view{};
            std::string what;
            if (!after_dot && (t.text == "sha3" || t.text == "suicide" || t.text == "throw")) what = t.text;
            if (!after_dot && t.text == "var" && i + 1 < toks.size() &&
                (toks[i + 1]->kind == TokenKind::Identifier || toks[i + 1]->is_punct("(")))
                what = "var";
            if (after_dot && t.text == "callcode") what = "callcode";
            if (after_dot && t.text == "gas" && prev == "msg") what = "msg.gas";
            if (after_dot && t.text == "blockhash" && prev == "block") what = "block.blockhash";
            if (!what.empty()) ctx.report(t.span, "deprecated construct '" + what + "'", nullptr, nullptr, {{"construct", what}});
        }
    }
}

// 16: tx.origin compared in an authorization condition.
void check_tx_origin(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts) {
        for (const BodyRef& b : own_bodies(*cb.contract)) {
            visit_stmt(*b.body, [&](const Stmt& s) {
                const bool conditional = s.kind == StmtKind::Require || s.kind == StmtKind::Assert ||
                                         s.kind == StmtKind::If || s.kind == StmtKind::While;
                if (!conditional || s.exprs.empty()) return;
                visit_expr(s.exprs[0], [&](const Expr& e) {
                    if (e.kind != ExprKind::Binary || (e.name != "==" && e.name != "!=")) return;
                    for (int side = 0; side < 2; ++side) {
                        const Expr& x = unparen(e.operands[side]);
                        const Expr& other = e.operands[1 - side];
                        if (x.is_member("tx", "origin") && !is_msg_sender(other))
                            ctx.report(x.span, "tx.origin used for authorization", cb.contract, b.function);
                    }
                });
            });
        }
    }
}

// 17 and 47: block attributes feeding conditions or computations.
void block_attribute_uses(Ctx& ctx, bool (*pred)(const Expr&), const char* what) {
    for (const auto& cb : ctx.bundle.contracts) {
        for (const BodyRef& b : own_bodies(*cb.contract)) {
            visit_stmt(*b.body, [&](const Stmt& s) {
                if (s.kind == StmtKind::Emit) return;
                for (const auto& top : s.exprs) {
                    if (s.kind == StmtKind::Return && pred(unparen(top))) continue;
                    visit_expr(top, [&](const Expr& e) {
                        if (pred(e))
                            ctx.report(e.span, std::string(what) + " '" + std::string(e.span.text()) + "'", cb.contract,
                                       b.function);
                    });
                }
            });
        }
    }
}

void check_time_proxy(Ctx& ctx) { block_attribute_uses(ctx, is_time_attribute, "block value used as time proxy"); }
void check_miner_variables(Ctx& ctx) { block_attribute_uses(ctx, is_chain_attribute, "miner-controlled value"); }

// 19: old-style constructor name.
void check_constructor_name(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts) {
        if (cb.contract->kind != ContractKind::Contract) continue;
        for (const auto& f : cb.contract->functions)
            if (f.kind == FunctionKind::Function && f.name == cb.contract->name)
                ctx.report(f.name_span, "function named after its contract; use the constructor keyword", cb.contract,
                           &f);
    }
}

// 21: chain attributes (directly or through a local) deciding a branch in a value-moving function.
void check_weak_randomness(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts) {
        for (const FunctionAnalysis* fa : own_functions(cb)) {
            bool moves_value = false;
            for (const CallSite& c : fa->calls) {
                if (c.sends_ether()) moves_value = true;
                std::string m = c.member;
                std::transform(m.begin(), m.end(), m.begin(), [](unsigned char ch) { return std::tolower(ch); });
                if ((c.kind == CallKind::InternalCall || c.kind == CallKind::ExternalMemberCall) &&
                    (m.find("transfer") != std::string::npos || m.find("mint") != std::string::npos))
                    moves_value = true;
            }
            if (!moves_value) continue;
            std::set<std::string> tainted;
            auto is_tainted = [&](const Expr& e) {
                return contains(e, [&](const Expr& x) {
                    return is_chain_attribute(x) || (x.kind == ExprKind::Identifier && tainted.count(x.name));
                });
            };
            visit_stmt(fa->body.root, [&](const Stmt& s) {
                if (s.kind == StmtKind::VarDecl && !s.exprs.empty() && is_tainted(s.exprs[0]))
                    for (const auto& d : s.decls) tainted.insert(d.name);
                for (const auto& top : s.exprs)
                    visit_expr(top, [&](const Expr& e) {
                        if (e.kind == ExprKind::Assignment && unparen(e.operands[0]).kind == ExprKind::Identifier &&
                            fa->env->local(unparen(e.operands[0]).name) && is_tainted(e.operands[1]))
                            tainted.insert(unparen(e.operands[0]).name);
                    });
            });
            visit_stmt(fa->body.root, [&](const Stmt& s) {
                const Expr* cond = nullptr;
                if (s.kind == StmtKind::If || s.kind == StmtKind::While || s.kind == StmtKind::Require ||
                    s.kind == StmtKind::Assert)
                    cond = s.exprs.empty() ? nullptr : &s.exprs[0];
                if (cond && is_tainted(*cond))
                    ctx.report(cond->span, "branch depends on a chain attribute in a value-moving function",
                               cb.contract, fa->function);
                for (const auto& top : s.exprs)
                    visit_expr(top, [&](const Expr& e) {
                        if (e.kind == ExprKind::Conditional && is_tainted(e.operands[0]))
                            ctx.report(e.operands[0].span, "branch depends on a chain attribute in a value-moving function",
                                       cb.contract, fa->function);
                    });
            });
        }
    }
}

// 28: inline assembly.
void check_assembly(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        for (const BodyRef& b : own_bodies(*cb.contract))
            visit_stmt(*b.body, [&](const Stmt& s) {
                if (s.kind == StmtKind::Assembly) ctx.report(s.span, "inline assembly block", cb.contract, b.function);
            });
}

// 30: `=+` / `=-` typo.
void check_typo_operator(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        visit_contract_exprs(*cb.contract, [&](const Expr& e, const FunctionDef* fn) {
            if (e.kind == ExprKind::Assignment && (e.raw_operator == "=+" || e.raw_operator == "=-"))
                ctx.report(e.span, "assignment written as '" + e.raw_operator + "'; did you mean '" +
                                       e.raw_operator.substr(1) + "='?",
                           cb.contract, fn);
        });
}

// 31: right-to-left override character anywhere in the raw bytes.
void check_rtl_override(Ctx& ctx) {
    for (const auto& fb : ctx.bundle.files)
        for (const SourceSpan& s : fb->raw.rtl_override_positions)
            ctx.report(s, "U+202E right-to-left override character");
}

// Identifier occurrences that read a name, i.e. everything except plain-assignment targets.
struct ReadCounter {
    std::map<std::string, int> reads;

    void add(const Expr& top) {
        std::set<const Expr*> write_only;
        visit_expr(top, [&](const Expr& e) {
            if (e.kind != ExprKind::Assignment || e.name != "=") return;
            const Expr& l = unparen(e.operands[0]);
            if (l.kind == ExprKind::Identifier) write_only.insert(&l);
            if (l.kind == ExprKind::Tuple)
                for (const auto& el : l.operands)
                    if (el.kind == ExprKind::Identifier) write_only.insert(&el);
        });
        visit_expr(top, [&](const Expr& e) {
            if (e.kind == ExprKind::Identifier && !write_only.count(&e)) ++reads[e.name];
        });
    }
    int count(const std::string& n) const {
        auto it = reads.find(n);
        return it == reads.end() ? 0 : it->second;
    }
};

// 32: locals and private state variables that are never read.
void check_unused_variables(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts) {
        const ContractDef& c = *cb.contract;
        for (const BodyRef& b : own_bodies(c)) {
            ReadCounter rc;
            visit_stmt(*b.body, [&](const Stmt& s) {
                for (const auto& e : s.exprs) rc.add(e);
            });
            visit_stmt(*b.body, [&](const Stmt& s) {
                if (s.kind != StmtKind::VarDecl) return;
                for (const auto& d : s.decls)
                    if (!d.name.empty() && rc.count(d.name) == 0)
                        ctx.report(d.span, "local variable '" + d.name + "' is never read", &c, b.function);
            });
        }
        ReadCounter contract_reads;
        for (const auto& v : c.state_vars)
            if (v.initializer) contract_reads.add(*v.initializer);
        for (const BodyRef& b : own_bodies(c))
            visit_stmt(*b.body, [&](const Stmt& s) {
                for (const auto& e : s.exprs) contract_reads.add(e);
            });
        for (const auto& f : c.functions)
            for (const auto& inv : f.modifiers)
                for (const auto& a : inv.args) contract_reads.add(a);
        for (const auto& v : c.state_vars)
            if (v.visibility == Visibility::Private && contract_reads.count(v.name) == 0)
                ctx.report(v.span, "private state variable '" + v.name + "' is never read", &c);
    }
}

bool is_hash_function(const Expr& callee) {
    return callee.is_identifier("keccak256") || callee.is_identifier("sha256") || callee.is_identifier("sha3") ||
           callee.is_identifier("ripemd160");
}

// 34: abi.encodePacked with several dynamic arguments hashed together.
void check_packed_collision(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts) {
        for (const FunctionAnalysis* fa : own_functions(cb)) {
            visit_stmt_exprs(fa->body.root, [&](const Stmt&, const Expr& e) {
                if (e.kind != ExprKind::Call || !is_hash_function(e.callee())) return;
                for (std::size_t i = 0; i < e.arg_count(); ++i) {
                    const Expr& packed = unparen(e.arg(i));
                    if (packed.kind != ExprKind::Call || !packed.callee().is_member("abi", "encodePacked")) continue;
                    int dynamic = 0;
                    for (std::size_t j = 0; j < packed.arg_count(); ++j) {
                        const Expr& a = unparen(packed.arg(j));
                        if (a.kind == ExprKind::Literal) continue;
                        auto t = fa->env->type_of(a);
                        if (t && t->is_dynamic_length()) ++dynamic;
                    }
                    if (dynamic >= 2)
                        ctx.report(packed.span, "abi.encodePacked hashes " + std::to_string(dynamic) +
                                                    " variable-length arguments",
                                   cb.contract, fa->function, {{"dynamic_args", std::to_string(dynamic)}});
                }
            });
        }
    }
}

// 35: fixed gas stipends: transfer/send, or a literal gas amount.
void check_hardcoded_gas(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts) {
        for (const FunctionAnalysis* fa : own_functions(cb)) {
            for (const CallSite& c : fa->calls) {
                if (c.kind == CallKind::Send || c.kind == CallKind::EtherTransfer)
                    ctx.report(c.span, "'" + c.member + "' forwards a fixed 2300 gas stipend", cb.contract,
                               fa->function, {{"kind", to_string(c.kind)}});
                else if (c.gas_literal && is_external(c.kind))
                    ctx.report(c.span, "call with hard-coded gas amount " + *c.gas_literal, cb.contract, fa->function,
                               {{"gas", *c.gas_literal}});
            }
        }
    }
}

// 48: return inside a constructor.
void check_constructor_return(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        for (const auto& f : cb.contract->functions)
            if (f.is_constructor() && f.body)
                visit_stmt(*f.body, [&](const Stmt& s) {
                    if (s.kind == StmtKind::Return) ctx.report(s.span, "return statement in constructor", cb.contract, &f);
                });
}

bool value_type(const TypeExpr& t) {
    return t.kind == TypeExpr::Kind::Elementary || (t.kind == TypeExpr::Kind::User);
}

// 50: initialized state variables never written afterwards.
void check_could_be_constant(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts) {
        if (!cb.analysis) continue;
        for (const auto& v : cb.contract->state_vars) {
            if (v.constant || v.immutable || !v.initializer || !value_type(v.type)) continue;
            bool written = false;
            for (const auto& other : ctx.bundle.contracts) {
                if (!other.analysis || other.analysis->scope.state_var(v.name) != &v) continue;
                for (const auto& fa : other.analysis->functions)
                    if (fa->access.writes().count(v.name)) written = true;
            }
            if (!written)
                ctx.report(v.span, "state variable '" + v.name + "' is never modified; declare it constant", cb.contract);
        }
    }
}

bool is_zero_literal(const Expr& e) {
    const Expr& x = unparen(e);
    return x.kind == ExprKind::Literal && (x.literal == LiteralKind::Decimal || x.literal == LiteralKind::Hex) &&
           x.literal_digits().find_first_not_of('0') == std::string::npos && x.unit.empty();
}

// 51: comparisons of unsigned values against zero that cannot change outcome.
void check_tautology(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts) {
        for (const FunctionAnalysis* fa : own_functions(cb)) {
            visit_stmt_exprs(fa->body.root, [&](const Stmt&, const Expr& e) {
                if (e.kind != ExprKind::Binary) return;
                const Expr& l = e.operands[0];
                const Expr& r = e.operands[1];
                auto unsigned_operand = [&](const Expr& x) {
                    auto t = fa->env->type_of(x);
                    return t && t->is_unsigned_integer() && unparen(x).kind != ExprKind::Literal;
                };
                std::string verdict;
                if (is_zero_literal(r) && unsigned_operand(l)) {
                    if (e.name == ">=") verdict = "always true";
                    if (e.name == "<") verdict = "always false";
                }
                if (is_zero_literal(l) && unsigned_operand(r)) {
                    if (e.name == "<=") verdict = "always true";
                    if (e.name == ">") verdict = "always false";
                }
                if (!verdict.empty())
                    ctx.report(e.span, "comparison of unsigned value with zero is " + verdict, cb.contract,
                               fa->function);
            });
        }
    }
}

bool is_div(const Expr& e) {
    const Expr& x = unparen(e);
    if (x.kind == ExprKind::Binary && x.name == "/") return true;
    return x.kind == ExprKind::Call && x.callee().kind == ExprKind::Member && x.callee().name == "div";
}

// 52: a division result multiplied again.
void check_divide_before_multiply(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        visit_contract_exprs(*cb.contract, [&](const Expr& e, const FunctionDef* fn) {
            bool hit = false;
            if (e.kind == ExprKind::Binary && e.name == "*") hit = is_div(e.operands[0]) || is_div(e.operands[1]);
            if (e.kind == ExprKind::Call && e.callee().kind == ExprKind::Member && e.callee().name == "mul")
                hit = is_div(e.callee().operands.front()) || (e.arg_count() > 0 && is_div(e.arg(e.arg_count() - 1)));
            if (hit) ctx.report(e.span, "multiplication performed on the result of a division", cb.contract, fn);
        });
}

// 54: long decimal literals.
void check_too_many_digits(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        visit_contract_exprs(*cb.contract, [&](const Expr& e, const FunctionDef* fn) {
            if (e.kind != ExprKind::Literal || e.literal != LiteralKind::Decimal) return;
            if (e.name.find_first_of("eE_.") != std::string::npos) return;
            const std::string digits = e.literal_digits();
            if (static_cast<int>(digits.size()) >= ctx.config.literal_digits)
                ctx.report(e.span, "literal with " + std::to_string(digits.size()) + " digits; use scientific notation",
                           cb.contract, fn, {{"digits", std::to_string(digits.size())}});
        });
}

// 59: hard-coded non-zero addresses.
void check_hardcoded_address(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        visit_contract_exprs(*cb.contract, [&](const Expr& e, const FunctionDef* fn) {
            if (e.kind == ExprKind::Literal && e.literal == LiteralKind::Address && !is_zero_address(e))
                ctx.report(e.span, "hard-coded address " + e.name, cb.contract, fn);
        });
}

// 62: externally callable functions without NatSpec.
void check_natspec(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts) {
        if (cb.contract->kind == ContractKind::Interface) continue;
        for (const auto& f : cb.contract->functions)
            if (f.kind == FunctionKind::Function && f.externally_visible() && (!f.doc || f.doc->empty()))
                ctx.report(f.name_span, "function '" + f.name + "' has no NatSpec documentation", cb.contract, &f);
    }
}

// 67: events with address parameters, none indexed.
void check_unindexed_events(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        for (const auto& ev : cb.contract->events) {
            bool has_address = false, any_indexed = false;
            for (const auto& p : ev.params) {
                has_address = has_address || p.type.is_address();
                any_indexed = any_indexed || p.indexed;
            }
            if (has_address && !any_indexed)
                ctx.report(ev.span, "event '" + ev.name + "' has address parameters but none indexed", cb.contract);
        }
}

// 69: CapWords contracts, mixedCase functions.
void check_naming(Ctx& ctx) {
    static const std::regex cap_words("^_?[A-Z][A-Za-z0-9]*$");
    static const std::regex mixed_case("^_*[a-z][A-Za-z0-9]*$");
    for (const auto& cb : ctx.bundle.contracts) {
        const ContractDef& c = *cb.contract;
        if (!std::regex_match(c.name, cap_words))
            ctx.report(c.name_span, "contract name '" + c.name + "' is not CapWords", &c);
        for (const auto& f : c.functions)
            if (f.kind == FunctionKind::Function && !f.name.empty() && f.name != c.name &&
                !std::regex_match(f.name, mixed_case))
                ctx.report(f.name_span, "function name '" + f.name + "' is not mixedCase", &c, &f);
    }
}

// 72: imports that resolve outside the analyzed files.
void check_external_imports(Ctx& ctx) {
    namespace fs = std::filesystem;
    std::set<std::string> known;
    for (const auto& fb : ctx.bundle.files) known.insert(fs::absolute(fb->file->path()).lexically_normal().string());
    for (const auto& fb : ctx.bundle.files) {
        const fs::path dir = fs::absolute(fb->file->path()).parent_path();
        for (const auto& imp : fb->unit.imports) {
            const bool remote = imp.path.rfind("@", 0) == 0 || imp.path.find("://") != std::string::npos;
            const std::string resolved = (dir / imp.path).lexically_normal().string();
            if (remote || !known.count(resolved))
                ctx.report(imp.span, "import '" + imp.path + "' is outside the analyzed file set", nullptr, nullptr,
                           {{"path", imp.path}});
        }
    }
}

// 74: public functions never called internally.
void check_prefer_external(Ctx& ctx) {
    std::set<std::string> called;
    for (const auto& cb : ctx.bundle.contracts) {
        if (!cb.analysis) continue;
        for (const auto& fa : cb.analysis->functions)
            for (const CallSite& c : fa->calls)
                if (c.kind == CallKind::InternalCall) called.insert(c.member);
        for (const auto& f : cb.contract->functions)
            for (const auto& inv : f.modifiers) called.insert(inv.name);
    }
    for (const auto& cb : ctx.bundle.contracts) {
        if (cb.contract->kind != ContractKind::Contract) continue;
        for (const auto& f : cb.contract->functions)
            if (f.kind == FunctionKind::Function && f.visibility == Visibility::Public && !called.count(f.name))
                ctx.report(f.name_span, "public function '" + f.name + "' is never called internally; declare it external",
                           cb.contract, &f);
    }
}

// 76: require/revert without a reason.
void check_error_message(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        for (const BodyRef& b : own_bodies(*cb.contract))
            visit_stmt(*b.body, [&](const Stmt& s) {
                if (s.kind == StmtKind::Require && s.exprs.size() < 2)
                    ctx.report(s.span, "require without an error message", cb.contract, b.function);
                if (s.kind == StmtKind::Revert && s.exprs.empty() && s.name.empty())
                    ctx.report(s.span, "revert without an error message", cb.contract, b.function);
            });
}

int order_rank(const FunctionDef& f) {
    if (f.is_fallback_like()) return 0;
    switch (f.visibility) {
        case Visibility::External: return 1;
        case Visibility::Public:
        case Visibility::Unspecified: return 2;
        case Visibility::Internal: return 3;
        case Visibility::Private: return 4;
    }
    return 2;
}

// 78: fallback, external, public, internal, private.
void check_function_order(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts) {
        int highest = 0;
        const FunctionDef* highest_fn = nullptr;
        for (const auto& f : cb.contract->functions) {
            if (f.is_constructor()) continue;
            const int r = order_rank(f);
            if (r < highest) {
                ctx.report(f.name_span.empty() ? f.span : f.name_span,
                           "function '" + f.display_name() + "' is declared after '" + highest_fn->display_name() +
                               "' but belongs before it",
                           cb.contract, &f);
                break;
            }
            if (r > highest || !highest_fn) {
                highest = r;
                highest_fn = &f;
            }
        }
    }
}

// 79: visibility keyword after modifiers or mutability.
void check_visibility_order(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        for (const auto& f : cb.contract->functions) {
            bool other_first = false;
            for (const auto& h : f.header) {
                if (h.kind == HeaderItem::Kind::Visibility) {
                    if (other_first)
                        ctx.report(f.name_span.empty() ? f.span : f.name_span,
                                   "visibility of '" + f.display_name() + "' is not the first header keyword",
                                   cb.contract, &f);
                    break;
                }
                other_first = true;
            }
        }
}

// 80: named return values neither assigned nor returned.
void check_uninitialized_return(Ctx& ctx) {
    for (const auto& cb : ctx.bundle.contracts)
        for (const auto& f : cb.contract->functions) {
            if (!f.body) continue;
            bool any_named = false;
            for (const auto& r : f.returns) any_named = any_named || !r.name.empty();
            if (!any_named) continue;
            bool has_return = false;
            std::set<std::string> assigned;
            visit_stmt(*f.body, [&](const Stmt& s) {
                if (s.kind == StmtKind::Return) has_return = true;
                for (const auto& top : s.exprs)
                    visit_expr(top, [&](const Expr& e) {
                        if (e.kind != ExprKind::Assignment &&
                            !(e.kind == ExprKind::Unary && (e.name == "++" || e.name == "--")))
                            return;
                        visit_expr(e.operands[0], [&](const Expr& x) {
                            if (x.kind == ExprKind::Identifier) assigned.insert(x.name);
                        });
                    });
            });
            if (has_return) continue;
            for (const auto& r : f.returns)
                if (!r.name.empty() && !assigned.count(r.name))
                    ctx.report(r.span, "named return '" + r.name + "' is never assigned", cb.contract, &f);
        }
}

}  // namespace

void register_source_checks(std::map<int, CheckFn>& t) {
    t[1] = check_default_function_visibility;
    t[3] = check_outdated_compiler;
    t[4] = check_floating_pragma;
    t[9] = check_default_state_visibility;
    t[12] = check_deprecated;
    t[16] = check_tx_origin;
    t[17] = check_time_proxy;
    t[19] = check_constructor_name;
    t[21] = check_weak_randomness;
    t[28] = check_assembly;
    t[30] = check_typo_operator;
    t[31] = check_rtl_override;
    t[32] = check_unused_variables;
    t[34] = check_packed_collision;
    t[35] = check_hardcoded_gas;
    t[47] = check_miner_variables;
    t[48] = check_constructor_return;
    t[50] = check_could_be_constant;
    t[51] = check_tautology;
    t[52] = check_divide_before_multiply;
    t[54] = check_too_many_digits;
    t[59] = check_hardcoded_address;
    t[62] = check_natspec;
    t[67] = check_unindexed_events;
    t[69] = check_naming;
    t[72] = check_external_imports;
    t[74] = check_prefer_external;
    t[76] = check_error_message;
    t[78] = check_function_order;
    t[79] = check_visibility_order;
    t[80] = check_uninitialized_return;
}

}  // namespace tokenaudit::rules
