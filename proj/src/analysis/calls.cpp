#include <set>

#include "tokenaudit/analysis.hpp"
#include "tokenaudit/walk.hpp"

namespace tokenaudit {

const char* to_string(CallKind k) {
    switch (k) {
        case CallKind::LowLevelCall: return "low-level-call";
        case CallKind::CallWithValue: return "call-with-value";
        case CallKind::Send: return "send";
        case CallKind::EtherTransfer: return "ether-transfer";
        case CallKind::Delegatecall: return "delegatecall";
        case CallKind::Selfdestruct: return "selfdestruct";
        case CallKind::ExternalMemberCall: return "external-member-call";
        case CallKind::InternalCall: return "internal-call";
        case CallKind::LibraryCall: return "library-call";
        case CallKind::EventEmit: return "event-emit";
        case CallKind::Builtin: return "builtin";
        case CallKind::TypeConversion: return "type-conversion";
        case CallKind::Creation: return "creation";
    }
    return "?";
}

bool is_external(CallKind k) {
    return k == CallKind::LowLevelCall || k == CallKind::CallWithValue || k == CallKind::Send ||
           k == CallKind::EtherTransfer || k == CallKind::ExternalMemberCall || k == CallKind::Delegatecall;
}

bool CallSite::sends_ether() const {
    switch (kind) {
        case CallKind::Send:
        case CallKind::EtherTransfer:
        case CallKind::CallWithValue: return true;
        case CallKind::ExternalMemberCall: return value != nullptr;
        default: return false;
    }
}

namespace {

const std::set<std::string, std::less<>>& builtin_functions() {
    static const std::set<std::string, std::less<>> names = {
        "require", "assert",  "revert",    "keccak256", "sha256", "ripemd160", "ecrecover", "addmod",
        "mulmod",  "sha3",    "blockhash", "gasleft",   "type",   "block",     "log0",      "log1",
        "log2",    "log3",    "log4",
    };
    return names;
}

std::optional<std::string> literal_digits_of(const Expr* e) {
    if (!e || e->kind != ExprKind::Literal) return std::nullopt;
    if (e->literal != LiteralKind::Decimal && e->literal != LiteralKind::Hex) return std::nullopt;
    return e->name;
}

class Classifier {
public:
    Classifier(const EffectiveBody& body, const ContractScope& scope, const TypeEnv& env)
        : body_(body), scope_(scope), env_(env) {
        visit_stmt_exprs(body.root, [&](const Stmt&, const Expr& e) {
            if (e.kind == ExprKind::Identifier) ++identifier_uses_[e.name];
        });
    }

    std::vector<CallSite> run() {
        walk_stmt(body_.root);
        return std::move(out_);
    }

private:
    void walk_stmt(const Stmt& s) {
        const bool loop = s.kind == StmtKind::For || s.kind == StmtKind::While || s.kind == StmtKind::DoWhile;
        if (s.kind == StmtKind::Emit) {
            CallSite site;
            site.kind = CallKind::EventEmit;
            site.span = s.span;
            site.stmt = &s;
            site.member = s.name;
            site.target = s.name;
            site.origin = s.origin;
            site.in_loop = loop_depth_ > 0;
            out_.push_back(std::move(site));
        }
        if (loop) ++loop_depth_;
        for (std::size_t i = 0; i < s.exprs.size(); ++i) {
            const Expr& e = s.exprs[i];
            bool used = true;
            if (s.kind == StmtKind::Expression) used = false;
            if (s.kind == StmtKind::VarDecl) used = declared_names_read(s);
            walk_expr(e, s, used);
        }
        for (const auto& child : s.body) walk_stmt(child);
        if (loop) --loop_depth_;
    }

    bool declared_names_read(const Stmt& s) const {
        for (const auto& d : s.decls) {
            if (d.name.empty()) continue;
            auto it = identifier_uses_.find(d.name);
            if (it != identifier_uses_.end() && it->second > 0) return true;
        }
        return false;
    }

    // Locals assigned by `lhs` that are read anywhere other than in `lhs` itself.
    bool assigned_locals_read(const Expr& lhs) const {
        std::map<std::string, int> in_lhs;
        bool any_state = false;
        visit_expr(lhs, [&](const Expr& x) {
            if (x.kind == ExprKind::Identifier) ++in_lhs[x.name];
        });
        std::vector<const Expr*> targets;
        const Expr& l = unparen(lhs);
        if (l.kind == ExprKind::Tuple) {
            for (const auto& el : l.operands) targets.push_back(&el);
        } else {
            targets.push_back(&l);
        }
        for (const Expr* t : targets) {
            if (t->kind == ExprKind::Empty) continue;
            if (t->kind != ExprKind::Identifier || !env_.local(t->name)) {
                any_state = true;
                continue;
            }
            auto it = identifier_uses_.find(t->name);
            const int total = it == identifier_uses_.end() ? 0 : it->second;
            if (total > in_lhs[t->name]) return true;
        }
        return any_state;
    }

    void walk_expr(const Expr& e, const Stmt& s, bool used) {
        if (e.kind == ExprKind::Assignment) {
            walk_expr(e.operands[0], s, true);
            const bool rhs_used = e.name != "=" || assigned_locals_read(e.operands[0]);
            walk_expr(e.operands[1], s, rhs_used);
            return;
        }
        if (e.kind == ExprKind::Call) classify(e, s, used);
        for (const auto& op : e.operands) walk_expr(op, s, true);
        for (const auto& op : e.option_values) walk_expr(op, s, true);
    }

    const FunctionDef* pick_overload(std::vector<const FunctionDef*> fns, std::size_t argc) const {
        for (const FunctionDef* f : fns)
            if (f->params.size() == argc) return f;
        return fns.empty() ? nullptr : fns.front();
    }

    const FunctionDef* library_function(const ContractDef* lib, std::string_view name, std::size_t argc) const {
        if (!lib) return nullptr;
        std::vector<const FunctionDef*> fns;
        for (const auto& f : lib->functions)
            if (f.name == name) fns.push_back(&f);
        return pick_overload(fns, argc);
    }

    void classify(const Expr& e, const Stmt& s, bool used) {
        CallSite site;
        site.expr = &e;
        site.stmt = &s;
        site.span = e.span;
        site.origin = s.origin;
        site.return_used = used;
        site.in_loop = loop_depth_ > 0;
        site.value = e.option("value");
        site.value_forwarded = site.value != nullptr;
        site.gas_literal = literal_digits_of(e.option("gas"));

        const Expr& callee = e.callee();
        site.target = std::string(callee.span.text());
        const ProgramIndex& index = env_.index();

        if (callee.kind == ExprKind::Member) {
            const Expr& base = callee.operands.front();
            const std::string& m = callee.name;
            site.member = m;
            site.target = std::string(base.span.text());
            site.receiver = &base;
            auto base_type = env_.type_of(base);
            if (base.is_identifier("super")) {
                site.kind = CallKind::InternalCall;
                site.callee = pick_overload(scope_.functions_named(m), e.arg_count());
            } else if (base.kind == ExprKind::Identifier && !env_.local(base.name) && index.is_library(base.name)) {
                site.kind = CallKind::LibraryCall;
                site.callee = library_function(index.find(base.name), m, e.arg_count());
            } else if (base.is_identifier("abi") || base.is_identifier("bytes") || base.is_identifier("string") ||
                       (base.kind == ExprKind::Call && base.callee().is_identifier("type"))) {
                site.kind = CallKind::Builtin;
            } else if (m == "delegatecall" || m == "callcode") {
                site.kind = CallKind::Delegatecall;
            } else if (m == "call" || m == "staticcall") {
                site.kind = site.value && m == "call" ? CallKind::CallWithValue : CallKind::LowLevelCall;
            } else if (m == "send" && e.arg_count() == 1) {
                site.kind = CallKind::Send;
                site.value = &e.arg(0);
                site.value_forwarded = true;
            } else if (m == "transfer" && e.arg_count() == 1 &&
                       !(base_type && base_type->kind == TypeExpr::Kind::User)) {
                site.kind = CallKind::EtherTransfer;
                site.value = &e.arg(0);
                site.value_forwarded = true;
            } else if ((m == "push" || m == "pop") && base_type &&
                       (base_type->kind == TypeExpr::Kind::Array || base_type->name == "bytes")) {
                site.kind = CallKind::Builtin;
            } else if (const FunctionDef* lib_fn = using_for_function(base_type, m, e.arg_count())) {
                site.kind = CallKind::LibraryCall;
                site.callee = lib_fn;
            } else {
                site.kind = CallKind::ExternalMemberCall;
            }
        } else if (callee.kind == ExprKind::Identifier) {
            const std::string& n = callee.name;
            site.member = n;
            if (env_.local(n)) {
                site.kind = CallKind::InternalCall;
            } else if (n == "selfdestruct" || n == "suicide") {
                site.kind = CallKind::Selfdestruct;
                if (e.arg_count() > 0) site.receiver = &e.arg(0);
            } else if (builtin_functions().count(n)) {
                site.kind = CallKind::Builtin;
            } else if (index.is_contract_type(n)) {
                site.kind = CallKind::TypeConversion;
            } else if (scope_.struct_def(n)) {
                site.kind = CallKind::Creation;
            } else if (scope_.event(n) && scope_.functions_named(n).empty()) {
                site.kind = CallKind::EventEmit;
            } else {
                site.kind = CallKind::InternalCall;
                site.callee = pick_overload(scope_.functions_named(n), e.arg_count());
            }
        } else if (callee.kind == ExprKind::New) {
            site.kind = CallKind::Creation;
        } else if (callee.kind == ExprKind::ElementaryType) {
            site.kind = CallKind::TypeConversion;
        } else {
            site.kind = CallKind::InternalCall;
        }
        out_.push_back(std::move(site));
    }

    const FunctionDef* using_for_function(const std::optional<TypeExpr>& base_type, std::string_view m,
                                          std::size_t argc) const {
        for (const UsingFor* u : scope_.using_for) {
            const ContractDef* lib = env_.index().find(u->library);
            if (!lib || lib->kind != ContractKind::Library) continue;
            const FunctionDef* f = library_function(lib, m, argc + 1);
            if (!f) continue;
            if (u->target == "*" || !base_type || base_type->text() == u->target) return f;
        }
        return nullptr;
    }

    const EffectiveBody& body_;
    const ContractScope& scope_;
    const TypeEnv& env_;
    std::map<std::string, int> identifier_uses_;
    std::vector<CallSite> out_;
    int loop_depth_ = 0;
};

}  // namespace

std::vector<CallSite> classify_calls(const EffectiveBody& body, const ContractScope& scope, const TypeEnv& env) {
    return Classifier(body, scope, env).run();
}

}  // namespace tokenaudit
