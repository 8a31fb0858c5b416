#include <algorithm>

#include "tokenaudit/analysis.hpp"
#include "tokenaudit/walk.hpp"

namespace tokenaudit {

namespace {

bool is_this(const Expr& e) {
    const Expr& x = unparen(e);
    if (x.is_identifier("this")) return true;
    return x.kind == ExprKind::TypeCast && x.name == "address" && unparen(x.operands.front()).is_identifier("this");
}

class EventBuilder {
public:
    EventBuilder(const std::vector<CallSite>& calls, const TypeEnv& env, EffectsCache& cache)
        : env_(env), cache_(cache), calls_(calls) {
        for (std::size_t i = 0; i < calls.size(); ++i) {
            if (calls[i].expr) by_expr_[calls[i].expr] = static_cast<int>(i);
            else if (calls[i].stmt) by_stmt_[calls[i].stmt] = static_cast<int>(i);
        }
    }

    void item(const CfgItem& it, std::vector<AccessEvent>& out) {
        out_ = &out;
        const Stmt& s = *it.stmt;
        from_modifier_ = !s.origin.empty();
        switch (it.part) {
            case ItemPart::Condition:
                if (!s.exprs.empty() && s.exprs[0].kind != ExprKind::Empty) expr(s.exprs[0]);
                return;
            case ItemPart::Post:
                if (s.exprs.size() > 1 && s.exprs[1].kind != ExprKind::Empty) expr(s.exprs[1]);
                return;
            case ItemPart::Whole: break;
        }
        switch (s.kind) {
            case StmtKind::Assembly:
            case StmtKind::Block:
                return;
            case StmtKind::Try:
                if (!s.exprs.empty()) expr(s.exprs[0]);
                return;
            default:
                for (const auto& e : s.exprs) expr(e);
                if (s.kind == StmtKind::Emit) {
                    auto found = by_stmt_.find(&s);
                    if (found != by_stmt_.end()) push(AccessEvent::Kind::Call, {}, s.span, found->second);
                }
        }
    }

    // Whole statement tree in source order, for flattened callee summaries.
    void tree(const Stmt& s, std::vector<AccessEvent>& out) {
        switch (s.kind) {
            case StmtKind::Block:
            case StmtKind::Unchecked:
                for (const auto& c : s.body) tree(c, out);
                return;
            case StmtKind::If:
            case StmtKind::While:
                item({&s, ItemPart::Condition}, out);
                for (const auto& c : s.body) tree(c, out);
                return;
            case StmtKind::DoWhile:
                tree(s.body[0], out);
                item({&s, ItemPart::Condition}, out);
                return;
            case StmtKind::For:
                tree(s.body[0], out);
                item({&s, ItemPart::Condition}, out);
                tree(s.body[1], out);
                item({&s, ItemPart::Post}, out);
                return;
            case StmtKind::Try:
                item({&s, ItemPart::Whole}, out);
                for (const auto& c : s.body) tree(c, out);
                return;
            default: item({&s, ItemPart::Whole}, out);
        }
    }

private:
    void push(AccessEvent::Kind kind, std::string var, const SourceSpan& span, int call = -1, bool external = false) {
        AccessEvent ev;
        ev.kind = kind;
        ev.var = std::move(var);
        ev.call = call;
        ev.external = external;
        ev.from_modifier = from_modifier_;
        ev.span = span;
        out_->push_back(std::move(ev));
    }

    void expr(const Expr& e) {
        switch (e.kind) {
            case ExprKind::Identifier: {
                if (env_.state_var(e.name)) {
                    push(AccessEvent::Kind::Read, e.name, e.span);
                } else if (const LocalVar* l = env_.local(e.name); l && !l->storage_alias.empty()) {
                    push(AccessEvent::Kind::Read, l->storage_alias, e.span);
                }
                return;
            }
            case ExprKind::Member:
                if (e.name == "balance" && is_this(e.operands.front())) {
                    push(AccessEvent::Kind::Read, "self-balance", e.span);
                    return;
                }
                expr(e.operands.front());
                return;
            case ExprKind::Assignment:
                expr(e.operands[1]);
                lvalue(e.operands[0], e.name != "=");
                return;
            case ExprKind::Unary:
                if (e.name == "++" || e.name == "--") {
                    lvalue(e.operands[0], true);
                    return;
                }
                if (e.name == "delete") {
                    lvalue(e.operands[0], false);
                    return;
                }
                expr(e.operands[0]);
                return;
            case ExprKind::Call: call(e); return;
            default:
                for (const auto& op : e.operands) expr(op);
                for (const auto& op : e.option_values) expr(op);
        }
    }

    void lvalue(const Expr& target, bool compound) {
        const Expr& l = unparen(target);
        if (l.kind == ExprKind::Tuple) {
            for (const auto& el : l.operands)
                if (el.kind != ExprKind::Empty) lvalue(el, compound);
            return;
        }
        // Index expressions along the access path are reads.
        const Expr* cur = &l;
        while (cur->kind == ExprKind::Index || cur->kind == ExprKind::Member) {
            if (cur->kind == ExprKind::Index)
                for (std::size_t i = 1; i < cur->operands.size(); ++i) expr(cur->operands[i]);
            cur = &cur->operands.front();
        }
        if (cur->kind != ExprKind::Identifier) {
            expr(*cur);
            return;
        }
        const std::string root = env_.state_root(l);
        if (root.empty()) return;
        if (compound) push(AccessEvent::Kind::Read, root, l.span);
        push(AccessEvent::Kind::Write, root, l.span);
    }

    void call(const Expr& e) {
        for (const auto& v : e.option_values) expr(v);
        for (std::size_t i = 0; i < e.arg_count(); ++i) expr(e.arg(i));
        const Expr& callee = e.callee();
        if (callee.kind == ExprKind::Member) expr(callee.operands.front());

        auto found = by_expr_.find(&e);
        if (found == by_expr_.end()) return;
        const int idx = found->second;
        const CallSite& site = calls_[idx];

        if (site.kind == CallKind::Builtin && callee.kind == ExprKind::Member &&
            (callee.name == "push" || callee.name == "pop")) {
            const std::string root = env_.state_root(callee.operands.front());
            if (!root.empty()) push(AccessEvent::Kind::Write, root, e.span);
        }
        push(AccessEvent::Kind::Call, {}, e.span, idx, is_external(site.kind));
        if (site.kind == CallKind::LibraryCall && site.callee && !site.callee->params.empty() &&
            site.callee->params.front().location == "storage" && callee.kind == ExprKind::Member) {
            // Library functions taking a storage reference may write through it.
            const std::string root = env_.state_root(callee.operands.front());
            if (!root.empty()) push(AccessEvent::Kind::Write, root, e.span);
        }
        if (site.kind == CallKind::InternalCall && site.callee) {
            const FunctionEffects& fx = cache_.effects(site.callee);
            for (const AccessEvent& inner : fx.events) {
                AccessEvent ev = inner;
                ev.from_modifier = ev.from_modifier || from_modifier_;
                ev.call = idx;
                ev.span = e.span;
                out_->push_back(std::move(ev));
            }
        }
    }

    const TypeEnv& env_;
    EffectsCache& cache_;
    const std::vector<CallSite>& calls_;
    std::map<const Expr*, int> by_expr_;
    std::map<const Stmt*, int> by_stmt_;
    std::vector<AccessEvent>* out_ = nullptr;
    bool from_modifier_ = false;
};

}  // namespace

std::set<std::string> StateAccessSummary::reads() const {
    std::set<std::string> out;
    for (const auto& block : per_block)
        for (const auto& ev : block)
            if (ev.kind == AccessEvent::Kind::Read) out.insert(ev.var);
    return out;
}

std::set<std::string> StateAccessSummary::writes() const {
    std::set<std::string> out;
    for (const auto& block : per_block)
        for (const auto& ev : block)
            if (ev.kind == AccessEvent::Kind::Write) out.insert(ev.var);
    return out;
}

StateAccessSummary state_access(const Cfg& cfg, const std::vector<CallSite>& calls, const TypeEnv& env,
                                EffectsCache& cache) {
    StateAccessSummary out;
    EventBuilder builder(calls, env, cache);
    out.per_block.resize(cfg.blocks.size());
    for (const auto& block : cfg.blocks)
        for (const auto& it : block.items) builder.item(it, out.per_block[block.id]);

    for (const auto& block : cfg.blocks) {
        const auto& events = out.per_block[block.id];
        for (std::size_t i = 0; i < events.size(); ++i) {
            const AccessEvent& ev = events[i];
            if (ev.kind != AccessEvent::Kind::Call || !ev.external) continue;
            auto& all = out.post_call_writes[ev.call];
            auto& own = out.post_call_function_writes[ev.call];
            auto record = [&](const AccessEvent& w) {
                if (w.kind != AccessEvent::Kind::Write) return;
                all.insert(w.var);
                if (!w.from_modifier) own.emplace(w.var, w.span);
            };
            for (std::size_t j = i + 1; j < events.size(); ++j) record(events[j]);
            std::set<int> later;
            for (int s : cfg.successors(block.id))
                if (s >= 0) {
                    auto r = cfg.reachable_from(s);
                    later.insert(r.begin(), r.end());
                }
            for (int b : later)
                for (const auto& w : out.per_block[b]) record(w);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

const FunctionEffects& EffectsCache::effects(const FunctionDef* fn) {
    static const FunctionEffects kEmpty;
    if (auto it = done_.find(fn); it != done_.end()) return it->second;
    if (!fn->body || active_.count(fn)) return kEmpty;
    active_.insert(fn);
    EffectiveBody body = expand_modifiers(*fn, scope_);
    TypeEnv env = make_type_env(*fn, &body.root, scope_, index_);
    std::vector<CallSite> calls = classify_calls(body, scope_, env);
    FunctionEffects fx;
    EventBuilder builder(calls, env, *this);
    builder.tree(body.root, fx.events);
    fx.has_external_call = std::any_of(fx.events.begin(), fx.events.end(), [](const AccessEvent& ev) {
        return ev.kind == AccessEvent::Kind::Call && ev.external;
    });
    active_.erase(fn);
    return done_.emplace(fn, std::move(fx)).first->second;
}

std::unique_ptr<FunctionAnalysis> analyze_function(const FunctionDef& fn, const ContractScope& scope,
                                                   const ProgramIndex& index, EffectsCache& cache) {
    auto fa = std::make_unique<FunctionAnalysis>();
    fa->function = &fn;
    fa->owner = scope.owner_of(&fn);
    fa->body = expand_modifiers(fn, scope);
    fa->env = std::make_unique<TypeEnv>(make_type_env(fn, &fa->body.root, scope, index));
    fa->cfg = build_cfg(fa->body);
    fa->calls = classify_calls(fa->body, scope, *fa->env);
    fa->access = state_access(fa->cfg, fa->calls, *fa->env, cache);
    return fa;
}

const FunctionAnalysis* ContractAnalysis::find(const FunctionDef* fn) const {
    for (const auto& f : functions)
        if (f->function == fn) return f.get();
    return nullptr;
}

const FunctionAnalysis* ContractAnalysis::find(std::string_view name) const {
    for (const auto& f : functions)
        if (f->function->kind == FunctionKind::Function && f->function->name == name) return f.get();
    return nullptr;
}

std::unique_ptr<ContractAnalysis> analyze_contract(const ContractDef& c, const ProgramIndex& index) {
    auto ca = std::make_unique<ContractAnalysis>();
    ca->contract = &c;
    ca->scope = make_scope(c, index);
    ca->guards = guard_facts(ca->scope);
    EffectsCache cache(ca->scope, index);
    for (const FunctionDef* fn : ca->scope.functions) {
        if (!fn->body) continue;
        ca->functions.push_back(analyze_function(*fn, ca->scope, index, cache));
    }
    return ca;
}

}  // namespace tokenaudit
