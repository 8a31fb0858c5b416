#include <algorithm>
#include <deque>

#include "tokenaudit/analysis.hpp"

namespace tokenaudit {

const char* to_string(EdgeKind k) {
    switch (k) {
        case EdgeKind::Seq: return "seq";
        case EdgeKind::True: return "true";
        case EdgeKind::False: return "false";
        case EdgeKind::LoopBack: return "loop-back";
    }
    return "?";
}

std::vector<int> Cfg::successors(int block) const {
    std::vector<int> out;
    for (const auto& e : edges)
        if (e.from == block) out.push_back(e.to);
    return out;
}

std::vector<int> Cfg::predecessors(int block) const {
    std::vector<int> out;
    for (const auto& e : edges)
        if (e.to == block) out.push_back(e.from);
    return out;
}

std::set<int> Cfg::reachable_from(int block) const {
    std::set<int> seen{block};
    std::deque<int> work{block};
    while (!work.empty()) {
        int b = work.front();
        work.pop_front();
        for (int s : successors(b))
            if (s >= 0 && seen.insert(s).second) work.push_back(s);
    }
    return seen;
}

std::vector<CfgEdge> Cfg::loop_edges() const {
    std::vector<CfgEdge> out;
    for (const auto& e : edges)
        if (e.kind == EdgeKind::LoopBack) out.push_back(e);
    return out;
}

namespace {

class CfgBuilder {
public:
    Cfg run(const Stmt& root) {
        cur_ = new_block();
        cfg_.entry = cur_;
        lower(root);
        if (cur_ >= 0) edge(cur_, Cfg::kNormalExit, EdgeKind::Seq);
        return std::move(cfg_);
    }

private:
    struct Loop {
        int continue_target;
        int break_target;
    };

    int new_block() {
        const int id = static_cast<int>(cfg_.blocks.size());
        cfg_.blocks.push_back({id, {}});
        return id;
    }

    void edge(int from, int to, EdgeKind kind) {
        if (from >= 0) cfg_.edges.push_back({from, to, kind});
    }

    // Current block, opening a fresh (unreachable) one after a jump.
    int current() {
        if (cur_ < 0) cur_ = new_block();
        return cur_;
    }

    void add(const Stmt& s, ItemPart part = ItemPart::Whole) {
        cfg_.blocks[current()].items.push_back({&s, part});
    }

    void lower(const Stmt& s) {
        switch (s.kind) {
            case StmtKind::Block:
            case StmtKind::Unchecked:
                for (const auto& child : s.body) lower(child);
                break;
            case StmtKind::If: {
                add(s, ItemPart::Condition);
                const int cond = cur_;
                const int then_b = new_block();
                edge(cond, then_b, EdgeKind::True);
                cur_ = then_b;
                lower(s.body[0]);
                const int then_end = cur_;
                int else_end = -1;
                if (s.body.size() > 1) {
                    const int else_b = new_block();
                    edge(cond, else_b, EdgeKind::False);
                    cur_ = else_b;
                    lower(s.body[1]);
                    else_end = cur_;
                }
                const int after = new_block();
                edge(then_end, after, EdgeKind::Seq);
                if (s.body.size() > 1) edge(else_end, after, EdgeKind::Seq);
                else edge(cond, after, EdgeKind::False);
                cur_ = after;
                break;
            }
            case StmtKind::While: {
                const int header = new_block();
                edge(cur_, header, EdgeKind::Seq);
                cur_ = header;
                add(s, ItemPart::Condition);
                const int body = new_block();
                const int after = new_block();
                edge(header, body, EdgeKind::True);
                edge(header, after, EdgeKind::False);
                loops_.push_back({header, after});
                cur_ = body;
                lower(s.body[0]);
                edge(cur_, header, EdgeKind::LoopBack);
                loops_.pop_back();
                cur_ = after;
                break;
            }
            case StmtKind::For: {
                lower(s.body[0]);
                const int header = new_block();
                edge(cur_, header, EdgeKind::Seq);
                cur_ = header;
                add(s, ItemPart::Condition);
                const int body = new_block();
                const int latch = new_block();
                const int after = new_block();
                edge(header, body, EdgeKind::True);
                if (s.exprs[0].kind != ExprKind::Empty) edge(header, after, EdgeKind::False);
                cfg_.blocks[latch].items.push_back({&s, ItemPart::Post});
                loops_.push_back({latch, after});
                cur_ = body;
                lower(s.body[1]);
                edge(cur_, latch, EdgeKind::Seq);
                edge(latch, header, EdgeKind::LoopBack);
                loops_.pop_back();
                cur_ = after;
                break;
            }
            case StmtKind::DoWhile: {
                const int body = new_block();
                edge(cur_, body, EdgeKind::Seq);
                const int cond = new_block();
                const int after = new_block();
                loops_.push_back({cond, after});
                cur_ = body;
                lower(s.body[0]);
                edge(cur_, cond, EdgeKind::Seq);
                loops_.pop_back();
                cfg_.blocks[cond].items.push_back({&s, ItemPart::Condition});
                edge(cond, body, EdgeKind::LoopBack);
                edge(cond, after, EdgeKind::False);
                cur_ = after;
                break;
            }
            case StmtKind::Return:
                add(s);
                edge(cur_, Cfg::kNormalExit, EdgeKind::Seq);
                cur_ = -1;
                break;
            case StmtKind::Revert:
            case StmtKind::Throw:
                add(s);
                edge(cur_, Cfg::kRevertExit, EdgeKind::Seq);
                cur_ = -1;
                break;
            case StmtKind::Require:
            case StmtKind::Assert: {
                add(s);
                const int from = cur_;
                const int next = new_block();
                edge(from, next, EdgeKind::True);
                edge(from, Cfg::kRevertExit, EdgeKind::False);
                cur_ = next;
                break;
            }
            case StmtKind::Break:
            case StmtKind::Continue:
                add(s);
                if (!loops_.empty()) {
                    const Loop& l = loops_.back();
                    edge(cur_, s.kind == StmtKind::Break ? l.break_target : l.continue_target, EdgeKind::Seq);
                }
                cur_ = -1;
                break;
            case StmtKind::Try: {
                add(s);
                const int from = cur_;
                std::vector<int> ends;
                for (std::size_t i = 0; i < s.body.size(); ++i) {
                    const int clause = new_block();
                    edge(from, clause, i == 0 ? EdgeKind::True : EdgeKind::False);
                    cur_ = clause;
                    lower(s.body[i]);
                    ends.push_back(cur_);
                }
                const int after = new_block();
                for (int e : ends) edge(e, after, EdgeKind::Seq);
                cur_ = after;
                break;
            }
            default: add(s); break;
        }
    }

    Cfg cfg_;
    int cur_ = -1;
    std::vector<Loop> loops_;
};

}  // namespace

Cfg build_cfg(const EffectiveBody& body) { return CfgBuilder().run(body.root); }

int nesting_depth(const Stmt& s) {
    auto max_child = [](const std::vector<Stmt>& children) {
        int m = 0;
        for (const auto& c : children) m = std::max(m, nesting_depth(c));
        return m;
    };
    switch (s.kind) {
        case StmtKind::Block:
        case StmtKind::Unchecked: return max_child(s.body);
        case StmtKind::If: {
            int d = nesting_depth(s.body[0]);
            if (s.body.size() > 1) {
                // `else if` chains stay at the same level.
                const int e = nesting_depth(s.body[1]);
                d = std::max(d, s.body[1].kind == StmtKind::If ? e - 1 : e);
            }
            return 1 + d;
        }
        case StmtKind::For:
        case StmtKind::While:
        case StmtKind::DoWhile:
        case StmtKind::Try: return 1 + max_child(s.body);
        default: return 0;
    }
}

}  // namespace tokenaudit
