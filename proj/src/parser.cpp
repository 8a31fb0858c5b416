#include "tokenaudit/parser.hpp"

#include <initializer_list>
#include <unordered_map>

namespace tokenaudit {

namespace {

struct ParseError {
    Diagnostic diagnostic;
};

constexpr int kMaxDepth = 200;

const std::unordered_map<std::string_view, int>& binary_precedence() {
    static const std::unordered_map<std::string_view, int> table = {
        {"||", 1}, {"&&", 2}, {"==", 3}, {"!=", 3}, {"<", 4},  {">", 4},   {"<=", 4},
        {">=", 4}, {"|", 5},  {"^", 6},  {"&", 7},  {"<<", 8}, {">>", 8},  {">>>", 8},
        {"+", 9},  {"-", 9},  {"*", 10}, {"/", 10}, {"%", 10}, {"**", 11},
    };
    return table;
}

bool is_assignment_op(std::string_view t) {
    return t == "=" || t == "+=" || t == "-=" || t == "*=" || t == "/=" || t == "%=" || t == "|=" ||
           t == "&=" || t == "^=" || t == "<<=" || t == ">>=" || t == ">>>=";
}

bool is_unit(std::string_view t) {
    return t == "wei" || t == "gwei" || t == "szabo" || t == "finney" || t == "ether" || t == "seconds" ||
           t == "minutes" || t == "hours" || t == "days" || t == "weeks" || t == "years";
}

bool is_location(const Token& t) {
    return t.is_keyword("storage") || t.is_keyword("memory") || t.is_keyword("calldata");
}

class Parser {
public:
    Parser(const TokenStream& stream, std::shared_ptr<const SourceFile> file) {
        unit_.file = std::move(file);
        unit_.diagnostics = stream.diagnostics;
        std::string pending;
        for (const auto& t : stream.tokens) {
            if (t.kind == TokenKind::DocComment) {
                if (!pending.empty()) pending += "\n";
                pending += t.text;
                continue;
            }
            if (t.kind == TokenKind::Comment) continue;
            toks_.push_back(&t);
            docs_.push_back(pending.empty() ? std::nullopt : std::optional<std::string>(pending));
            pending.clear();
        }
        if (toks_.empty() || toks_.back()->kind != TokenKind::End) {
            static const Token end_token{};
            toks_.push_back(&end_token);
            docs_.push_back(std::nullopt);
        }
    }

    SourceUnit run() {
        while (!at_end()) {
            const std::size_t before = pos_;
            try {
                parse_top_level();
            } catch (const ParseError& e) {
                unit_.diagnostics.push_back(e.diagnostic);
                recover_top_level();
            }
            if (pos_ == before) advance();
        }
        return std::move(unit_);
    }

private:
    // ---- token helpers -------------------------------------------------------

    const Token& cur() const { return *toks_[pos_]; }
    const Token& peek(std::size_t n = 1) const {
        return *toks_[std::min(pos_ + n, toks_.size() - 1)];
    }
    bool at_end() const { return cur().kind == TokenKind::End; }
    const Token& advance() {
        const Token& t = cur();
        if (!at_end()) ++pos_;
        return t;
    }
    bool accept_punct(std::string_view p) {
        if (cur().is_punct(p)) {
            advance();
            return true;
        }
        return false;
    }
    bool accept_keyword(std::string_view k) {
        if (cur().is_keyword(k)) {
            advance();
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(std::initializer_list<std::string_view> expected) const {
        Diagnostic d;
        d.code = DiagnosticCode::SyntaxError;
        d.span = cur().span;
        d.message = "unexpected '" + std::string(cur().text) + "'";
        for (auto e : expected) d.expected.emplace_back(e);
        if (!d.expected.empty()) {
            d.message += ", expected ";
            for (std::size_t i = 0; i < d.expected.size(); ++i) d.message += (i ? " | " : "") + d.expected[i];
        }
        throw ParseError{std::move(d)};
    }

    void expect_punct(std::string_view p) {
        if (!accept_punct(p)) fail({p});
    }
    void expect_keyword(std::string_view k) {
        if (!accept_keyword(k)) fail({k});
    }
    std::string expect_identifier() {
        if (cur().kind != TokenKind::Identifier) fail({"identifier"});
        return std::string(advance().text);
    }

    SourceSpan span_from(std::size_t start_index) const {
        const std::size_t last = pos_ > start_index ? pos_ - 1 : start_index;
        return SourceSpan::cover(toks_[start_index]->span, toks_[last]->span);
    }

    struct DepthGuard {
        explicit DepthGuard(Parser& p) : parser(p) {
            if (++parser.depth_ > kMaxDepth) {
                --parser.depth_;
                parser.fail({"shallower nesting"});
            }
        }
        ~DepthGuard() { --parser.depth_; }
        Parser& parser;
    };

    // Skip a balanced (), [] or {} group starting at the current opening token.
    void skip_balanced() {
        int depth = 0;
        do {
            const Token& t = advance();
            if (t.is_punct("(") || t.is_punct("[") || t.is_punct("{")) ++depth;
            else if (t.is_punct(")") || t.is_punct("]") || t.is_punct("}")) --depth;
        } while (depth > 0 && !at_end());
    }

    void record_unsupported(std::size_t start, std::string what) {
        SourceSpan span = span_from(start);
        unit_.unsupported.push_back(span);
        unit_.diagnostics.push_back({DiagnosticCode::UnsupportedConstruct, std::move(what), span, {}});
    }

    // ---- recovery ------------------------------------------------------------

    static bool starts_top_level(const Token& t) {
        return t.is_keyword("pragma") || t.is_keyword("import") || t.is_keyword("contract") ||
               t.is_keyword("library") || t.is_keyword("interface") || t.is_keyword("abstract");
    }

    static bool starts_member(const Token& t) {
        return t.is_keyword("function") || t.is_keyword("modifier") || t.is_keyword("event") ||
               t.is_keyword("constructor") || t.is_keyword("struct") || t.is_keyword("enum") ||
               t.is_keyword("using") || t.is_keyword("fallback") || t.is_keyword("receive");
    }

    void recover_top_level() {
        int depth = 0;
        while (!at_end()) {
            const Token& t = cur();
            if (depth == 0 && starts_top_level(t)) return;
            if (t.is_punct("{")) ++depth;
            if (t.is_punct("}")) depth = depth > 0 ? depth - 1 : 0;
            advance();
        }
    }

    void recover_member() {
        int depth = 0;
        while (!at_end()) {
            const Token& t = cur();
            if (depth == 0 && (t.is_punct("}") || starts_member(t))) return;
            advance();
            if (t.is_punct("{") || t.is_punct("(") || t.is_punct("[")) ++depth;
            if (t.is_punct("}") || t.is_punct(")") || t.is_punct("]")) {
                --depth;
                if (depth <= 0 && t.is_punct("}")) return;
                if (depth < 0) depth = 0;
            }
            if (depth == 0 && t.is_punct(";")) return;
        }
    }

    void recover_statement() {
        int depth = 0;
        while (!at_end()) {
            const Token& t = cur();
            if (depth == 0 && t.is_punct("}")) return;
            advance();
            if (t.is_punct("{") || t.is_punct("(") || t.is_punct("[")) ++depth;
            if (t.is_punct("}") || t.is_punct(")") || t.is_punct("]")) {
                --depth;
                if (depth <= 0 && t.is_punct("}")) return;
                if (depth < 0) depth = 0;
            }
            if (depth == 0 && t.is_punct(";")) return;
        }
    }

    // ---- top level -----------------------------------------------------------

    void parse_top_level() {
        const Token& t = cur();
        if (t.is_keyword("pragma")) return parse_pragma();
        if (t.is_keyword("import")) return parse_import();
        if (t.is_keyword("contract") || t.is_keyword("library") || t.is_keyword("interface") ||
            t.is_keyword("abstract"))
            return parse_contract();
        if (t.is_keyword("function")) {
            FunctionDef fn;
            parse_function(fn);
            unit_.free_functions.push_back(std::move(fn));
            return;
        }
        if (t.is_punct(";")) {
            advance();
            return;
        }
        // File-level struct/enum/error/using/type definitions and anything else.
        const std::size_t start = pos_;
        while (!at_end() && !cur().is_punct(";") && !cur().is_punct("{")) advance();
        if (cur().is_punct("{")) skip_balanced();
        else accept_punct(";");
        record_unsupported(start, "unsupported top-level construct");
    }

    void parse_pragma() {
        const std::size_t start = pos_;
        advance();
        PragmaDirective p;
        const std::size_t text_start = cur().span.start;
        std::size_t text_end = text_start;
        const bool is_solidity = cur().kind == TokenKind::Identifier && cur().text == "solidity";
        while (!at_end() && !cur().is_punct(";")) {
            text_end = cur().span.end;
            advance();
        }
        expect_punct(";");
        p.span = span_from(start);
        p.text = std::string(unit_.file->bytes().substr(text_start, text_end - text_start));
        if (is_solidity) {
            p.kind = PragmaDirective::Kind::SolidityVersion;
            p.constraint = VersionConstraint::parse(std::string_view(p.text).substr(8));
        }
        unit_.pragmas.push_back(std::move(p));
    }

    void parse_import() {
        const std::size_t start = pos_;
        advance();
        ImportDirective imp;
        while (!at_end() && !cur().is_punct(";")) {
            if (cur().kind == TokenKind::String && imp.path.empty()) {
                auto raw = cur().text;
                imp.path = std::string(raw.substr(1, raw.size() >= 2 ? raw.size() - 2 : 0));
            }
            advance();
        }
        expect_punct(";");
        imp.span = span_from(start);
        unit_.imports.push_back(std::move(imp));
    }

    void parse_contract() {
        const std::size_t start = pos_;
        ContractDef c;
        c.doc = docs_[pos_];
        if (accept_keyword("abstract")) c.is_abstract = true;
        if (accept_keyword("contract")) c.kind = ContractKind::Contract;
        else if (accept_keyword("library")) c.kind = ContractKind::Library;
        else if (accept_keyword("interface")) c.kind = ContractKind::Interface;
        else fail({"contract", "library", "interface"});
        c.name_span = cur().span;
        c.name = expect_identifier();
        if (accept_keyword("is")) {
            do {
                const std::size_t base_start = pos_;
                BaseSpec base;
                base.name = expect_identifier();
                while (accept_punct(".")) base.name += "." + expect_identifier();
                if (cur().is_punct("(")) base.args = parse_call_arguments();
                base.span = span_from(base_start);
                c.bases.push_back(std::move(base));
            } while (accept_punct(","));
        }
        expect_punct("{");
        while (!at_end() && !cur().is_punct("}")) {
            const std::size_t before = pos_;
            try {
                parse_member(c);
            } catch (const ParseError& e) {
                unit_.diagnostics.push_back(e.diagnostic);
                recover_member();
            }
            if (pos_ == before) advance();
        }
        expect_punct("}");
        c.span = span_from(start);
        unit_.contracts.push_back(std::move(c));
    }

    // ---- members -------------------------------------------------------------

    void parse_member(ContractDef& c) {
        const Token& t = cur();
        if (t.is_keyword("function") || t.is_keyword("constructor") || t.is_keyword("fallback") ||
            t.is_keyword("receive")) {
            FunctionDef fn;
            parse_function(fn);
            c.functions.push_back(std::move(fn));
        } else if (t.is_keyword("modifier")) {
            c.modifiers.push_back(parse_modifier());
        } else if (t.is_keyword("event")) {
            c.events.push_back(parse_event());
        } else if (t.is_keyword("struct")) {
            c.structs.push_back(parse_struct());
        } else if (t.is_keyword("enum")) {
            advance();
            c.enums.push_back(expect_identifier());
            skip_balanced();
        } else if (t.is_keyword("using")) {
            c.using_for.push_back(parse_using());
        } else if (t.kind == TokenKind::Identifier && t.text == "error" && peek().kind == TokenKind::Identifier) {
            const std::size_t start = pos_;
            while (!at_end() && !cur().is_punct(";")) advance();
            expect_punct(";");
            record_unsupported(start, "custom error definition");
        } else if (t.is_punct(";")) {
            advance();
        } else {
            c.state_vars.push_back(parse_state_var());
        }
    }

    void parse_function(FunctionDef& fn) {
        const std::size_t start = pos_;
        fn.doc = docs_[pos_];
        const Token& kw = advance();
        if (kw.is_keyword("constructor")) fn.kind = FunctionKind::Constructor;
        else if (kw.is_keyword("fallback")) fn.kind = FunctionKind::Fallback;
        else if (kw.is_keyword("receive")) fn.kind = FunctionKind::Receive;
        else {
            if (cur().kind == TokenKind::Identifier) {
                fn.name_span = cur().span;
                fn.name = std::string(advance().text);
            } else if (cur().is_keyword("fallback") || cur().is_keyword("receive")) {
                // `function receive()` in older code is an ordinary function.
                fn.name_span = cur().span;
                fn.name = std::string(advance().text);
            } else if (cur().is_punct("(")) {
                fn.kind = FunctionKind::Fallback;
            } else {
                fail({"function name", "("});
            }
        }
        if (fn.name_span.file == nullptr) fn.name_span = kw.span;
        fn.params = parse_param_list(false);

        while (!at_end() && !cur().is_punct("{") && !cur().is_punct(";")) {
            const Token& t = cur();
            if (t.is_keyword("public") || t.is_keyword("private") || t.is_keyword("internal") ||
                t.is_keyword("external")) {
                fn.visibility = t.text == "public"     ? Visibility::Public
                                : t.text == "private"  ? Visibility::Private
                                : t.text == "internal" ? Visibility::Internal
                                                       : Visibility::External;
                fn.header.push_back({HeaderItem::Kind::Visibility, std::string(t.text)});
                advance();
            } else if (t.is_keyword("payable") || t.is_keyword("view") || t.is_keyword("pure") ||
                       t.is_keyword("constant")) {
                fn.mutability = t.text == "payable" ? Mutability::Payable
                                : t.text == "pure"  ? Mutability::Pure
                                                    : Mutability::View;
                fn.header.push_back({HeaderItem::Kind::Mutability, std::string(t.text)});
                advance();
            } else if (t.is_keyword("virtual")) {
                fn.header.push_back({HeaderItem::Kind::Virtual, "virtual"});
                advance();
            } else if (t.is_keyword("override")) {
                fn.header.push_back({HeaderItem::Kind::Override, "override"});
                advance();
                if (cur().is_punct("(")) skip_balanced();
            } else if (t.is_keyword("returns")) {
                advance();
                fn.returns = parse_param_list(false);
            } else if (t.kind == TokenKind::Identifier) {
                const std::size_t mstart = pos_;
                ModifierInvocation inv;
                inv.name = std::string(advance().text);
                while (accept_punct(".")) inv.name += "." + expect_identifier();
                if (cur().is_punct("(")) inv.args = parse_call_arguments();
                inv.span = span_from(mstart);
                fn.header.push_back({HeaderItem::Kind::Modifier, inv.name});
                fn.modifiers.push_back(std::move(inv));
            } else {
                fail({"{", ";", "function attribute"});
            }
        }
        if (!accept_punct(";")) {
            if (!cur().is_punct("{")) fail({"{", ";"});
            fn.body = parse_block();
        }
        fn.span = span_from(start);
    }

    ModifierDef parse_modifier() {
        const std::size_t start = pos_;
        advance();
        ModifierDef m;
        m.name = expect_identifier();
        if (cur().is_punct("(")) m.params = parse_param_list(false);
        while (cur().is_keyword("virtual") || cur().is_keyword("override")) {
            advance();
            if (cur().is_punct("(")) skip_balanced();
        }
        if (!accept_punct(";")) m.body = parse_block();
        m.span = span_from(start);
        return m;
    }

    EventDef parse_event() {
        const std::size_t start = pos_;
        advance();
        EventDef e;
        e.name = expect_identifier();
        e.params = parse_param_list(true);
        if (accept_keyword("anonymous")) e.anonymous = true;
        expect_punct(";");
        e.span = span_from(start);
        return e;
    }

    StructDef parse_struct() {
        const std::size_t start = pos_;
        advance();
        StructDef s;
        s.name = expect_identifier();
        expect_punct("{");
        while (!at_end() && !cur().is_punct("}")) {
            const std::size_t fstart = pos_;
            Param p;
            p.type = parse_type();
            p.name = expect_identifier();
            expect_punct(";");
            p.span = span_from(fstart);
            s.fields.push_back(std::move(p));
        }
        expect_punct("}");
        s.span = span_from(start);
        return s;
    }

    UsingFor parse_using() {
        const std::size_t start = pos_;
        advance();
        UsingFor u;
        if (cur().is_punct("{")) {
            const std::size_t brace = pos_;
            skip_balanced();
            u.library = std::string(unit_.file->bytes().substr(toks_[brace]->span.start,
                                                               toks_[pos_ - 1]->span.end - toks_[brace]->span.start));
        } else {
            u.library = expect_identifier();
            while (accept_punct(".")) u.library += "." + expect_identifier();
        }
        expect_keyword("for");
        if (accept_punct("*")) u.target = "*";
        else u.target = parse_type().text();
        if (cur().kind == TokenKind::Identifier && cur().text == "global") advance();
        expect_punct(";");
        u.span = span_from(start);
        return u;
    }

    StateVarDecl parse_state_var() {
        const std::size_t start = pos_;
        StateVarDecl v;
        v.doc = docs_[pos_];
        v.type = parse_type();
        while (true) {
            const Token& t = cur();
            if (t.is_keyword("public")) v.visibility = Visibility::Public;
            else if (t.is_keyword("private")) v.visibility = Visibility::Private;
            else if (t.is_keyword("internal")) v.visibility = Visibility::Internal;
            else if (t.is_keyword("constant")) v.constant = true;
            else if (t.is_keyword("immutable")) v.immutable = true;
            else if (t.is_keyword("override")) {
                advance();
                if (cur().is_punct("(")) skip_balanced();
                continue;
            } else break;
            advance();
        }
        v.name = expect_identifier();
        if (accept_punct("=")) v.initializer = parse_expression();
        expect_punct(";");
        v.span = span_from(start);
        return v;
    }

    std::vector<Param> parse_param_list(bool allow_indexed) {
        std::vector<Param> out;
        expect_punct("(");
        if (accept_punct(")")) return out;
        do {
            const std::size_t start = pos_;
            Param p;
            p.type = parse_type();
            while (true) {
                if (allow_indexed && accept_keyword("indexed")) {
                    p.indexed = true;
                } else if (is_location(cur())) {
                    p.location = std::string(advance().text);
                } else {
                    break;
                }
            }
            if (cur().kind == TokenKind::Identifier) p.name = std::string(advance().text);
            p.span = span_from(start);
            out.push_back(std::move(p));
        } while (accept_punct(","));
        expect_punct(")");
        return out;
    }

    TypeExpr parse_type() {
        DepthGuard guard(*this);
        const std::size_t start = pos_;
        TypeExpr type;
        if (accept_keyword("mapping")) {
            expect_punct("(");
            TypeExpr key = parse_type();
            if (cur().kind == TokenKind::Identifier) advance();
            expect_punct("=>");
            TypeExpr value = parse_type();
            if (cur().kind == TokenKind::Identifier) advance();
            expect_punct(")");
            type.kind = TypeExpr::Kind::Mapping;
            type.children = {std::move(key), std::move(value)};
        } else if (accept_keyword("function")) {
            parse_param_list(false);
            while (cur().is_keyword("internal") || cur().is_keyword("external") || cur().is_keyword("view") ||
                   cur().is_keyword("pure") || cur().is_keyword("payable"))
                advance();
            if (accept_keyword("returns")) parse_param_list(false);
            type.kind = TypeExpr::Kind::Function;
            type.name = "function";
        } else if (cur().is_keyword("var")) {
            advance();
            type.kind = TypeExpr::Kind::Unknown;
            type.name = "var";
        } else if (cur().kind == TokenKind::Identifier) {
            std::string name(advance().text);
            if (is_elementary_type_name(name)) {
                type.kind = TypeExpr::Kind::Elementary;
                type.name = normalize_elementary(name);
                if (type.name == "address" && accept_keyword("payable")) type.payable = true;
            } else {
                while (accept_punct(".")) name += "." + expect_identifier();
                type.kind = TypeExpr::Kind::User;
                type.name = std::move(name);
            }
        } else {
            fail({"type name"});
        }
        while (cur().is_punct("[")) {
            advance();
            TypeExpr array;
            array.kind = TypeExpr::Kind::Array;
            if (!cur().is_punct("]")) {
                const std::size_t len_start = pos_;
                parse_expression();
                array.array_length = std::string(span_from(len_start).text());
            }
            expect_punct("]");
            array.children.push_back(std::move(type));
            type = std::move(array);
        }
        type.span = span_from(start);
        return type;
    }

    // ---- statements ----------------------------------------------------------

    Stmt parse_block() {
        const std::size_t start = pos_;
        Stmt block;
        block.kind = StmtKind::Block;
        expect_punct("{");
        while (!at_end() && !cur().is_punct("}")) {
            const std::size_t before = pos_;
            try {
                block.body.push_back(parse_statement());
            } catch (const ParseError& e) {
                unit_.diagnostics.push_back(e.diagnostic);
                recover_statement();
                Stmt bad;
                bad.kind = StmtKind::Unsupported;
                bad.span = span_from(before);
                block.body.push_back(std::move(bad));
            }
            if (pos_ == before) advance();
        }
        expect_punct("}");
        block.span = span_from(start);
        return block;
    }

    Stmt parse_statement() {
        DepthGuard guard(*this);
        const std::size_t start = pos_;
        const Token& t = cur();
        Stmt s;

        if (t.is_punct("{")) return parse_block();
        if (t.is_keyword("if")) {
            advance();
            s.kind = StmtKind::If;
            expect_punct("(");
            s.exprs.push_back(parse_expression());
            expect_punct(")");
            s.body.push_back(parse_statement());
            if (accept_keyword("else")) s.body.push_back(parse_statement());
        } else if (t.is_keyword("while")) {
            advance();
            s.kind = StmtKind::While;
            expect_punct("(");
            s.exprs.push_back(parse_expression());
            expect_punct(")");
            s.body.push_back(parse_statement());
        } else if (t.is_keyword("do")) {
            advance();
            s.kind = StmtKind::DoWhile;
            s.body.push_back(parse_statement());
            expect_keyword("while");
            expect_punct("(");
            s.exprs.push_back(parse_expression());
            expect_punct(")");
            expect_punct(";");
        } else if (t.is_keyword("for")) {
            advance();
            s.kind = StmtKind::For;
            expect_punct("(");
            Stmt init;
            if (cur().is_punct(";")) {
                init.kind = StmtKind::Empty;
                init.span = cur().span;
                advance();
            } else {
                init = parse_simple_statement();
            }
            Expr cond;
            cond.kind = ExprKind::Empty;
            if (!cur().is_punct(";")) cond = parse_expression();
            expect_punct(";");
            Expr post;
            post.kind = ExprKind::Empty;
            if (!cur().is_punct(")")) post = parse_expression();
            expect_punct(")");
            s.exprs.push_back(std::move(cond));
            s.exprs.push_back(std::move(post));
            s.body.push_back(std::move(init));
            s.body.push_back(parse_statement());
        } else if (t.is_keyword("return")) {
            advance();
            s.kind = StmtKind::Return;
            if (!cur().is_punct(";")) s.exprs.push_back(parse_expression());
            expect_punct(";");
        } else if (t.is_keyword("emit")) {
            advance();
            s.kind = StmtKind::Emit;
            Expr call = parse_expression();
            if (call.kind != ExprKind::Call) fail({"event call"});
            s.name = std::string(call.callee().span.text());
            s.exprs.assign(call.operands.begin() + 1, call.operands.end());
            expect_punct(";");
        } else if (t.is_keyword("break") || t.is_keyword("continue") || t.is_keyword("throw")) {
            s.kind = t.is_keyword("break") ? StmtKind::Break : t.is_keyword("continue") ? StmtKind::Continue
                                                                                        : StmtKind::Throw;
            advance();
            expect_punct(";");
        } else if (t.is_keyword("assembly")) {
            advance();
            s.kind = StmtKind::Assembly;
            if (cur().kind == TokenKind::String) advance();
            if (cur().is_punct("(")) skip_balanced();
            if (!cur().is_punct("{")) fail({"{"});
            const std::size_t body_start = pos_;
            skip_balanced();
            s.name = std::string(span_from(body_start).text());
        } else if (t.is_keyword("unchecked")) {
            advance();
            Stmt inner = parse_block();
            s.kind = StmtKind::Unchecked;
            s.body = std::move(inner.body);
        } else if (t.is_keyword("try")) {
            advance();
            s.kind = StmtKind::Try;
            s.exprs.push_back(parse_expression());
            if (accept_keyword("returns")) parse_param_list(false);
            s.body.push_back(parse_block());
            while (accept_keyword("catch")) {
                if (cur().kind == TokenKind::Identifier) advance();
                if (cur().is_punct("(")) parse_param_list(false);
                s.body.push_back(parse_block());
            }
        } else if (t.kind == TokenKind::Identifier && t.text == "_" && peek().is_punct(";")) {
            advance();
            advance();
            s.kind = StmtKind::Placeholder;
        } else if (t.kind == TokenKind::Identifier && t.text == "revert" &&
                   (peek().is_punct("(") || peek().kind == TokenKind::Identifier)) {
            advance();
            s.kind = StmtKind::Revert;
            if (cur().kind == TokenKind::Identifier) {
                s.name = std::string(advance().text);
                while (accept_punct(".")) s.name += "." + expect_identifier();
            }
            s.exprs = parse_call_arguments();
            expect_punct(";");
        } else {
            s = parse_simple_statement();
            return s;
        }
        s.span = span_from(start);
        return s;
    }

    /// Variable declaration or expression statement, including the trailing `;`.
    Stmt parse_simple_statement() {
        const std::size_t start = pos_;
        if (auto decl = try_parse_var_decl()) return std::move(*decl);
        pos_ = start;

        Stmt s;
        Expr e = parse_expression();
        expect_punct(";");
        const bool builtin_check = e.kind == ExprKind::Call && e.callee().kind == ExprKind::Identifier &&
                                   (e.callee().name == "require" || e.callee().name == "assert");
        if (builtin_check) {
            s.kind = e.callee().name == "require" ? StmtKind::Require : StmtKind::Assert;
            s.exprs.assign(e.operands.begin() + 1, e.operands.end());
        } else {
            s.kind = StmtKind::Expression;
            s.exprs.push_back(std::move(e));
        }
        s.span = span_from(start);
        return s;
    }

    std::optional<Stmt> try_parse_var_decl() {
        const std::size_t start = pos_;
        const Token& t = cur();
        const bool candidate = t.kind == TokenKind::Identifier || t.is_keyword("mapping") ||
                               t.is_keyword("var") || t.is_punct("(");
        if (!candidate) return std::nullopt;
        try {
            Stmt s;
            s.kind = StmtKind::VarDecl;
            if (t.is_punct("(")) {
                advance();
                bool typed = false;
                while (!cur().is_punct(")")) {
                    VarDeclItem item;
                    if (!cur().is_punct(",")) {
                        const std::size_t istart = pos_;
                        item.type = parse_type();
                        if (is_location(cur())) item.location = std::string(advance().text);
                        if (cur().kind != TokenKind::Identifier) return std::nullopt;
                        item.name = std::string(advance().text);
                        item.span = span_from(istart);
                        typed = true;
                    }
                    s.decls.push_back(std::move(item));
                    if (!accept_punct(",")) break;
                    if (cur().is_punct(")")) s.decls.emplace_back();
                }
                if (!typed || !accept_punct(")") || !cur().is_punct("=")) {
                    pos_ = start;
                    return std::nullopt;
                }
            } else if (t.is_keyword("var") && peek().is_punct("(")) {
                advance();
                advance();
                while (!cur().is_punct(")")) {
                    VarDeclItem item;
                    item.type.name = "var";
                    if (cur().kind == TokenKind::Identifier) {
                        item.span = cur().span;
                        item.name = std::string(advance().text);
                    }
                    s.decls.push_back(std::move(item));
                    if (!accept_punct(",")) break;
                }
                expect_punct(")");
            } else {
                VarDeclItem item;
                const std::size_t istart = pos_;
                item.type = parse_type();
                if (is_location(cur())) item.location = std::string(advance().text);
                if (cur().kind != TokenKind::Identifier) {
                    pos_ = start;
                    return std::nullopt;
                }
                item.name = std::string(advance().text);
                item.span = span_from(istart);
                if (!cur().is_punct("=") && !cur().is_punct(";")) {
                    pos_ = start;
                    return std::nullopt;
                }
                s.decls.push_back(std::move(item));
            }
            if (accept_punct("=")) s.exprs.push_back(parse_expression());
            expect_punct(";");
            s.span = span_from(start);
            return s;
        } catch (const ParseError&) {
            // Not a declaration after all if the type prefix itself failed; the caller
            // reparses as an expression. Genuine errors after the `=` resurface there.
            pos_ = start;
            return std::nullopt;
        }
    }

    // ---- expressions ---------------------------------------------------------

    std::vector<Expr> parse_call_arguments() {
        std::vector<Expr> args;
        expect_punct("(");
        if (accept_punct(")")) return args;
        if (cur().is_punct("{")) {
            // Named arguments: values kept in declaration order of the call site.
            advance();
            while (!cur().is_punct("}")) {
                expect_identifier();
                expect_punct(":");
                args.push_back(parse_expression());
                if (!accept_punct(",")) break;
            }
            expect_punct("}");
            expect_punct(")");
            return args;
        }
        do {
            args.push_back(parse_expression());
        } while (accept_punct(","));
        expect_punct(")");
        return args;
    }

    Expr parse_expression() {
        DepthGuard guard(*this);
        const std::size_t start = pos_;
        Expr lhs = parse_conditional();
        if (cur().kind == TokenKind::Punct && is_assignment_op(cur().text)) {
            const Token& op = advance();
            Expr out;
            out.kind = ExprKind::Assignment;
            out.name = std::string(op.text);
            out.raw_operator = out.name;
            const Token& next = cur();
            if (op.text == "=" && !next.space_before && (next.is_punct("+") || next.is_punct("-")))
                out.raw_operator += std::string(next.text);
            Expr rhs = parse_expression();
            out.operands.push_back(std::move(lhs));
            out.operands.push_back(std::move(rhs));
            out.span = span_from(start);
            return out;
        }
        return lhs;
    }

    Expr parse_conditional() {
        const std::size_t start = pos_;
        Expr cond = parse_binary(1);
        if (!accept_punct("?")) return cond;
        Expr a = parse_expression();
        expect_punct(":");
        Expr b = parse_expression();
        Expr out;
        out.kind = ExprKind::Conditional;
        out.operands.push_back(std::move(cond));
        out.operands.push_back(std::move(a));
        out.operands.push_back(std::move(b));
        out.span = span_from(start);
        return out;
    }

    Expr parse_binary(int min_prec) {
        DepthGuard guard(*this);
        const std::size_t start = pos_;
        Expr lhs = parse_unary();
        const auto& table = binary_precedence();
        while (cur().kind == TokenKind::Punct) {
            auto it = table.find(cur().text);
            if (it == table.end() || it->second < min_prec) break;
            const int prec = it->second;
            std::string op(advance().text);
            // `**` is right-associative.
            Expr rhs = parse_binary(op == "**" ? prec : prec + 1);
            Expr out;
            out.kind = ExprKind::Binary;
            out.name = std::move(op);
            out.operands.push_back(std::move(lhs));
            out.operands.push_back(std::move(rhs));
            out.span = span_from(start);
            lhs = std::move(out);
        }
        return lhs;
    }

    Expr parse_unary() {
        DepthGuard guard(*this);
        const std::size_t start = pos_;
        const Token& t = cur();
        if (t.is_punct("!") || t.is_punct("~") || t.is_punct("-") || t.is_punct("+") || t.is_punct("++") ||
            t.is_punct("--") || t.is_keyword("delete")) {
            Expr out;
            out.kind = ExprKind::Unary;
            out.name = std::string(advance().text);
            out.prefix = true;
            out.operands.push_back(parse_unary());
            out.span = span_from(start);
            return out;
        }
        return parse_postfix();
    }

    static bool foldable_option_call(const Expr& e) {
        if (e.kind != ExprKind::Call || e.arg_count() != 1) return false;
        const Expr& callee = e.callee();
        if (callee.kind != ExprKind::Member || (callee.name != "value" && callee.name != "gas")) return false;
        const Expr& base = callee.operands.front();
        return base.kind == ExprKind::Member || foldable_option_call(base);
    }

    Expr parse_postfix() {
        const std::size_t start = pos_;
        Expr e = parse_primary();
        while (true) {
            if (accept_punct(".")) {
                Expr m;
                m.kind = ExprKind::Member;
                if (cur().kind == TokenKind::Identifier || cur().kind == TokenKind::Keyword) {
                    m.name = std::string(advance().text);
                } else {
                    fail({"member name"});
                }
                m.operands.push_back(std::move(e));
                m.span = span_from(start);
                e = std::move(m);
            } else if (cur().is_punct("[")) {
                advance();
                Expr idx;
                idx.kind = ExprKind::Index;
                idx.operands.push_back(std::move(e));
                if (!cur().is_punct("]")) {
                    if (!cur().is_punct(":")) idx.operands.push_back(parse_expression());
                    if (accept_punct(":") && !cur().is_punct("]")) idx.operands.push_back(parse_expression());
                }
                expect_punct("]");
                idx.span = span_from(start);
                e = std::move(idx);
            } else if (cur().is_punct("(")) {
                std::vector<Expr> args = parse_call_arguments();
                Expr call;
                call.kind = ExprKind::Call;
                // Fold `x.call.value(v).gas(g)(args)` into a single call with options.
                while (foldable_option_call(e)) {
                    call.option_names.insert(call.option_names.begin(), e.callee().name);
                    call.option_values.insert(call.option_values.begin(), e.operands[1]);
                    Expr base = e.callee().operands.front();
                    e = std::move(base);
                }
                const bool is_cast = e.kind == ExprKind::ElementaryType && args.size() == 1;
                if (is_cast) {
                    call.kind = ExprKind::TypeCast;
                    call.name = e.name;
                    call.operands.push_back(std::move(args.front()));
                } else {
                    call.operands.push_back(std::move(e));
                    for (auto& a : args) call.operands.push_back(std::move(a));
                }
                call.span = span_from(start);
                e = std::move(call);
            } else if (cur().is_punct("{") && peek().kind == TokenKind::Identifier && peek(2).is_punct(":") &&
                       (e.kind == ExprKind::Member || e.kind == ExprKind::Identifier || e.kind == ExprKind::New)) {
                // Call options `{value: v, gas: g}` apply to the call that follows.
                advance();
                std::vector<std::string> names;
                std::vector<Expr> values;
                while (!cur().is_punct("}")) {
                    names.push_back(expect_identifier());
                    expect_punct(":");
                    values.push_back(parse_expression());
                    if (!accept_punct(",")) break;
                }
                expect_punct("}");
                std::vector<Expr> args = parse_call_arguments();
                Expr call;
                call.kind = ExprKind::Call;
                call.option_names = std::move(names);
                call.option_values = std::move(values);
                call.operands.push_back(std::move(e));
                for (auto& a : args) call.operands.push_back(std::move(a));
                call.span = span_from(start);
                e = std::move(call);
            } else if (cur().is_punct("++") || cur().is_punct("--")) {
                Expr u;
                u.kind = ExprKind::Unary;
                u.name = std::string(advance().text);
                u.prefix = false;
                u.operands.push_back(std::move(e));
                u.span = span_from(start);
                e = std::move(u);
            } else {
                break;
            }
        }
        return e;
    }

    Expr parse_primary() {
        DepthGuard guard(*this);
        const std::size_t start = pos_;
        const Token& t = cur();
        Expr e;
        if (t.is_punct("(") || t.is_punct("[")) {
            const bool inline_array = t.is_punct("[");
            const std::string_view close = inline_array ? "]" : ")";
            advance();
            std::vector<Expr> elems;
            bool comma = false;
            while (!cur().is_punct(close)) {
                if (cur().is_punct(",")) {
                    Expr hole;
                    hole.kind = ExprKind::Empty;
                    hole.span = cur().span;
                    elems.push_back(std::move(hole));
                } else {
                    elems.push_back(parse_expression());
                }
                if (!accept_punct(",")) break;
                comma = true;
                if (cur().is_punct(close)) {
                    Expr hole;
                    hole.kind = ExprKind::Empty;
                    hole.span = cur().span;
                    elems.push_back(std::move(hole));
                }
            }
            expect_punct(close);
            if (!inline_array && !comma && elems.size() == 1) return std::move(elems.front());
            e.kind = ExprKind::Tuple;
            e.name = inline_array ? "[]" : "()";
            e.operands = std::move(elems);
        } else if (t.kind == TokenKind::Number || t.kind == TokenKind::HexNumber) {
            e.kind = ExprKind::Literal;
            e.name = std::string(advance().text);
            if (t.kind == TokenKind::HexNumber) {
                e.literal = LiteralKind::Hex;
                std::string digits;
                for (char c : std::string_view(e.name).substr(2))
                    if (c != '_') digits.push_back(c);
                if (digits.size() == 40) e.literal = LiteralKind::Address;
            }
            if (cur().kind == TokenKind::Identifier && is_unit(cur().text)) e.unit = std::string(advance().text);
        } else if (t.kind == TokenKind::String || t.kind == TokenKind::HexString) {
            e.kind = ExprKind::Literal;
            e.literal = t.kind == TokenKind::String ? LiteralKind::String : LiteralKind::HexString;
            std::string text;
            while (cur().kind == TokenKind::String || cur().kind == TokenKind::HexString) text += advance().text;
            e.name = std::move(text);
        } else if (t.is_keyword("true") || t.is_keyword("false")) {
            e.kind = ExprKind::Literal;
            e.literal = LiteralKind::Bool;
            e.name = std::string(advance().text);
        } else if (t.is_keyword("new")) {
            advance();
            e.kind = ExprKind::New;
            e.name = parse_type().text();
        } else if (t.is_keyword("payable") && peek().is_punct("(")) {
            advance();
            e.kind = ExprKind::ElementaryType;
            e.name = "address";
        } else if (t.kind == TokenKind::Identifier) {
            std::string name(advance().text);
            if (is_elementary_type_name(name)) {
                e.kind = ExprKind::ElementaryType;
                e.name = normalize_elementary(name);
                if (e.name == "address" && cur().is_keyword("payable")) advance();
            } else {
                e.kind = ExprKind::Identifier;
                e.name = std::move(name);
            }
        } else if (t.kind == TokenKind::Keyword && (t.text == "type")) {
            e.kind = ExprKind::Identifier;
            e.name = std::string(advance().text);
        } else {
            fail({"expression"});
        }
        e.span = span_from(start);
        return e;
    }

    std::vector<const Token*> toks_;
    std::vector<std::optional<std::string>> docs_;
    std::size_t pos_ = 0;
    int depth_ = 0;
    SourceUnit unit_;
};

}  // namespace

SourceUnit parse(const TokenStream& tokens, std::shared_ptr<const SourceFile> file) {
    return Parser(tokens, std::move(file)).run();
}

SourceUnit parse_source(std::shared_ptr<const SourceFile> file) {
    TokenStream tokens = tokenize(*file);
    return parse(tokens, std::move(file));
}

}  // namespace tokenaudit
