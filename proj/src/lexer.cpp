#include "tokenaudit/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "tokenaudit/utf8.hpp"

namespace tokenaudit {

namespace {

constexpr std::array kKeywords = {
    "abstract", "anonymous", "assembly", "break",     "calldata", "catch",    "constant",
    "constructor", "continue", "contract", "delete",  "do",       "else",     "emit",
    "enum",     "event",     "external",  "fallback", "false",    "for",      "function",
    "if",       "immutable", "import",    "indexed",  "interface", "internal", "is",
    "library",  "mapping",   "memory",    "modifier", "new",      "override", "payable",
    "pragma",   "private",   "public",    "pure",     "receive",  "return",   "returns",
    "storage",  "struct",    "throw",     "true",     "try",      "unchecked", "using",
    "var",      "view",      "virtual",   "while",
};

// Longest first so that a linear scan finds the maximal munch.
constexpr std::array kPunct = {
    ">>>=", ">>=", "<<=", ">>>", "**", "=>", "==", "!=", "<=", ">=", "&&", "||", "++", "--",
    "+=",   "-=",  "*=",  "/=",  "%=", "|=", "&=", "^=", "<<", ">>", "->", ":=", "(",  ")",
    "[",    "]",   "{",   "}",   ";",  ",",  ".",  "?",  ":",  "=",  "+",  "-",  "*",  "/",
    "%",    "!",   "~",   "&",   "|",  "^",  "<",  ">",  "@",
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }
bool ident_part(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_hex(char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; }

class Lexer {
public:
    explicit Lexer(const SourceFile& file) : file_(file), src_(file.bytes()) {}

    TokenStream run() {
        bool space = false;
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
                ++pos_;
                space = true;
                continue;
            }
            const std::size_t start = pos_;
            TokenKind kind = lex_one();
            push(kind, start, space);
            space = out_.tokens.back().is_trivia();
        }
        push(TokenKind::End, pos_, space);
        return std::move(out_);
    }

private:
    void push(TokenKind kind, std::size_t start, bool space) {
        Token tok;
        tok.kind = kind;
        tok.span = make_span(file_, static_cast<std::uint32_t>(start), static_cast<std::uint32_t>(pos_));
        tok.text = src_.substr(start, pos_ - start);
        tok.space_before = space;
        if (tok.is_trivia()) tok.non_printable = scan_non_printable(tok.text);
        out_.tokens.push_back(tok);
    }

    static bool scan_non_printable(std::string_view text) {
        for (std::size_t i = 0; i < text.size();) {
            auto d = utf8::decode(text, i);
            if (!d.valid || utf8::is_non_printable(d.code_point)) return true;
            i += d.length;
        }
        return false;
    }

    void diag(DiagnosticCode code, std::string msg, std::size_t start) {
        out_.diagnostics.push_back(
            {code, std::move(msg),
             make_span(file_, static_cast<std::uint32_t>(start), static_cast<std::uint32_t>(pos_)),
             {}});
    }

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    TokenKind lex_one() {
        const std::size_t start = pos_;
        const char c = peek();

        if (c == '/' && peek(1) == '/') {
            const bool doc = peek(2) == '/' && peek(3) != '/';
            while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            return doc ? TokenKind::DocComment : TokenKind::Comment;
        }
        if (c == '/' && peek(1) == '*') {
            const bool doc = peek(2) == '*' && peek(3) != '/';
            pos_ += 2;
            while (pos_ < src_.size() && !(src_[pos_] == '*' && peek(1) == '/')) ++pos_;
            if (pos_ >= src_.size()) {
                diag(DiagnosticCode::UnterminatedComment, "unterminated block comment", start);
            } else {
                pos_ += 2;
            }
            return doc ? TokenKind::DocComment : TokenKind::Comment;
        }
        if ((c == 'h' && src_.substr(pos_, 4) == "hex\"") || (c == 'h' && src_.substr(pos_, 4) == "hex'")) {
            pos_ += 3;
            return lex_string(start, TokenKind::HexString);
        }
        if (c == 'u' && (src_.substr(pos_, 8) == "unicode\"" || src_.substr(pos_, 8) == "unicode'")) {
            pos_ += 7;
            return lex_string(start, TokenKind::String);
        }
        if (ident_start(c)) {
            while (pos_ < src_.size() && ident_part(src_[pos_])) ++pos_;
            return is_keyword(src_.substr(start, pos_ - start)) ? TokenKind::Keyword : TokenKind::Identifier;
        }
        if (is_digit(c) || (c == '.' && is_digit(peek(1)))) return lex_number();
        if (c == '"' || c == '\'') return lex_string(start, TokenKind::String);

        for (std::string_view p : kPunct) {
            if (src_.substr(pos_, p.size()) == p) {
                pos_ += p.size();
                return TokenKind::Punct;
            }
        }

        // Anything else: an invalid byte or a non-ASCII code point outside comments/strings.
        auto d = utf8::decode(src_, pos_);
        pos_ += d.length;
        diag(DiagnosticCode::InvalidCharacter, d.valid ? "unexpected character" : "invalid UTF-8 byte", start);
        return TokenKind::Error;
    }

    TokenKind lex_number() {
        if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
            pos_ += 2;
            while (pos_ < src_.size() && (is_hex(src_[pos_]) || src_[pos_] == '_')) ++pos_;
            return TokenKind::HexNumber;
        }
        auto digits = [&] {
            while (pos_ < src_.size() && (is_digit(src_[pos_]) || src_[pos_] == '_')) ++pos_;
        };
        digits();
        // Fractions, and dotted version triples such as 0.5.11 kept as one token.
        while (peek() == '.' && is_digit(peek(1))) {
            ++pos_;
            digits();
        }
        if ((peek() == 'e' || peek() == 'E') &&
            (is_digit(peek(1)) || (peek(1) == '-' && is_digit(peek(2))))) {
            pos_ += peek(1) == '-' ? 2 : 1;
            digits();
        }
        return TokenKind::Number;
    }

    TokenKind lex_string(std::size_t start, TokenKind kind) {
        const char quote = src_[pos_++];
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '\\' && pos_ + 1 < src_.size()) {
                pos_ += 2;
                continue;
            }
            if (c == '\n') break;
            ++pos_;
            if (c == quote) return kind;
        }
        diag(DiagnosticCode::UnterminatedString, "unterminated string literal", start);
        return TokenKind::Error;
    }

    const SourceFile& file_;
    std::string_view src_;
    std::size_t pos_ = 0;
    TokenStream out_;
};

}  // namespace

bool is_keyword(std::string_view word) {
    return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

const char* to_string(TokenKind kind) {
    switch (kind) {
        case TokenKind::Identifier: return "ident";
        case TokenKind::Keyword: return "keyword";
        case TokenKind::Number: return "number";
        case TokenKind::HexNumber: return "hex-number";
        case TokenKind::String: return "string";
        case TokenKind::HexString: return "hex-string";
        case TokenKind::Punct: return "punct";
        case TokenKind::Comment: return "comment";
        case TokenKind::DocComment: return "doc-comment";
        case TokenKind::Error: return "error";
        case TokenKind::End: return "end";
    }
    return "?";
}

const char* to_string(DiagnosticCode code) {
    switch (code) {
        case DiagnosticCode::UnterminatedString: return "UnterminatedString";
        case DiagnosticCode::UnterminatedComment: return "UnterminatedComment";
        case DiagnosticCode::InvalidCharacter: return "InvalidCharacter";
        case DiagnosticCode::SyntaxError: return "SyntaxError";
        case DiagnosticCode::UnsupportedConstruct: return "UnsupportedConstruct";
        case DiagnosticCode::ToolError: return "ToolError";
    }
    return "?";
}

TokenStream tokenize(const SourceFile& file) { return Lexer(file).run(); }

}  // namespace tokenaudit
