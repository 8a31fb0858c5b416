#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tokenaudit/diagnostic.hpp"
#include "tokenaudit/source.hpp"

namespace tokenaudit {

enum class TokenKind {
    Identifier,
    Keyword,
    Number,     // decimal, possibly with fraction/exponent or a dotted version triple
    HexNumber,
    String,
    HexString,
    Punct,
    Comment,
    DocComment,  // `///` and `/** */`
    Error,
    End,
};

const char* to_string(TokenKind kind);

struct Token {
    TokenKind kind = TokenKind::End;
    std::string_view text;
    SourceSpan span;
    bool space_before = false;  // whitespace or trivia between this and the previous token
    bool non_printable = false;  // trivia containing control, bidi or private-use code points

    bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
    bool is_punct(std::string_view t) const { return is(TokenKind::Punct, t); }
    bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
    bool is_trivia() const { return kind == TokenKind::Comment || kind == TokenKind::DocComment; }
};

struct TokenStream {
    std::vector<Token> tokens;  // includes trivia; always terminated by an End token
    std::vector<Diagnostic> diagnostics;
};

TokenStream tokenize(const SourceFile& file);

bool is_keyword(std::string_view word);

}  // namespace tokenaudit
