#include "doctest.h"

#include "tokenaudit/lexer.hpp"
#include "tokenaudit/parser.hpp"
#include "tokenaudit/raw_scan.hpp"
#include "tokenaudit/utf8.hpp"

using namespace tokenaudit;

namespace {

std::vector<const Token*> significant(const TokenStream& ts) {
    std::vector<const Token*> out;
    for (const Token& t : ts.tokens)
        if (!t.is_trivia() && t.kind != TokenKind::End) out.push_back(&t);
    return out;
}

SourceUnit parse_text(const std::string& text) { return parse_source(SourceFile::from_string("t.sol", text)); }

}  // namespace

TEST_CASE("lexer splits keywords, numbers and punctuation") {
    auto f = SourceFile::from_string("t.sol", "uint256 x = 0x1F + 1e3; // tail");
    TokenStream ts = tokenize(*f);
    auto toks = significant(ts);
    REQUIRE(toks.size() == 7);
    // Elementary type names stay identifiers; the parser decides.
    CHECK(toks[0]->kind == TokenKind::Identifier);
    CHECK(is_keyword("function"));
    CHECK_FALSE(is_keyword("balance"));
    CHECK(toks[1]->kind == TokenKind::Identifier);
    CHECK(toks[3]->kind == TokenKind::HexNumber);
    CHECK(toks[5]->kind == TokenKind::Number);
    CHECK(toks[5]->text == "1e3");
    CHECK(ts.tokens.back().kind == TokenKind::End);
    CHECK(ts.diagnostics.empty());
}

TEST_CASE("lexer reports unterminated strings and comments") {
    auto a = SourceFile::from_string("a.sol", "string s = \"open");
    CHECK(tokenize(*a).diagnostics.at(0).code == DiagnosticCode::UnterminatedString);
    auto b = SourceFile::from_string("b.sol", "/* never closed");
    CHECK(tokenize(*b).diagnostics.at(0).code == DiagnosticCode::UnterminatedComment);
}

TEST_CASE("doc comments are their own token kind") {
    auto f = SourceFile::from_string("t.sol", "/// hi\n/** block */ // plain\n");
    TokenStream ts = tokenize(*f);
    int doc = 0, plain = 0;
    for (const Token& t : ts.tokens) {
        doc += t.kind == TokenKind::DocComment;
        plain += t.kind == TokenKind::Comment;
    }
    CHECK(doc == 2);
    CHECK(plain == 1);
}

TEST_CASE("spans carry 1-based line and column") {
    auto f = SourceFile::from_string("t.sol", "a\n  bb");
    auto toks = significant(tokenize(*f));
    REQUIRE(toks.size() == 2);
    CHECK(toks[1]->span.line == 2);
    CHECK(toks[1]->span.column == 3);
    CHECK(toks[1]->span.text() == "bb");
}

TEST_CASE("utf8 decoding") {
    const std::string rlo = "\xE2\x80\xAE";
    auto d = utf8::decode(rlo, 0);
    CHECK(d.valid);
    CHECK(d.code_point == 0x202E);
    CHECK(d.length == 3);
    CHECK(utf8::is_non_printable(0x202E));
    CHECK(utf8::is_non_printable(0x200B));
    CHECK_FALSE(utf8::is_non_printable(U'a'));
    CHECK_FALSE(utf8::is_non_printable(U'\n'));

    auto bad = utf8::decode("\xFF", 0);
    CHECK_FALSE(bad.valid);
    CHECK(bad.length == 1);
    // Truncated sequence and overlong encoding.
    CHECK_FALSE(utf8::decode("\xE2\x80", 0).valid);
    CHECK_FALSE(utf8::decode("\xC0\xAF", 0).valid);
}

TEST_CASE("raw scan finds right-to-left overrides and non-ascii bytes") {
    auto f = SourceFile::from_string("t.sol", "// a\xE2\x80\xAE" "b\nuint x; // caf\xC3\xA9\n\xFF");
    RawScanReport r = scan_raw(*f);
    REQUIRE(r.rtl_override_positions.size() == 1);
    CHECK(r.rtl_override_positions[0].start == 4);
    CHECK(r.rtl_override_positions[0].line == 1);
    CHECK(r.non_ascii_positions.size() == 3);
}

TEST_CASE("parser builds contracts, functions and modifiers") {
    SourceUnit u = parse_text(R"(
pragma solidity ^0.5.11;
contract C is B {
    uint256 public total;
    mapping(address => uint256) balances;
    event E(address indexed a, uint256 v);
    modifier only() { require(msg.sender == owner); _; }
    function f(uint256 a) external only returns (bool) {
        for (uint i = 0; i < a; i++) { total += i; }
        emit E(msg.sender, a);
        return true;
    }
    function () external payable {}
}
)");
    CHECK_FALSE(u.has_errors());
    REQUIRE(u.contracts.size() == 1);
    const ContractDef& c = u.contracts[0];
    CHECK(c.name == "C");
    REQUIRE(c.bases.size() == 1);
    CHECK(c.state_vars.size() == 2);
    CHECK(c.find_modifier("only") != nullptr);
    CHECK(c.find_event("E") != nullptr);
    const FunctionDef* f = c.find_function("f");
    REQUIRE(f != nullptr);
    CHECK(f->visibility == Visibility::External);
    CHECK(f->modifiers.size() == 1);
    CHECK(f->signature() == "f(uint256)");
    REQUIRE(f->body.has_value());
    CHECK(f->body->body.at(0).kind == StmtKind::For);
    CHECK(f->body->body.at(1).kind == StmtKind::Emit);
    bool fallback = false;
    for (const auto& fn : c.functions) fallback |= fn.kind == FunctionKind::Fallback;
    CHECK(fallback);
    REQUIRE(u.min_compiler_version().has_value());
    CHECK(*u.min_compiler_version() == Version{0, 5, 11});
}

TEST_CASE("parser recovers after a syntax error") {
    SourceUnit u = parse_text(R"(
contract A {
    function broken( { x = ; }
    function fine() public {}
}
contract B {}
)");
    CHECK(u.has_errors());
    bool syntax = false;
    for (const auto& d : u.diagnostics) syntax |= d.code == DiagnosticCode::SyntaxError;
    CHECK(syntax);
    REQUIRE(u.contracts.size() == 2);
    CHECK(u.contracts[0].find_function("fine") != nullptr);
}

TEST_CASE("version constraints") {
    auto caret = VersionConstraint::parse("^0.4.24");
    REQUIRE(caret);
    CHECK(caret->kind() == VersionConstraint::Kind::Caret);
    CHECK(caret->lowest() == Version{0, 4, 24});
    auto range = VersionConstraint::parse(">=0.6.0 <0.8.0");
    REQUIRE(range);
    CHECK(range->kind() == VersionConstraint::Kind::Range);
    CHECK(range->lowest() == Version{0, 6, 0});
    auto exact = VersionConstraint::parse("0.8.4");
    REQUIRE(exact);
    CHECK(exact->kind() == VersionConstraint::Kind::Exact);
}
