#pragma once

#include <memory>

#include "tokenaudit/ast.hpp"
#include "tokenaudit/lexer.hpp"

namespace tokenaudit {

/// Parse a token stream produced by `tokenize`. Never throws on malformed input:
/// syntax errors are recorded as diagnostics and parsing resumes at the next
/// member or top-level item.
SourceUnit parse(const TokenStream& tokens, std::shared_ptr<const SourceFile> file);

/// tokenize + parse.
SourceUnit parse_source(std::shared_ptr<const SourceFile> file);

}  // namespace tokenaudit
