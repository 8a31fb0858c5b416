#pragma once

#include <string>
#include <vector>

#include "tokenaudit/source.hpp"

namespace tokenaudit {

enum class DiagnosticCode {
    UnterminatedString,
    UnterminatedComment,
    InvalidCharacter,
    SyntaxError,
    UnsupportedConstruct,
    ToolError,
};

const char* to_string(DiagnosticCode code);

struct Diagnostic {
    DiagnosticCode code;
    std::string message;
    SourceSpan span;
    std::vector<std::string> expected;  // only for SyntaxError

    bool is_error() const { return code != DiagnosticCode::UnsupportedConstruct; }
};

}  // namespace tokenaudit
