#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "tokenaudit/rules.hpp"

namespace tokenaudit {

struct AnalyzeOptions {
    RuleConfig rules;
    std::optional<std::set<int>> enable;  // replaces the default selection when set
    std::set<int> disable;
    Severity min_severity = Severity::Low;

    std::set<int> selection() const;
};

struct ConfigError {
    std::string message;
};

/// `key = value` lines; `#` starts a comment. Keys: pragma_min, literal_digits,
/// fallback_statements, max_nesting, min_severity, enable, disable, surface_allowlist,
/// severity.<id>. Throws ConfigError.
void apply_config_text(std::string_view text, AnalyzeOptions& options);

/// Comma-separated check ids, each in 1..82. Throws ConfigError.
std::set<int> parse_id_list(std::string_view text);

}  // namespace tokenaudit
