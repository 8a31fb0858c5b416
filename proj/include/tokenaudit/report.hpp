#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tokenaudit/rules.hpp"

namespace tokenaudit {

enum class RowStatus { Passed, Failed, Informational, NotApplicable };
const char* to_string(RowStatus s);

struct MatrixRow {
    const CheckDescriptor* check = nullptr;
    RowStatus status = RowStatus::Passed;
    int count = 0;     // findings for this check
    std::string note;  // informational rows
};

struct AuditMatrix {
    std::vector<MatrixRow> rows;  // always 82, id order
    int total = 0;
    int passed = 0;
    int failed = 0;
    int informational = 0;
    int not_applicable = 0;
    /// passed / (passed + failed); 100 when nothing was assessed.
    double success_rate_percent = 100.0;
};

/// Rows outside the selection are not-applicable. Rows whose findings are all
/// informational, and informational-only rows, never count as failed.
AuditMatrix build_matrix(const CheckRun& run);

std::string render_table(const CheckRun& run);
std::string render_json(const CheckRun& run, const std::vector<std::string>& files,
                        const std::vector<Diagnostic>& diagnostics = {});
/// Inverse of the findings part of render_json.
std::vector<Finding> findings_from_json(std::string_view json);

std::string render_registry_table();
std::string render_registry_json();

/// 0: nothing at or above `min_severity`; 1: findings present; 2: tool or parse error.
int exit_code(const std::vector<Finding>& findings, Severity min_severity, bool had_errors = false);

inline constexpr const char* kToolName = "tokenaudit";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace tokenaudit
