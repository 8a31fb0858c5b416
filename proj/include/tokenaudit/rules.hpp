#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tokenaudit/analysis.hpp"
#include "tokenaudit/erc20conf.hpp"
#include "tokenaudit/lexer.hpp"
#include "tokenaudit/raw_scan.hpp"

namespace tokenaudit {

enum class Severity { Informational, Low, Medium, High };
enum class Strategy { Lexical, Syntactic, Dataflow, Conformance, InformationalOnly };

const char* to_string(Severity s);
const char* to_string(Strategy s);
std::optional<Severity> parse_severity(std::string_view text);

/// Weakness-registry column: an SWC number for rows 1-37, otherwise a marker.
enum class SwcMarker { Swc, ToolSpecific, BestPractice };

struct CheckDescriptor {
    int id = 0;
    SwcMarker marker = SwcMarker::Swc;
    std::optional<int> swc;  // 100..136 when marker == Swc
    std::string title;
    Severity severity = Severity::Medium;
    Strategy strategy = Strategy::Syntactic;
    bool enabled_default = true;

    /// "SWC-107", "tool-specific" or "best-practice".
    std::string swc_label() const;
};

/// All 82 checks, ordered by id.
const std::vector<CheckDescriptor>& registry();
const CheckDescriptor* find_check(int id);
std::set<int> default_selection();

struct Finding {
    int check = 0;
    Severity severity = Severity::Medium;
    std::string file;
    std::uint32_t start = 0;
    std::uint32_t end = 0;
    std::uint32_t line = 1;
    std::uint32_t column = 1;
    std::string message;
    std::string contract;
    std::string function;
    std::vector<std::pair<std::string, std::string>> evidence;

    bool operator==(const Finding&) const = default;
};

/// (file, start offset, check id), then the remaining fields for a total order.
bool finding_less(const Finding& a, const Finding& b);

struct RuleConfig {
    Version pragma_min{0, 5, 11};
    int literal_digits = 7;        // decimal literals with at least this many digits
    int fallback_statements = 3;   // fallback bodies with more statements than this
    int max_nesting = 4;           // functions nested deeper than this
    std::set<std::string> surface_allowlist = {"totalSupply", "balanceOf", "transfer", "transferFrom", "approve",
                                               "allowance",   "name",      "symbol",   "decimals"};
    std::map<int, Severity> severity_overrides;

    Severity severity_of(const CheckDescriptor& c) const;
};

// ---------------------------------------------------------------------------
// Bundle

struct FileBundle {
    std::shared_ptr<const SourceFile> file;
    TokenStream tokens;
    SourceUnit unit;
    RawScanReport raw;
};

struct ContractBundle {
    const FileBundle* file = nullptr;
    const ContractDef* contract = nullptr;
    std::unique_ptr<ContractAnalysis> analysis;  // null for interfaces
    std::optional<ConformanceReport> conformance;  // token contracts only
    bool is_token = false;
};

/// Everything the checks need for a set of files analyzed together.
struct AnalysisBundle {
    std::vector<std::unique_ptr<FileBundle>> files;
    std::unique_ptr<ProgramIndex> index;
    std::vector<ContractBundle> contracts;

    bool has_errors() const;
    std::vector<Diagnostic> diagnostics() const;
    const ContractBundle* contract(std::string_view name) const;
};

/// Parse and analyze files. Files are ordered by path so argument order never matters.
AnalysisBundle build_bundle(std::vector<std::shared_ptr<const SourceFile>> files);

struct CheckNote {
    int check = 0;
    std::string text;
};

struct CheckRun {
    std::vector<Finding> findings;  // sorted, deduplicated
    std::vector<CheckNote> notes;   // informational-only checks
    std::vector<Diagnostic> tool_errors;
    std::set<int> selection;
};

CheckRun run_checks(const AnalysisBundle& bundle, const std::set<int>& selection, const RuleConfig& config = {});

}  // namespace tokenaudit
