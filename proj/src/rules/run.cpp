#include <algorithm>
#include <exception>

#include "internal.hpp"

namespace tokenaudit {

namespace rules {

const std::map<int, CheckFn>& check_table() {
    static const std::map<int, CheckFn> table = [] {
        std::map<int, CheckFn> t;
        register_source_checks(t);
        register_flow_checks(t);
        register_token_checks(t);
        return t;
    }();
    return table;
}

}  // namespace rules

namespace {

const char* informational_note(int id) {
    switch (id) {
        case 60: return "custody of tokens by user-controlled wallets is a deployment property; review manually";
        case 64: return "gas cost of approve() is not statically assessable; measure on a test network";
        case 65: return "gas cost of transfer() is not statically assessable; measure on a test network";
        default: return "not statically assessable";
    }
}

}  // namespace

CheckRun run_checks(const AnalysisBundle& bundle, const std::set<int>& selection, const RuleConfig& config) {
    CheckRun run;
    run.selection = selection;
    const auto& table = rules::check_table();
    for (int id : selection) {
        const CheckDescriptor* d = find_check(id);
        if (!d) continue;
        if (d->strategy == Strategy::InformationalOnly) {
            run.notes.push_back({id, informational_note(id)});
            continue;
        }
        auto it = table.find(id);
        if (it == table.end()) continue;
        std::vector<Finding> found;
        rules::Ctx ctx{bundle, config, id, &found};
        try {
            it->second(ctx);
        } catch (const std::exception& e) {
            run.tool_errors.push_back({DiagnosticCode::ToolError,
                                       "check " + std::to_string(id) + " failed: " + e.what(), SourceSpan{}, {}});
            continue;
        }
        run.findings.insert(run.findings.end(), found.begin(), found.end());
    }
    std::sort(run.findings.begin(), run.findings.end(), finding_less);
    // Modifier expansion and inherited members can surface one site several times.
    auto same_site = [](const Finding& a, const Finding& b) {
        return a.check == b.check && a.file == b.file && a.start == b.start && a.end == b.end;
    };
    run.findings.erase(std::unique(run.findings.begin(), run.findings.end(), same_site), run.findings.end());
    return run;
}

}  // namespace tokenaudit
