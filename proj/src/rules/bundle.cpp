#include <algorithm>

#include "tokenaudit/parser.hpp"
#include "tokenaudit/rules.hpp"

namespace tokenaudit {

namespace {

bool has_erc20_member(const ContractScope& scope) {
    for (const CanonicalMember& m : canonical_interface()) {
        if (m.is_event) continue;
        if (!scope.functions_named(m.name).empty()) return true;
        if (const StateVarDecl* v = scope.state_var(m.name); v && v->visibility == Visibility::Public) return true;
    }
    return false;
}

}  // namespace

bool AnalysisBundle::has_errors() const {
    for (const auto& f : files)
        if (f->unit.has_errors()) return true;
    return false;
}

std::vector<Diagnostic> AnalysisBundle::diagnostics() const {
    std::vector<Diagnostic> out;
    for (const auto& f : files) out.insert(out.end(), f->unit.diagnostics.begin(), f->unit.diagnostics.end());
    return out;
}

const ContractBundle* AnalysisBundle::contract(std::string_view name) const {
    for (const auto& c : contracts)
        if (c.contract->name == name) return &c;
    return nullptr;
}

AnalysisBundle build_bundle(std::vector<std::shared_ptr<const SourceFile>> files) {
    std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) { return a->path() < b->path(); });
    AnalysisBundle bundle;
    std::vector<const SourceUnit*> units;
    for (auto& file : files) {
        auto fb = std::make_unique<FileBundle>();
        fb->file = file;
        fb->tokens = tokenize(*file);
        fb->unit = parse(fb->tokens, file);
        fb->raw = scan_raw(*file);
        units.push_back(&fb->unit);
        bundle.files.push_back(std::move(fb));
    }
    bundle.index = std::make_unique<ProgramIndex>(units);
    for (const auto& fb : bundle.files) {
        for (const ContractDef& c : fb->unit.contracts) {
            ContractBundle cb;
            cb.file = fb.get();
            cb.contract = &c;
            if (c.kind != ContractKind::Interface) cb.analysis = analyze_contract(c, *bundle.index);
            if (cb.analysis && c.kind == ContractKind::Contract && !bundle.index->is_base_of_another(c) &&
                has_erc20_member(cb.analysis->scope)) {
                cb.is_token = true;
                cb.conformance = check_interface(cb.analysis->scope);
            }
            bundle.contracts.push_back(std::move(cb));
        }
    }
    return bundle;
}

}  // namespace tokenaudit
