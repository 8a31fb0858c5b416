#include "tokenaudit/report.hpp"

#include <cstdio>
#include <map>
#include <sstream>

#include "json.hpp"

namespace tokenaudit {

using ojson = nlohmann::ordered_json;

const char* to_string(RowStatus s) {
    switch (s) {
        case RowStatus::Passed: return "passed";
        case RowStatus::Failed: return "failed";
        case RowStatus::Informational: return "informational";
        case RowStatus::NotApplicable: return "not-applicable";
    }
    return "?";
}

AuditMatrix build_matrix(const CheckRun& run) {
    std::map<int, int> counts, blocking;
    for (const Finding& f : run.findings) {
        ++counts[f.check];
        if (f.severity != Severity::Informational) ++blocking[f.check];
    }
    std::map<int, std::string> notes;
    for (const CheckNote& n : run.notes) notes[n.check] = n.text;

    AuditMatrix m;
    for (const CheckDescriptor& c : registry()) {
        MatrixRow row;
        row.check = &c;
        row.count = counts[c.id];
        if (!run.selection.count(c.id)) {
            row.status = RowStatus::NotApplicable;
        } else if (c.strategy == Strategy::InformationalOnly) {
            row.status = RowStatus::Informational;
            row.note = notes[c.id];
        } else if (blocking[c.id] > 0) {
            row.status = RowStatus::Failed;
        } else if (row.count > 0) {
            row.status = RowStatus::Informational;
            row.note = std::to_string(row.count) + " informational finding" + (row.count == 1 ? "" : "s");
        } else {
            row.status = RowStatus::Passed;
        }
        switch (row.status) {
            case RowStatus::Passed: ++m.passed; break;
            case RowStatus::Failed: ++m.failed; break;
            case RowStatus::Informational: ++m.informational; break;
            case RowStatus::NotApplicable: ++m.not_applicable; break;
        }
        m.rows.push_back(std::move(row));
    }
    m.total = static_cast<int>(m.rows.size());
    const int assessed = m.passed + m.failed;
    m.success_rate_percent = assessed == 0 ? 100.0 : 100.0 * m.passed / assessed;
    return m;
}

namespace {

std::string percent(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

std::string rpad_num(int v, std::size_t width) {
    std::string s = std::to_string(v);
    if (s.size() < width) s.insert(0, width - s.size(), ' ');
    return s;
}

std::string status_text(const MatrixRow& r) {
    if (r.status == RowStatus::Failed) return "failed(" + std::to_string(r.count) + ")";
    return to_string(r.status);
}

ojson finding_json(const Finding& f) {
    const CheckDescriptor* d = find_check(f.check);
    ojson j;
    j["check"] = f.check;
    j["swc"] = d ? d->swc_label() : "";
    j["severity"] = to_string(f.severity);
    j["file"] = f.file;
    j["line"] = f.line;
    j["column"] = f.column;
    j["start"] = f.start;
    j["end"] = f.end;
    j["contract"] = f.contract;
    j["function"] = f.function;
    j["message"] = f.message;
    ojson ev = ojson::object();
    for (const auto& [k, v] : f.evidence) ev[k] = v;
    j["evidence"] = ev;
    return j;
}

ojson matrix_json(const AuditMatrix& m) {
    ojson rows = ojson::array();
    for (const MatrixRow& r : m.rows) {
        ojson row;
        row["id"] = r.check->id;
        row["swc"] = r.check->swc_label();
        row["title"] = r.check->title;
        row["status"] = to_string(r.status);
        row["count"] = r.count;
        row["note"] = r.note;
        rows.push_back(std::move(row));
    }
    ojson summary;
    summary["total"] = m.total;
    summary["passed"] = m.passed;
    summary["failed"] = m.failed;
    summary["informational"] = m.informational;
    summary["not_applicable"] = m.not_applicable;
    summary["success_rate_percent"] = std::stod(percent(m.success_rate_percent));
    ojson out;
    out["rows"] = rows;
    out["summary"] = summary;
    return out;
}

std::string dump(const ojson& j) { return j.dump(2, ' ', false, ojson::error_handler_t::replace) + "\n"; }

}  // namespace

std::string render_table(const CheckRun& run) {
    const AuditMatrix m = build_matrix(run);
    std::ostringstream out;
    out << pad(" ID", 5) << pad("SWC", 15) << pad("SEVERITY", 15) << pad("STRATEGY", 20) << pad("STATUS", 16)
        << "TITLE\n";
    for (const MatrixRow& r : m.rows) {
        out << rpad_num(r.check->id, 3) << "  " << pad(r.check->swc_label(), 15) << pad(to_string(r.check->severity), 15)
            << pad(to_string(r.check->strategy), 20) << pad(status_text(r), 16) << r.check->title << "\n";
    }
    out << "\ntotal " << m.total << ", passed " << m.passed << ", failed " << m.failed << ", informational "
        << m.informational << ", not-applicable " << m.not_applicable << ", success rate "
        << percent(m.success_rate_percent) << "%\n";
    if (!run.findings.empty()) {
        out << "\nfindings:\n";
        for (const Finding& f : run.findings) {
            const CheckDescriptor* d = find_check(f.check);
            out << f.file << ":" << f.line << ":" << f.column << ": [" << f.check << " " << d->swc_label() << "] "
                << to_string(f.severity) << ": " << f.message << "\n";
        }
    }
    if (!run.notes.empty()) {
        out << "\nnotes:\n";
        for (const CheckNote& n : run.notes) out << "  [" << n.check << "] " << n.text << "\n";
    }
    for (const Diagnostic& d : run.tool_errors) out << "tool error: " << d.message << "\n";
    return out.str();
}

std::string render_json(const CheckRun& run, const std::vector<std::string>& files,
                        const std::vector<Diagnostic>& diagnostics) {
    ojson j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["files"] = files;
    ojson findings = ojson::array();
    for (const Finding& f : run.findings) findings.push_back(finding_json(f));
    j["findings"] = findings;
    j["matrix"] = matrix_json(build_matrix(run));
    ojson notes = ojson::array();
    for (const CheckNote& n : run.notes) notes.push_back(ojson{{"check", n.check}, {"note", n.text}});
    j["notes"] = notes;
    ojson diags = ojson::array();
    auto add_diag = [&](const Diagnostic& d) {
        ojson x;
        x["code"] = to_string(d.code);
        x["file"] = d.span.file ? d.span.file->path() : "";
        x["line"] = d.span.line;
        x["column"] = d.span.column;
        x["message"] = d.message;
        diags.push_back(std::move(x));
    };
    for (const Diagnostic& d : diagnostics) add_diag(d);
    for (const Diagnostic& d : run.tool_errors) add_diag(d);
    j["diagnostics"] = diags;
    return dump(j);
}

std::vector<Finding> findings_from_json(std::string_view text) {
    const ojson j = ojson::parse(text);
    std::vector<Finding> out;
    for (const auto& x : j.at("findings")) {
        Finding f;
        f.check = x.at("check").get<int>();
        f.severity = parse_severity(x.at("severity").get<std::string>()).value_or(Severity::Medium);
        f.file = x.at("file").get<std::string>();
        f.line = x.at("line").get<std::uint32_t>();
        f.column = x.at("column").get<std::uint32_t>();
        f.start = x.at("start").get<std::uint32_t>();
        f.end = x.at("end").get<std::uint32_t>();
        f.contract = x.at("contract").get<std::string>();
        f.function = x.at("function").get<std::string>();
        f.message = x.at("message").get<std::string>();
        for (const auto& [k, v] : x.at("evidence").items()) f.evidence.emplace_back(k, v.get<std::string>());
        out.push_back(std::move(f));
    }
    return out;
}

std::string render_registry_table() {
    std::ostringstream out;
    out << pad(" ID", 5) << pad("SWC", 15) << pad("SEVERITY", 15) << pad("STRATEGY", 20) << "TITLE\n";
    for (const CheckDescriptor& c : registry())
        out << rpad_num(c.id, 3) << "  " << pad(c.swc_label(), 15) << pad(to_string(c.severity), 15)
            << pad(to_string(c.strategy), 20) << c.title << "\n";
    return out.str();
}

std::string render_registry_json() {
    ojson rows = ojson::array();
    for (const CheckDescriptor& c : registry()) {
        ojson row;
        row["id"] = c.id;
        row["swc"] = c.swc_label();
        row["title"] = c.title;
        row["severity"] = to_string(c.severity);
        row["strategy"] = to_string(c.strategy);
        row["enabled_default"] = c.enabled_default;
        rows.push_back(std::move(row));
    }
    return dump(rows);
}

int exit_code(const std::vector<Finding>& findings, Severity min_severity, bool had_errors) {
    if (had_errors) return 2;
    for (const Finding& f : findings)
        if (f.severity >= min_severity) return 1;
    return 0;
}

}  // namespace tokenaudit
