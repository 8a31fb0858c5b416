#include "doctest.h"

#include "json.hpp"
#include "../support/corpus.hpp"

using namespace tokenaudit;

TEST_CASE("secure fixture matrix") {
    auto a = corpus::analyze({corpus::root() / "secure_token.sol"});
    AuditMatrix m = build_matrix(a.run);
    CHECK(m.rows.size() == 82);
    CHECK(m.failed == 0);
    CHECK(m.success_rate_percent == 100.0);
    CHECK(m.total == 82);
    CHECK(m.passed + m.failed + m.informational + m.not_applicable == m.total);
    CHECK(exit_code(a.run.findings, Severity::Low) == 0);
}

TEST_CASE("matrix counts against an independent tally") {
    auto a = corpus::analyze({corpus::root() / "08-reentrancy-vuln.sol"});
    AuditMatrix m = build_matrix(a.run);
    std::map<int, int> tally;
    for (const auto& f : a.run.findings) ++tally[f.check];
    for (const MatrixRow& r : m.rows) CHECK(r.count == tally[r.check->id]);
    CHECK(m.rows[7].status == RowStatus::Failed);
    int failed = 0;
    for (const MatrixRow& r : m.rows) failed += r.status == RowStatus::Failed;
    CHECK(m.failed == failed);
    CHECK(m.success_rate_percent == doctest::Approx(100.0 * m.passed / (m.passed + m.failed)));
}

TEST_CASE("json round trip of findings") {
    auto paths = corpus::all_paths();
    auto a = corpus::analyze(paths);
    std::vector<std::string> names;
    for (const auto& fb : a.bundle.files) names.push_back(fb->file->path());
    std::string json = render_json(a.run, names);
    CHECK(findings_from_json(json) == a.run.findings);
    auto doc = nlohmann::json::parse(json);
    CHECK(doc["findings"].size() == a.run.findings.size());
}

TEST_CASE("json is independent of argument order") {
    auto paths = corpus::all_paths();
    std::string forward = corpus::report_json(paths);
    std::reverse(paths.begin(), paths.end());
    CHECK(corpus::report_json(paths) == forward);
}

TEST_CASE("non-utf-8 bytes are escaped, not passed through") {
    auto f = SourceFile::from_string("bad\xFF.sol", "pragma solidity 0.4.0;\ncontract C { function f() public {} }\n");
    AnalysisBundle b = build_bundle({f});
    CheckRun run = run_checks(b, default_selection());
    std::string json = render_json(run, {f->path()});
    CHECK(nlohmann::json::accept(json));
}

TEST_CASE("exit codes") {
    Finding low;
    low.check = 3;
    low.severity = Severity::Low;
    Finding info = low;
    info.severity = Severity::Informational;
    CHECK(exit_code({}, Severity::Low) == 0);
    CHECK(exit_code({info}, Severity::Low) == 0);
    CHECK(exit_code({low}, Severity::Low) == 1);
    CHECK(exit_code({low}, Severity::High) == 0);
    CHECK(exit_code({low}, Severity::Low, true) == 2);
}

TEST_CASE("registry renderers list every check") {
    auto doc = nlohmann::json::parse(render_registry_json());
    REQUIRE(doc.is_array());
    CHECK(doc.size() == 82);
    std::string table = render_registry_table();
    CHECK(table.find("Re-entrancy") != std::string::npos);
}
