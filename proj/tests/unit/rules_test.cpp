#include "doctest.h"

#include <fstream>
#include <sstream>

#include "../support/corpus.hpp"
#include "tokenaudit/config.hpp"

using namespace tokenaudit;

namespace {

struct ExpectedRow {
    int id;
    std::string marker;
    std::string title;
};

std::vector<ExpectedRow> expected_rows() {
    std::ifstream in(std::filesystem::path(TOKENAUDIT_SOURCE_DIR) / "tests" / "data" / "registry_expected.tsv");
    std::vector<ExpectedRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string id, marker, title;
        std::getline(ss, id, '\t');
        std::getline(ss, marker, '\t');
        std::getline(ss, title);
        rows.push_back({std::stoi(id), marker, title});
    }
    return rows;
}

}  // namespace

TEST_CASE("registry matches the expected table row for row") {
    auto rows = expected_rows();
    REQUIRE(rows.size() == 82);
    REQUIRE(registry().size() == 82);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const CheckDescriptor& d = registry()[i];
        CAPTURE(rows[i].id);
        CHECK(d.id == rows[i].id);
        CHECK(d.swc_label() == rows[i].marker);
        CHECK(d.title == rows[i].title);
    }
}

TEST_CASE("swc numbers are 100..136 for the first 37 rows") {
    for (const CheckDescriptor& d : registry()) {
        if (d.id <= 37) {
            REQUIRE(d.swc.has_value());
            CHECK(*d.swc == 99 + d.id);
        } else {
            CHECK_FALSE(d.swc.has_value());
        }
    }
    CHECK(find_check(0) == nullptr);
    CHECK(find_check(83) == nullptr);
    CHECK(find_check(8)->title == registry()[7].title);
}

TEST_CASE("config parsing") {
    AnalyzeOptions o;
    apply_config_text("# comment\nmin_severity = high\ndisable = 3,4\nmax_nesting = 2\nseverity.8 = low\n", o);
    CHECK(o.min_severity == Severity::High);
    CHECK(o.disable == std::set<int>{3, 4});
    CHECK(o.rules.max_nesting == 2);
    CHECK(o.rules.severity_of(*find_check(8)) == Severity::Low);
    auto sel = o.selection();
    CHECK(sel.count(3) == 0);
    CHECK(sel.count(8) == 1);
    CHECK_THROWS_AS(parse_id_list("1,99"), ConfigError);
    CHECK_THROWS_AS(apply_config_text("nonsense = 1\n", o), ConfigError);
}

TEST_CASE("every non-informational check has a vulnerable and a compliant fixture") {
    auto fs = corpus::fixtures();
    std::set<int> pos, neg;
    for (const auto& f : fs) {
        pos.insert(f.pos.begin(), f.pos.end());
        neg.insert(f.neg.begin(), f.neg.end());
    }
    for (const CheckDescriptor& d : registry()) {
        if (d.strategy == Strategy::InformationalOnly) continue;
        CAPTURE(d.id);
        CHECK(pos.count(d.id) == 1);
        CHECK(neg.count(d.id) == 1);
    }
}

TEST_CASE("corpus labels: precision and recall are 1") {
    corpus::Score s = corpus::score(corpus::fixtures());
    for (const auto& e : s.errors) MESSAGE(e);
    CHECK(s.errors.empty());
    CHECK(s.precision() == 1.0);
    CHECK(s.recall() == 1.0);
    CHECK(s.tp > 70);
}

TEST_CASE("false-positive fixtures stay silent") {
    for (const char* name : {"fp-mutex-modifier.sol", "fp-safemath-overflow.sol", "fp-safemath-delegatecall.sol",
                             "fp-checked-call-value.sol", "fp-private-nonsecret.sol"}) {
        CAPTURE(name);
        corpus::Fixture f = corpus::read_fixture(corpus::root() / name);
        REQUIRE_FALSE(f.neg.empty());
        auto got = corpus::reported(corpus::analyze({f.path}).run);
        for (int id : f.neg) CHECK(got.count(id) == 0);
    }
}

TEST_CASE("selection limits the checks that run") {
    auto a = corpus::analyze({corpus::root() / "08-reentrancy-vuln.sol"});
    CheckRun only8 = run_checks(a.bundle, {8});
    for (const auto& f : only8.findings) CHECK(f.check == 8);
    CHECK_FALSE(only8.findings.empty());
    CheckRun none = run_checks(a.bundle, {1});
    for (const auto& f : none.findings) CHECK(f.check == 1);
}

TEST_CASE("findings are sorted and unique") {
    auto a = corpus::analyze(corpus::all_paths());
    const auto& fs = a.run.findings;
    for (std::size_t i = 1; i < fs.size(); ++i) CHECK(finding_less(fs[i - 1], fs[i]));
}
