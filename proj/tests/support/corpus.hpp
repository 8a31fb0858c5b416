#pragma once

// Fixture corpus helpers shared by the unit tests and the acceptance runner.
// Each fixture declares what it expects in header comments:
//   // expect-pos: 8        check 8 must report
//   // expect-neg: 8, 5     checks 8 and 5 must stay silent
//   // expect-neg: all      nothing above informational may be reported

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tokenaudit/report.hpp"
#include "tokenaudit/rules.hpp"

#ifndef TOKENAUDIT_SOURCE_DIR
#error "TOKENAUDIT_SOURCE_DIR must point at the repository root"
#endif

namespace corpus {

inline std::filesystem::path root() { return std::filesystem::path(TOKENAUDIT_SOURCE_DIR) / "tests" / "corpus"; }

struct Fixture {
    std::filesystem::path path;
    std::set<int> pos;
    std::set<int> neg;
    bool neg_all = false;
};

inline Fixture read_fixture(const std::filesystem::path& p) {
    Fixture f{p, {}, {}, false};
    std::ifstream in(p);
    static const std::regex header(R"(^//\s*expect-(pos|neg):\s*(.*)$)");
    std::string line;
    while (std::getline(in, line)) {
        std::smatch m;
        if (!std::regex_match(line, m, header)) continue;
        const std::string list = m[2];
        if (m[1] == "neg" && list.find("all") != std::string::npos) {
            f.neg_all = true;
            continue;
        }
        std::stringstream ss(list);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) (m[1] == "pos" ? f.pos : f.neg).insert(std::stoi(item));
    }
    return f;
}

inline std::vector<Fixture> fixtures() {
    std::vector<Fixture> out;
    for (const auto& e : std::filesystem::directory_iterator(root()))
        if (e.path().extension() == ".sol") out.push_back(read_fixture(e.path()));
    std::sort(out.begin(), out.end(), [](const Fixture& a, const Fixture& b) { return a.path < b.path; });
    return out;
}

struct Analyzed {
    tokenaudit::AnalysisBundle bundle;
    tokenaudit::CheckRun run;
};

inline Analyzed analyze(const std::vector<std::filesystem::path>& paths) {
    std::vector<std::shared_ptr<const tokenaudit::SourceFile>> files;
    for (const auto& p : paths) files.push_back(tokenaudit::SourceFile::load(p.string()));
    Analyzed a{tokenaudit::build_bundle(files), {}};
    a.run = tokenaudit::run_checks(a.bundle, tokenaudit::default_selection());
    return a;
}

inline std::set<int> reported(const tokenaudit::CheckRun& run) {
    std::set<int> out;
    for (const auto& f : run.findings) out.insert(f.check);
    return out;
}

struct Score {
    int tp = 0, fp = 0, fn = 0, tn = 0;
    std::vector<std::string> errors;

    double precision() const { return tp + fp == 0 ? 1.0 : double(tp) / (tp + fp); }
    double recall() const { return tp + fn == 0 ? 1.0 : double(tp) / (tp + fn); }
};

// Scores every labelled (fixture, check) pair, analyzing each fixture alone.
inline Score score(const std::vector<Fixture>& fs) {
    Score s;
    for (const Fixture& f : fs) {
        Analyzed a = analyze({f.path});
        if (a.bundle.has_errors()) s.errors.push_back(f.path.filename().string() + ": parse errors");
        const std::set<int> got = reported(a.run);
        for (int id : f.pos) {
            if (got.count(id)) {
                ++s.tp;
            } else {
                ++s.fn;
                s.errors.push_back(f.path.filename().string() + ": missed " + std::to_string(id));
            }
        }
        for (int id : f.neg) {
            if (got.count(id)) {
                ++s.fp;
                s.errors.push_back(f.path.filename().string() + ": false positive " + std::to_string(id));
            } else {
                ++s.tn;
            }
        }
        if (f.neg_all)
            for (const auto& finding : a.run.findings)
                if (finding.severity != tokenaudit::Severity::Informational) {
                    ++s.fp;
                    s.errors.push_back(f.path.filename().string() + ": unexpected " + std::to_string(finding.check));
                }
    }
    return s;
}

inline std::vector<std::filesystem::path> all_paths() {
    std::vector<std::filesystem::path> out;
    for (const auto& f : fixtures()) out.push_back(f.path);
    return out;
}

inline std::string report_json(const std::vector<std::filesystem::path>& paths) {
    Analyzed a = analyze(paths);
    std::vector<std::string> names;
    for (const auto& fb : a.bundle.files) names.push_back(fb->file->path());
    return tokenaudit::render_json(a.run, names, a.bundle.diagnostics());
}

}  // namespace corpus
