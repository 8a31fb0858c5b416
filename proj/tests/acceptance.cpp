// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance                 run all nine
//   acceptance --criterion N   run one (used by ctest)

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"
#include "support/props.hpp"
#include "tokenaudit/report.hpp"
#include "tokenaudit/sim.hpp"

using namespace tokenaudit;
namespace sim = tokenaudit::sim;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Compares what `checks list --format json` prints against the expected table.
Verdict registry_table() {
    std::ifstream in(std::filesystem::path(TOKENAUDIT_SOURCE_DIR) / "tests" / "data" / "registry_expected.tsv");
    const auto listed = nlohmann::json::parse(render_registry_json());
    std::string line;
    std::size_t row = 0;
    int mismatches = 0;
    std::string first;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string id, marker, title;
        std::getline(ss, id, '\t');
        std::getline(ss, marker, '\t');
        std::getline(ss, title);
        if (row >= listed.size()) {
            ++mismatches;
            continue;
        }
        const auto& r = listed[row++];
        if (r["id"].get<int>() != std::stoi(id) || r["swc"] != marker || r["title"] != title) {
            if (first.empty()) first = "first mismatch at row " + id;
            ++mismatches;
        }
    }
    const bool ok = mismatches == 0 && row == 82 && listed.size() == 82;
    return {ok, std::to_string(listed.size()) + " rows listed, " + std::to_string(mismatches) + " mismatches" +
                    (first.empty() ? "" : "; " + first)};
}

Verdict corpus_scores() {
    auto fs = corpus::fixtures();
    std::set<int> pos, neg;
    for (const auto& f : fs) {
        pos.insert(f.pos.begin(), f.pos.end());
        neg.insert(f.neg.begin(), f.neg.end());
    }
    int uncovered = 0;
    for (const CheckDescriptor& d : registry())
        if (d.strategy != Strategy::InformationalOnly && (!pos.count(d.id) || !neg.count(d.id))) ++uncovered;
    corpus::Score s = corpus::score(fs);
    std::ostringstream out;
    out << fs.size() << " fixtures, tp " << s.tp << " fp " << s.fp << " fn " << s.fn << ", precision "
        << s.precision() << " recall " << s.recall() << ", checks without both fixtures " << uncovered;
    if (!s.errors.empty()) out << "; " << s.errors.front();
    return {s.precision() == 1.0 && s.recall() == 1.0 && uncovered == 0 && s.errors.empty(), out.str()};
}

Verdict fp_fixtures() {
    const std::vector<std::string> names = {"fp-mutex-modifier.sol", "fp-safemath-overflow.sol",
                                            "fp-safemath-delegatecall.sol", "fp-checked-call-value.sol",
                                            "fp-private-nonsecret.sol"};
    int hits = 0;
    std::string first;
    for (const auto& n : names) {
        corpus::Fixture f = corpus::read_fixture(corpus::root() / n);
        if (f.neg.empty()) {
            ++hits;
            first = n + " has no expect-neg label";
            continue;
        }
        auto got = corpus::reported(corpus::analyze({f.path}).run);
        for (int id : f.neg)
            if (got.count(id)) {
                ++hits;
                if (first.empty()) first = n + " reports " + std::to_string(id);
            }
    }
    return {hits == 0, std::to_string(names.size()) + " fixtures, " + std::to_string(hits) + " findings" +
                           (first.empty() ? "" : "; " + first)};
}

Verdict secure_fixture() {
    auto a = corpus::analyze({corpus::root() / "secure_token.sol"});
    AuditMatrix m = build_matrix(a.run);
    std::ostringstream out;
    out << "success rate " << m.success_rate_percent << "%, passed " << m.passed << ", failed " << m.failed
        << ", informational " << m.informational;
    return {m.success_rate_percent == 100.0 && m.failed == 0 && !a.bundle.has_errors(), out.str()};
}

Verdict mwa() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20241018);
    std::uniform_int_distribution<int> d(1, 200);
    const int trials = 200;
    int bad = 0;
    std::string first;
    for (int i = 0; i < trials; ++i) {
        const int n = d(rng), m = d(rng);
        for (sim::Variant v : {sim::Variant::Secure, sim::Variant::InsecureLegacy}) {
            const bool secure = v == sim::Variant::Secure;
            sim::MwaSetup s = sim::mwa_setup(v, n, m);
            sim::OrderingResult r = sim::enumerate_orderings(s.world, s.owner_txs, s.spender_txs, s.spender);
            const std::int64_t expect = secure ? std::max(n, m) : n + m;
            const std::int64_t oracle = oracle::mwa_worst({n, m}, {n, m}, secure, n + m);
            if (r.worst_gain != expect || oracle != expect) {
                ++bad;
                if (first.empty())
                    first = "N=" + std::to_string(n) + " M=" + std::to_string(m) + " " + sim::to_string(v) +
                            ": sim " + r.worst_gain.str() + " oracle " + std::to_string(oracle);
            }
        }
    }
    const double secs = seconds_since(t0);
    std::ostringstream out;
    out << trials << " trials, " << bad << " mismatches, " << secs << " s" << (first.empty() ? "" : "; " + first);
    return {bad == 0 && secs < 30.0, out.str()};
}

Verdict reentrancy() {
    auto bad = sim::run_scenario("reentrancy-same", sim::Variant::InsecureLegacy);
    auto good = sim::run_scenario("reentrancy-same", sim::Variant::Secure);
    std::ostringstream out;
    out << "insecure " << bad.metrics.attacker_wei_gained << " wei, secure " << good.metrics.attacker_wei_gained
        << " wei with " << good.metrics.reverted_steps << " revert(s)";
    return {bad.metrics.attacker_wei_gained == 30 && good.metrics.attacker_wei_gained == 10 &&
                good.metrics.reverted_steps >= 1,
            out.str()};
}

Verdict overflow() {
    auto legacy = sim::run_scenario("overflow-batch", sim::Variant::InsecureLegacy);
    bool committed = false;
    for (std::size_t i = legacy.setup_events; i < legacy.final.trace.size(); ++i)
        if (legacy.final.trace[i].depth == 0 && legacy.final.trace[i].ok) committed = true;
    const bool wrap_ok = committed && !legacy.metrics.invariant_violations.empty();

    sim::World w = sim::make_world(sim::Variant::Secure);
    w.token.owner = sim::Address{2};
    sim::step(w, {sim::Address{2}, sim::Action::mint(sim::Address{4}, 1000)});
    const std::string before = sim::serialize_state(w);
    sim::StepResult r =
        sim::step(w, {sim::Address{4}, sim::Action::batch_transfer({sim::Address{5}, sim::Address{6}}, sim::pow2(255))});
    const bool checked_ok = !r.ok && r.error == sim::ErrorKind::Overflow && sim::serialize_state(w) == before;

    std::ostringstream out;
    out << "wrapping: " << (committed ? "committed" : "reverted") << " with "
        << legacy.metrics.invariant_violations.size() << " violation(s); checked: "
        << (r.ok ? "committed" : sim::to_string(*r.error)) << ", state "
        << (sim::serialize_state(w) == before ? "unchanged" : "changed");
    return {wrap_ok && checked_ok, out.str()};
}

Verdict conservation() {
    auto t0 = std::chrono::steady_clock::now();
    std::ostringstream out;
    bool ok = true;
    for (sim::Variant v : {sim::Variant::Secure, sim::Variant::InsecureLegacy}) {
        props::StreamReport r = props::run_stream(v, 10000, 99);
        ok = ok && r.failure_count == 0 && r.commits > 0 && r.reverts > 0;
        out << sim::to_string(v) << ": " << r.commits << " commits, " << r.reverts << " reverts, " << r.failure_count
            << " failures" << (r.failures.empty() ? "" : " (" + r.failures.front() + ")") << "; ";
    }
    const double secs = seconds_since(t0);
    out << secs << " s";
    return {ok && secs < 60.0, out.str()};
}

Verdict determinism() {
    auto paths = corpus::all_paths();
    const std::string a = corpus::report_json(paths);
    std::reverse(paths.begin(), paths.end());
    const std::string b = corpus::report_json(paths);
    return {a == b && !a.empty(), std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different")};
}

const std::vector<std::pair<std::string, std::function<Verdict()>>>& criteria() {
    static const std::vector<std::pair<std::string, std::function<Verdict()>>> all = {
        {"registry matches the expected table", registry_table},
        {"corpus precision and recall are 1.0", corpus_scores},
        {"false-positive fixtures stay silent", fp_fixtures},
        {"secure fixture success rate is 100%", secure_fixture},
        {"multiple-withdrawal bounds match the exhaustive oracle", mwa},
        {"re-entrancy: insecure drains 30 wei, secure pays 10", reentrancy},
        {"batch overflow: wraps and is flagged, or reverts cleanly", overflow},
        {"conservation and atomic reverts over random streams", conservation},
        {"analyze output is byte-identical across runs", determinism},
    };
    return all;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tokenaudit acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only, "run a single criterion (1-9)")->check(CLI::Range(1, 9));
    CLI11_PARSE(app, argc, argv);

    int failed = 0;
    for (std::size_t i = 0; i < criteria().size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (only != 0 && id != only) continue;
        Verdict v;
        try {
            v = criteria()[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += !v.pass;
        std::cout << "criterion " << id << ": " << (v.pass ? "PASS" : "FAIL") << "  " << criteria()[i].first << " ("
                  << v.detail << ")" << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
