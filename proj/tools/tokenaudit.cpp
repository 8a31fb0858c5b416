#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tokenaudit/config.hpp"
#include "tokenaudit/report.hpp"
#include "tokenaudit/sim.hpp"

using namespace tokenaudit;

namespace {

struct AnalyzeArgs {
    std::vector<std::string> paths;
    std::string format = "table";
    std::string min_severity;
    std::string enable;
    std::string disable;
    std::string pragma_min;
    std::string config;
};

int run_analyze(const AnalyzeArgs& a) {
    AnalyzeOptions opts;
    try {
        if (!a.config.empty()) {
            std::ifstream in(a.config);
            if (!in) {
                std::cerr << "error: cannot read config file " << a.config << "\n";
                return 2;
            }
            std::stringstream ss;
            ss << in.rdbuf();
            apply_config_text(ss.str(), opts);
        }
        if (!a.enable.empty()) opts.enable = parse_id_list(a.enable);
        if (!a.disable.empty()) opts.disable = parse_id_list(a.disable);
        if (!a.pragma_min.empty()) {
            auto v = Version::parse(a.pragma_min);
            if (!v) throw ConfigError{"--pragma-min expects a version like 0.5.11"};
            opts.rules.pragma_min = *v;
        }
        if (!a.min_severity.empty()) {
            auto s = parse_severity(a.min_severity);
            if (!s) throw ConfigError{"unknown severity '" + a.min_severity + "'"};
            opts.min_severity = *s;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.message << "\n";
        return 2;
    }

    std::vector<std::shared_ptr<const SourceFile>> files;
    for (const auto& p : a.paths) {
        try {
            files.push_back(SourceFile::load(p));
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }
    AnalysisBundle bundle = build_bundle(files);
    CheckRun run = run_checks(bundle, opts.selection(), opts.rules);

    std::vector<std::string> names;
    for (const auto& fb : bundle.files) names.push_back(fb->file->path());
    const std::vector<Diagnostic> diags = bundle.diagnostics();
    if (a.format == "json") {
        std::cout << render_json(run, names, diags);
    } else {
        std::cout << render_table(run);
    }
    for (const Diagnostic& d : diags)
        if (d.is_error())
            std::cerr << (d.span.file ? d.span.file->path() : "") << ":" << d.span.line << ":" << d.span.column << ": "
                      << to_string(d.code) << ": " << d.message << "\n";
    return exit_code(run.findings, opts.min_severity, bundle.has_errors() || !run.tool_errors.empty());
}

struct SimArgs {
    std::string scenario;
    std::string variant = "secure";
    bool trace = false;
    std::string format = "text";
    std::string n = "100";
    std::string m = "50";
};

int run_sim(const SimArgs& a) {
    auto v = sim::parse_variant(a.variant);
    if (!v) {
        std::cerr << "error: unknown variant '" << a.variant << "'\n";
        return 2;
    }
    sim::ScenarioOutcome o;
    try {
        o = sim::run_scenario(a.scenario, *v);
    } catch (const sim::UnknownScenario& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cout << (a.format == "json" ? sim::outcome_json(o, a.trace) : sim::outcome_text(o, a.trace));
    return *v == sim::Variant::Secure && !o.property_holds ? 1 : 0;
}

int run_mwa(const SimArgs& a) {
    auto v = sim::parse_variant(a.variant);
    if (!v) {
        std::cerr << "error: unknown variant '" << a.variant << "'\n";
        return 2;
    }
    sim::U256 n, m;
    try {
        n = sim::U256(a.n);
        m = sim::U256(a.m);
    } catch (const std::exception&) {
        std::cerr << "error: --n and --m expect unsigned integers\n";
        return 2;
    }
    sim::MwaSetup s = sim::mwa_setup(*v, n, m);
    sim::OrderingResult r = sim::enumerate_orderings(s.world, s.owner_txs, s.spender_txs, s.spender);
    std::cout << (a.format == "json" ? sim::ordering_json(r, n, m, *v) : sim::ordering_text(r, n, m, *v));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Static security analyzer for ERC-20 token contracts, with an attack simulator"};
    app.require_subcommand(1);

    AnalyzeArgs aa;
    auto* analyze = app.add_subcommand("analyze", "Run the check catalogue over Solidity files");
    analyze->add_option("paths", aa.paths, "Source files")->required();
    analyze->add_option("--format", aa.format, "table or json")->check(CLI::IsMember({"table", "json"}));
    analyze->add_option("--min-severity", aa.min_severity, "Lowest severity that fails the run")
        ->check(CLI::IsMember({"informational", "low", "medium", "high"}));
    analyze->add_option("--enable", aa.enable, "Comma-separated check ids to run (default: all)");
    analyze->add_option("--disable", aa.disable, "Comma-separated check ids to skip");
    analyze->add_option("--pragma-min", aa.pragma_min, "Minimum acceptable compiler version (default 0.5.11)");
    analyze->add_option("--config", aa.config, "key = value configuration file");

    std::string checks_format = "table";
    auto* checks = app.add_subcommand("checks", "Inspect the check registry");
    checks->require_subcommand(1);
    auto* list = checks->add_subcommand("list", "Print all checks");
    list->add_option("--format", checks_format, "table or json")->check(CLI::IsMember({"table", "json"}));

    SimArgs sa;
    auto* simc = app.add_subcommand("sim", "Run the attack simulator");
    simc->require_subcommand(1);
    const auto variants = CLI::IsMember({"secure", "insecure", "insecure-legacy"});
    auto* simrun = simc->add_subcommand("run", "Run a canned attack scenario");
    simrun->add_option("scenario", sa.scenario, "Scenario name")->required()->check(CLI::IsMember(sim::scenario_names()));
    simrun->add_option("--variant", sa.variant, "secure or insecure")->check(variants);
    simrun->add_flag("--trace", sa.trace, "Print the step trace");
    simrun->add_option("--format", sa.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    auto* mwa = simc->add_subcommand("mwa", "Worst case of the multiple-withdrawal attack over all orderings");
    mwa->add_option("--n", sa.n, "First approval");
    mwa->add_option("--m", sa.m, "Second approval");
    mwa->add_option("--variant", sa.variant, "secure or insecure")->check(variants);
    mwa->add_option("--format", sa.format, "text or json")->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (analyze->parsed()) return run_analyze(aa);
    if (list->parsed()) {
        std::cout << (checks_format == "json" ? render_registry_json() : render_registry_table());
        return 0;
    }
    if (simrun->parsed()) return run_sim(sa);
    if (mwa->parsed()) return run_mwa(sa);
    return 2;
}
