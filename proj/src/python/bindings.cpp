#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tokenaudit/config.hpp"
#include "tokenaudit/report.hpp"
#include "tokenaudit/sim.hpp"

namespace py = pybind11;
using namespace tokenaudit;

namespace {

AnalyzeOptions options(const std::optional<std::string>& enable, const std::string& disable,
                       const std::string& min_severity) {
    AnalyzeOptions o;
    if (enable) o.enable = parse_id_list(*enable);
    if (!disable.empty()) o.disable = parse_id_list(disable);
    auto s = parse_severity(min_severity);
    if (!s) throw py::value_error("unknown severity '" + min_severity + "'");
    o.min_severity = *s;
    return o;
}

// Returns (report json, exit code).
std::pair<std::string, int> analyze_files(std::vector<std::shared_ptr<const SourceFile>> files,
                                          const AnalyzeOptions& o) {
    AnalysisBundle bundle = build_bundle(std::move(files));
    CheckRun run = run_checks(bundle, o.selection(), o.rules);
    std::vector<std::string> names;
    for (const auto& fb : bundle.files) names.push_back(fb->file->path());
    std::string json = render_json(run, names, bundle.diagnostics());
    return {json, exit_code(run.findings, o.min_severity, bundle.has_errors() || !run.tool_errors.empty())};
}

sim::Variant variant(const std::string& v) {
    auto parsed = sim::parse_variant(v);
    if (!parsed) throw py::value_error("unknown variant '" + v + "'");
    return *parsed;
}

}  // namespace

PYBIND11_MODULE(_impl, m) {
    m.doc() = "tokenaudit native core";
    m.attr("version") = kToolVersion;

    py::register_exception<sim::UnknownScenario>(m, "UnknownScenario", PyExc_ValueError);
    py::register_exception<sim::TooManyTransactions>(m, "TooManyTransactions", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ConfigError& e) {
            PyErr_SetString(PyExc_ValueError, e.message.c_str());
        }
    });

    m.def(
        "analyze_paths",
        [](const std::vector<std::string>& paths, std::optional<std::string> enable, const std::string& disable,
           const std::string& min_severity) {
            AnalyzeOptions o = options(enable, disable, min_severity);
            std::vector<std::shared_ptr<const SourceFile>> files;
            for (const auto& p : paths) {
                try {
                    files.push_back(SourceFile::load(p));
                } catch (const std::exception& e) {
                    throw py::value_error(e.what());
                }
            }
            py::gil_scoped_release nogil;
            return analyze_files(std::move(files), o);
        },
        py::arg("paths"), py::arg("enable") = py::none(), py::arg("disable") = "", py::arg("min_severity") = "low");

    m.def(
        "analyze_source",
        [](const std::string& name, py::bytes source, std::optional<std::string> enable, const std::string& disable,
           const std::string& min_severity) {
            AnalyzeOptions o = options(enable, disable, min_severity);
            auto file = SourceFile::from_string(name, std::string(source));
            py::gil_scoped_release nogil;
            return analyze_files({file}, o);
        },
        py::arg("name"), py::arg("source"), py::arg("enable") = py::none(), py::arg("disable") = "",
        py::arg("min_severity") = "low");

    m.def("registry_json", &render_registry_json);
    m.def("scenario_names", &sim::scenario_names);

    m.def(
        "sim_run",
        [](const std::string& scenario, const std::string& v, bool trace) {
            return sim::outcome_json(sim::run_scenario(scenario, variant(v)), trace);
        },
        py::arg("scenario"), py::arg("variant") = "secure", py::arg("trace") = false);

    m.def(
        "sim_mwa",
        [](const std::string& n, const std::string& m_, const std::string& v) {
            sim::U256 a, b;
            try {
                a = sim::U256(n);
                b = sim::U256(m_);
            } catch (const std::exception&) {
                throw py::value_error("n and m must be unsigned integers");
            }
            sim::MwaSetup s = sim::mwa_setup(variant(v), a, b);
            auto r = sim::enumerate_orderings(s.world, s.owner_txs, s.spender_txs, s.spender);
            return sim::ordering_json(r, a, b, variant(v));
        },
        py::arg("n"), py::arg("m"), py::arg("variant") = "secure");
}
