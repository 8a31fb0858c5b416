#include "tokenaudit/config.hpp"

#include <charconv>
#include <sstream>

namespace tokenaudit {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

int parse_int(const std::string& key, const std::string& value) {
    int out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size() || out < 0)
        throw ConfigError{"'" + key + "' expects a non-negative integer, got '" + value + "'"};
    return out;
}

std::set<std::string> parse_names(std::string_view text) {
    std::set<std::string> out;
    std::stringstream ss{std::string(text)};
    std::string item;
    while (std::getline(ss, item, ','))
        if (auto t = trim(item); !t.empty()) out.insert(t);
    return out;
}

}  // namespace

std::set<int> AnalyzeOptions::selection() const {
    std::set<int> out = enable ? *enable : default_selection();
    for (int id : disable) out.erase(id);
    return out;
}

std::set<int> parse_id_list(std::string_view text) {
    std::set<int> out;
    for (const std::string& item : parse_names(text)) {
        const int id = parse_int("check id", item);
        if (!find_check(id)) throw ConfigError{"unknown check id " + item};
        out.insert(id);
    }
    return out;
}

void apply_config_text(std::string_view text, AnalyzeOptions& options) {
    std::stringstream ss{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError{"line " + std::to_string(lineno) + ": expected key = value"};
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key == "pragma_min") {
            auto v = Version::parse(value);
            if (!v) throw ConfigError{"pragma_min expects a version like 0.5.11"};
            options.rules.pragma_min = *v;
        } else if (key == "literal_digits") {
            options.rules.literal_digits = parse_int(key, value);
        } else if (key == "fallback_statements") {
            options.rules.fallback_statements = parse_int(key, value);
        } else if (key == "max_nesting") {
            options.rules.max_nesting = parse_int(key, value);
        } else if (key == "min_severity") {
            auto s = parse_severity(value);
            if (!s) throw ConfigError{"unknown severity '" + value + "'"};
            options.min_severity = *s;
        } else if (key == "enable") {
            options.enable = parse_id_list(value);
        } else if (key == "disable") {
            options.disable = parse_id_list(value);
        } else if (key == "surface_allowlist") {
            options.rules.surface_allowlist = parse_names(value);
        } else if (key.rfind("severity.", 0) == 0) {
            const int id = parse_int(key, key.substr(9));
            auto s = parse_severity(value);
            if (!find_check(id) || !s) throw ConfigError{"bad severity override '" + key + " = " + value + "'"};
            options.rules.severity_overrides[id] = *s;
        } else {
            throw ConfigError{"line " + std::to_string(lineno) + ": unknown key '" + key + "'"};
        }
    }
}

}  // namespace tokenaudit
