#include "tokenaudit/erc20conf.hpp"

namespace tokenaudit {

std::string CanonicalMember::signature() const {
    std::string out = name + "(";
    for (std::size_t i = 0; i < params.size(); ++i) out += (i ? "," : "") + params[i];
    return out + ")";
}

const std::vector<CanonicalMember>& canonical_interface() {
    static const std::vector<CanonicalMember> members = {
        {"totalSupply", {}, "uint256", false},
        {"balanceOf", {"address"}, "uint256", false},
        {"transfer", {"address", "uint256"}, "bool", false},
        {"transferFrom", {"address", "address", "uint256"}, "bool", false},
        {"approve", {"address", "uint256"}, "bool", false},
        {"allowance", {"address", "address"}, "uint256", false},
        {"Transfer", {"address", "address", "uint256"}, "", true},
        {"Approval", {"address", "address", "uint256"}, "", true},
    };
    return members;
}

const char* to_string(MemberVisibility v) {
    switch (v) {
        case MemberVisibility::External: return "external";
        case MemberVisibility::Public: return "public";
        case MemberVisibility::Other: return "other";
    }
    return "?";
}

const ConformanceItem* ConformanceReport::item(std::string_view name) const {
    for (const auto& it : items)
        if (it.canonical->name == name) return &it;
    return nullptr;
}

std::vector<std::string> ConformanceReport::missing() const {
    std::vector<std::string> out;
    for (const auto& it : items)
        if (!it.present) out.push_back(it.canonical->name);
    return out;
}

namespace {

MemberVisibility visibility_of(Visibility v) {
    switch (v) {
        case Visibility::External: return MemberVisibility::External;
        case Visibility::Public:
        case Visibility::Unspecified: return MemberVisibility::Public;
        default: return MemberVisibility::Other;
    }
}

bool params_match(const std::vector<Param>& params, const std::vector<std::string>& expected) {
    if (params.size() != expected.size()) return false;
    for (std::size_t i = 0; i < params.size(); ++i)
        if (params[i].type.text() != expected[i]) return false;
    return true;
}

// Public state variables generate getters: `uint256 public totalSupply` and
// `mapping(address => uint256) public balanceOf` satisfy the interface.
bool getter_matches(const StateVarDecl& v, const CanonicalMember& m) {
    if (v.visibility != Visibility::Public || v.name != m.name) return false;
    const TypeExpr* t = &v.type;
    std::vector<std::string> keys;
    while (t->is_mapping()) {
        keys.push_back(t->children[0].text());
        t = &t->children[1];
    }
    return keys == m.params && t->text() == m.returns;
}

}  // namespace

ConformanceReport check_interface(const ContractScope& scope) {
    ConformanceReport report;
    report.overall = true;
    for (const CanonicalMember& m : canonical_interface()) {
        ConformanceItem item;
        item.canonical = &m;
        if (m.is_event) {
            for (const EventDef* e : scope.events) {
                if (e->name != m.name) continue;
                const bool match = std::vector<std::string>{} != m.params && params_match(e->params, m.params);
                if (!item.present || match) {
                    item.present = true;
                    item.event = e;
                    item.signature_match = match;
                    item.return_type_match = true;
                    item.visibility = MemberVisibility::Public;
                }
            }
        } else {
            for (const FunctionDef* f : scope.functions_named(m.name)) {
                const bool match = params_match(f->params, m.params);
                if (item.present && !match) continue;
                item.present = true;
                item.function = f;
                item.signature_match = match;
                item.return_type_match = f->returns.size() == 1 && f->returns[0].type.text() == m.returns;
                item.visibility = visibility_of(f->visibility);
                if (match) break;
            }
            if (!item.signature_match) {
                for (const StateVarDecl* v : scope.state_vars) {
                    if (getter_matches(*v, m)) {
                        item.present = true;
                        item.function = nullptr;
                        item.signature_match = true;
                        item.return_type_match = true;
                        item.visibility = MemberVisibility::Public;
                    }
                }
            }
        }
        report.overall = report.overall && item.present && item.signature_match;
        report.items.push_back(item);
    }
    return report;
}

ConformanceReport check_interface(const ContractDef& contract, const ProgramIndex& index) {
    return check_interface(make_scope(contract, index));
}

}  // namespace tokenaudit
