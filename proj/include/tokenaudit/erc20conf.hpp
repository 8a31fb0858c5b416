#pragma once

#include <string>
#include <vector>

#include "tokenaudit/ast.hpp"
#include "tokenaudit/scope.hpp"

namespace tokenaudit {

struct CanonicalMember {
    std::string name;
    std::vector<std::string> params;
    std::string returns;  // empty for events
    bool is_event = false;

    std::string signature() const;
};

/// totalSupply, balanceOf, transfer, transferFrom, approve, allowance, Transfer, Approval.
const std::vector<CanonicalMember>& canonical_interface();

enum class MemberVisibility { External, Public, Other };
const char* to_string(MemberVisibility v);

struct ConformanceItem {
    const CanonicalMember* canonical = nullptr;
    bool present = false;          // a member with this name exists
    bool signature_match = false;  // name and ordered parameter types match
    bool return_type_match = false;
    MemberVisibility visibility = MemberVisibility::Other;
    const FunctionDef* function = nullptr;
    const EventDef* event = nullptr;
};

struct ConformanceReport {
    std::vector<ConformanceItem> items;  // in canonical order
    bool overall = false;

    const ConformanceItem* item(std::string_view name) const;
    std::vector<std::string> missing() const;
};

/// Structural ERC-20 check over the contract and its bases in the file set.
ConformanceReport check_interface(const ContractDef& contract, const ProgramIndex& index);
ConformanceReport check_interface(const ContractScope& scope);

}  // namespace tokenaudit
