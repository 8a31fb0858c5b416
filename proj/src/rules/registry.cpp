#include <algorithm>
#include <tuple>

#include "tokenaudit/rules.hpp"

namespace tokenaudit {

const char* to_string(Severity s) {
    switch (s) {
        case Severity::Informational: return "informational";
        case Severity::Low: return "low";
        case Severity::Medium: return "medium";
        case Severity::High: return "high";
    }
    return "?";
}

const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::Lexical: return "lexical";
        case Strategy::Syntactic: return "syntactic";
        case Strategy::Dataflow: return "dataflow";
        case Strategy::Conformance: return "conformance";
        case Strategy::InformationalOnly: return "informational-only";
    }
    return "?";
}

std::optional<Severity> parse_severity(std::string_view text) {
    for (Severity s : {Severity::Informational, Severity::Low, Severity::Medium, Severity::High})
        if (text == to_string(s)) return s;
    if (text == "info") return Severity::Informational;
    return std::nullopt;
}

std::string CheckDescriptor::swc_label() const {
    switch (marker) {
        case SwcMarker::Swc: return "SWC-" + std::to_string(swc.value_or(0));
        case SwcMarker::ToolSpecific: return "tool-specific";
        case SwcMarker::BestPractice: return "best-practice";
    }
    return "?";
}

const std::vector<CheckDescriptor>& registry() {
    using M = SwcMarker;
    using S = Severity;
    using G = Strategy;
    struct Row {
        int id;
        M marker;
        std::optional<int> swc;
        const char* title;
        S severity;
        G strategy;
    };
    static const std::vector<CheckDescriptor> checks = [] {
        const Row rows[] = {
        {1, M::Swc, 100, "Function default visibility", S::Low, G::Syntactic},
        {2, M::Swc, 101, "Integer Overflow and Underflow", S::High, G::Dataflow},
        {3, M::Swc, 102, "Outdated Compiler Version", S::Low, G::Syntactic},
        {4, M::Swc, 103, "Floating Pragma", S::Low, G::Syntactic},
        {5, M::Swc, 104, "Unchecked Call Return Value", S::Medium, G::Dataflow},
        {6, M::Swc, 105, "Unprotected Ether Withdrawal", S::High, G::Dataflow},
        {7, M::Swc, 106, "Unprotected SELFDESTRUCT Instruction", S::High, G::Dataflow},
        {8, M::Swc, 107, "Re-entrancy", S::High, G::Dataflow},
        {9, M::Swc, 108, "State variable default visibility", S::Low, G::Syntactic},
        {10, M::Swc, 109, "Uninitialized Storage Pointer", S::Medium, G::Dataflow},
        {11, M::Swc, 110, "Assert Violation", S::Medium, G::Dataflow},
        {12, M::Swc, 111, "Use of Deprecated Solidity Functions", S::Medium, G::Lexical},
        {13, M::Swc, 112, "Delegatecall to untrusted callee", S::High, G::Dataflow},
        {14, M::Swc, 113, "DoS with Failed Call", S::Medium, G::Dataflow},
        {15, M::Swc, 114, "Transaction Order Dependence", S::Medium, G::Dataflow},
        {16, M::Swc, 115, "Authorization through tx.origin", S::Medium, G::Syntactic},
        {17, M::Swc, 116, "Block values as a proxy for time", S::Medium, G::Syntactic},
        {18, M::Swc, 117, "Signature Malleability", S::Medium, G::Dataflow},
        {19, M::Swc, 118, "Incorrect Constructor Name", S::Medium, G::Syntactic},
        {20, M::Swc, 119, "Shadowing State Variables", S::Medium, G::Dataflow},
        {21, M::Swc, 120, "Weak Sources of Randomness from Chain Attributes", S::Medium, G::Syntactic},
        {22, M::Swc, 121, "Missing Protection against Signature Replay Attacks", S::Medium, G::Dataflow},
        {23, M::Swc, 122, "Lack of Proper Signature Verification", S::Medium, G::Dataflow},
        {24, M::Swc, 123, "Requirement Violation", S::Medium, G::Dataflow},
        {25, M::Swc, 124, "Write to Arbitrary Storage Location", S::Medium, G::Dataflow},
        {26, M::Swc, 125, "Incorrect Inheritance Order", S::Medium, G::Dataflow},
        {27, M::Swc, 126, "Insufficient Gas Griefing", S::Medium, G::Dataflow},
        {28, M::Swc, 127, "Arbitrary Jump with Function Type Variable", S::Medium, G::Syntactic},
        {29, M::Swc, 128, "DoS With Block Gas Limit", S::Medium, G::Dataflow},
        {30, M::Swc, 129, "Typographical Error", S::Medium, G::Lexical},
        {31, M::Swc, 130, "Right-To-Left-Override control character (U+202E)", S::Medium, G::Lexical},
        {32, M::Swc, 131, "Presence of unused variables", S::Medium, G::Syntactic},
        {33, M::Swc, 132, "Unexpected Ether balance", S::Medium, G::Dataflow},
        {34, M::Swc, 133, "Hash Collisions With Variable Length Arguments", S::Medium, G::Syntactic},
        {35, M::Swc, 134, "Message call with hardcoded gas amount", S::Medium, G::Syntactic},
        {36, M::Swc, 135, "Code With No Effects", S::Medium, G::Dataflow},
        {37, M::Swc, 136, "Unencrypted Private Data On-Chain", S::Informational, G::Dataflow},
        {38, M::ToolSpecific, std::nullopt, "Allowance decreases upon transfer", S::Medium, G::Conformance},
        {39, M::ToolSpecific, std::nullopt, "Allowance function returns an accurate value", S::Medium, G::Conformance},
        {40, M::ToolSpecific, std::nullopt, "It is possible to cancel an existing allowance", S::Medium, G::Conformance},
        {41, M::ToolSpecific, std::nullopt, "A transfer with an insufficient amount is reverted", S::Medium, G::Conformance},
        {42, M::ToolSpecific, std::nullopt, "Upon sending funds, the sender's balance is updated", S::Medium, G::Conformance},
        {43, M::ToolSpecific, std::nullopt, "The Transfer event correctly logged", S::Medium, G::Conformance},
        {44, M::ToolSpecific, std::nullopt, "Transfer an amount that is greater than the allowance", S::Medium, G::Conformance},
        {45, M::ToolSpecific, std::nullopt, "Risk of short address attack is minimized", S::Medium, G::Conformance},
        {46, M::ToolSpecific, std::nullopt, "Function names are unique", S::Medium, G::Conformance},
        {47, M::ToolSpecific, std::nullopt, "Using miner controlled variables", S::Medium, G::Syntactic},
        {48, M::ToolSpecific, std::nullopt, "Use of return in constructor", S::Medium, G::Syntactic},
        {49, M::ToolSpecific, std::nullopt, "Throwing exceptions in transfer() and transferFrom()", S::Medium, G::Conformance},
        {50, M::ToolSpecific, std::nullopt, "State variables that could be declared constant", S::Medium, G::Syntactic},
        {51, M::ToolSpecific, std::nullopt, "Tautology or contradiction", S::Medium, G::Syntactic},
        {52, M::ToolSpecific, std::nullopt, "Divide before multiply", S::Medium, G::Syntactic},
        {53, M::ToolSpecific, std::nullopt, "Unchecked Send", S::Medium, G::Dataflow},
        {54, M::BestPractice, std::nullopt, "Too many digits", S::Low, G::Lexical},
        {55, M::BestPractice, std::nullopt, "The decreaseAllowance definition follows the standard", S::Low, G::Conformance},
        {56, M::BestPractice, std::nullopt, "The increaseAllowance definition follows the standard", S::Low, G::Conformance},
        {57, M::BestPractice, std::nullopt, "Minimize attack surface", S::Informational, G::Conformance},
        {58, M::BestPractice, std::nullopt, "Transfer to the burn address is reverted", S::Low, G::Conformance},
        {59, M::BestPractice, std::nullopt, "Source code is decentralized", S::Low, G::Lexical},
        {60, M::BestPractice, std::nullopt, "Funds can be held only by user-controlled wallets", S::Informational, G::InformationalOnly},
        {61, M::BestPractice, std::nullopt, "Code logic is simple to understand", S::Informational, G::Conformance},
        {62, M::BestPractice, std::nullopt, "All functions are documented", S::Low, G::Lexical},
        {63, M::BestPractice, std::nullopt, "The Approval event is correctly logged", S::Low, G::Conformance},
        {64, M::BestPractice, std::nullopt, "Acceptable gas cost of the approve() function", S::Informational, G::InformationalOnly},
        {65, M::BestPractice, std::nullopt, "Acceptable gas cost of the transfer() function", S::Informational, G::InformationalOnly},
        {66, M::BestPractice, std::nullopt, "Emitting event when state changes", S::Low, G::Conformance},
        {67, M::BestPractice, std::nullopt, "Use of unindexed arguments", S::Low, G::Syntactic},
        {68, M::BestPractice, std::nullopt, "ERC-20 compliance", S::Low, G::Conformance},
        {69, M::BestPractice, std::nullopt, "Conformance to naming conventions", S::Low, G::Syntactic},
        {70, M::BestPractice, std::nullopt, "Token decimal", S::Low, G::Conformance},
        {71, M::BestPractice, std::nullopt, "Locked money (Freezing ETH)", S::Low, G::Dataflow},
        {72, M::BestPractice, std::nullopt, "Malicious libraries", S::Low, G::Syntactic},
        {73, M::BestPractice, std::nullopt, "Payable fallback function", S::Low, G::Dataflow},
        {74, M::BestPractice, std::nullopt, "Prefer external to public visibility level", S::Low, G::Syntactic},
        {75, M::BestPractice, std::nullopt, "Token name", S::Low, G::Conformance},
        {76, M::BestPractice, std::nullopt, "Error information in revert condition", S::Low, G::Syntactic},
        {77, M::BestPractice, std::nullopt, "Complex Fallback", S::Low, G::Dataflow},
        {78, M::BestPractice, std::nullopt, "Function Order", S::Low, G::Syntactic},
        {79, M::BestPractice, std::nullopt, "Visibility Modifier Order", S::Low, G::Syntactic},
        {80, M::BestPractice, std::nullopt, "Non-initialized return value", S::Low, G::Syntactic},
        {81, M::BestPractice, std::nullopt, "Token symbol", S::Low, G::Conformance},
        {82, M::BestPractice, std::nullopt, "Allowance spending is possible", S::Low, G::Conformance},
        };
        std::vector<CheckDescriptor> out;
        for (const Row& r : rows) out.push_back({r.id, r.marker, r.swc, r.title, r.severity, r.strategy, true});
        return out;
    }();
    return checks;
}

const CheckDescriptor* find_check(int id) {
    const auto& all = registry();
    if (id < 1 || id > static_cast<int>(all.size())) return nullptr;
    return &all[id - 1];
}

std::set<int> default_selection() {
    std::set<int> out;
    for (const auto& c : registry())
        if (c.enabled_default) out.insert(c.id);
    return out;
}

Severity RuleConfig::severity_of(const CheckDescriptor& c) const {
    auto it = severity_overrides.find(c.id);
    return it == severity_overrides.end() ? c.severity : it->second;
}

bool finding_less(const Finding& a, const Finding& b) {
    return std::tie(a.file, a.start, a.check, a.end, a.message, a.contract, a.function) <
           std::tie(b.file, b.start, b.check, b.end, b.message, b.contract, b.function);
}

}  // namespace tokenaudit
