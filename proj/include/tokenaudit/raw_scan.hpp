#pragma once

#include <vector>

#include "tokenaudit/source.hpp"

namespace tokenaudit {

/// Byte-level findings computed before tokenization.
struct RawScanReport {
    std::vector<SourceSpan> rtl_override_positions;  // U+202E, encoded E2 80 AE
    std::vector<SourceSpan> non_ascii_positions;     // one span per non-ASCII code point or invalid byte
};

RawScanReport scan_raw(const SourceFile& file);

}  // namespace tokenaudit
