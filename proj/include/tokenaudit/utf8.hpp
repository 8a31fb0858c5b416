#pragma once

#include <cstdint>
#include <string_view>

namespace tokenaudit::utf8 {

struct Decoded {
    char32_t code_point = 0;
    std::uint32_t length = 1;  // bytes consumed, at least 1
    bool valid = false;
};

Decoded decode(std::string_view bytes, std::size_t offset);

/// Bidi overrides/isolates/marks, zero-width characters, C0/C1 controls other than
/// tab/newline/CR, and private-use code points.
bool is_non_printable(char32_t cp);

}  // namespace tokenaudit::utf8
