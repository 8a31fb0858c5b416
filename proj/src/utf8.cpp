#include "tokenaudit/utf8.hpp"

namespace tokenaudit::utf8 {

Decoded decode(std::string_view bytes, std::size_t offset) {
    auto byte = [&](std::size_t i) { return static_cast<unsigned char>(bytes[i]); };
    const unsigned char lead = byte(offset);
    if (lead < 0x80) return {lead, 1, true};

    std::uint32_t need = 0;
    char32_t cp = 0;
    char32_t min = 0;
    if ((lead & 0xE0) == 0xC0) {
        need = 1, cp = lead & 0x1F, min = 0x80;
    } else if ((lead & 0xF0) == 0xE0) {
        need = 2, cp = lead & 0x0F, min = 0x800;
    } else if ((lead & 0xF8) == 0xF0) {
        need = 3, cp = lead & 0x07, min = 0x10000;
    } else {
        return {lead, 1, false};
    }
    if (offset + need >= bytes.size()) return {lead, 1, false};
    for (std::uint32_t i = 1; i <= need; ++i) {
        const unsigned char c = byte(offset + i);
        if ((c & 0xC0) != 0x80) return {lead, 1, false};
        cp = (cp << 6) | (c & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return {lead, 1, false};
    return {cp, need + 1, true};
}

bool is_non_printable(char32_t cp) {
    if (cp < 0x20) return cp != '\t' && cp != '\n' && cp != '\r';
    if (cp >= 0x7F && cp <= 0x9F) return true;
    if (cp >= 0x200B && cp <= 0x200F) return true;  // zero-width and LRM/RLM
    if (cp >= 0x202A && cp <= 0x202E) return true;  // embeddings and overrides
    if (cp >= 0x2066 && cp <= 0x2069) return true;  // isolates
    if (cp == 0xFEFF) return true;
    if (cp >= 0xE000 && cp <= 0xF8FF) return true;
    return false;
}

}  // namespace tokenaudit::utf8
