#include "tokenaudit/raw_scan.hpp"

#include "tokenaudit/utf8.hpp"

namespace tokenaudit {

RawScanReport scan_raw(const SourceFile& file) {
    RawScanReport report;
    const std::string_view bytes = file.bytes();
    for (std::size_t i = 0; i < bytes.size();) {
        if (static_cast<unsigned char>(bytes[i]) < 0x80) {
            ++i;
            continue;
        }
        auto d = utf8::decode(bytes, i);
        auto span = make_span(file, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i + d.length));
        report.non_ascii_positions.push_back(span);
        if (d.valid && d.code_point == 0x202E) report.rtl_override_positions.push_back(span);
        i += d.length;
    }
    return report;
}

}  // namespace tokenaudit
