#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace tokenaudit {

/// One input file held as raw bytes together with the offsets of its line starts.
class SourceFile {
public:
    SourceFile(std::string path, std::string bytes);

    static std::shared_ptr<const SourceFile> load(const std::string& path);
    static std::shared_ptr<const SourceFile> from_string(std::string path, std::string bytes);

    const std::string& path() const { return path_; }
    std::string_view bytes() const { return bytes_; }
    std::size_t size() const { return bytes_.size(); }
    const std::vector<std::uint32_t>& line_index() const { return line_index_; }

    /// 1-based (line, column) of a byte offset. Columns count bytes.
    std::pair<std::uint32_t, std::uint32_t> position(std::uint32_t offset) const;

private:
    std::string path_;
    std::string bytes_;
    std::vector<std::uint32_t> line_index_;
};

struct SourceSpan {
    const SourceFile* file = nullptr;
    std::uint32_t start = 0;
    std::uint32_t end = 0;
    std::uint32_t line = 1;
    std::uint32_t column = 1;

    std::string_view text() const;
    bool empty() const { return start == end; }

    /// Smallest span covering both; both must come from the same file.
    static SourceSpan cover(const SourceSpan& a, const SourceSpan& b);
};

SourceSpan make_span(const SourceFile& file, std::uint32_t start, std::uint32_t end);

}  // namespace tokenaudit
