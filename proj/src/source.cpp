#include "tokenaudit/source.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tokenaudit {

SourceFile::SourceFile(std::string path, std::string bytes)
    : path_(std::move(path)), bytes_(std::move(bytes)) {
    line_index_.push_back(0);
    for (std::uint32_t i = 0; i < bytes_.size(); ++i) {
        if (bytes_[i] == '\n') line_index_.push_back(i + 1);
    }
}

std::shared_ptr<const SourceFile> SourceFile::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::make_shared<const SourceFile>(path, buf.str());
}

std::shared_ptr<const SourceFile> SourceFile::from_string(std::string path, std::string bytes) {
    return std::make_shared<const SourceFile>(std::move(path), std::move(bytes));
}

std::pair<std::uint32_t, std::uint32_t> SourceFile::position(std::uint32_t offset) const {
    auto it = std::upper_bound(line_index_.begin(), line_index_.end(), offset);
    auto line = static_cast<std::uint32_t>(it - line_index_.begin());
    return {line, offset - line_index_[line - 1] + 1};
}

std::string_view SourceSpan::text() const {
    if (file == nullptr) return {};
    return file->bytes().substr(start, end - start);
}

SourceSpan SourceSpan::cover(const SourceSpan& a, const SourceSpan& b) {
    if (a.file == nullptr) return b;
    if (b.file == nullptr) return a;
    const SourceSpan& first = a.start <= b.start ? a : b;
    SourceSpan out = first;
    out.end = std::max(a.end, b.end);
    return out;
}

SourceSpan make_span(const SourceFile& file, std::uint32_t start, std::uint32_t end) {
    auto [line, col] = file.position(start);
    return SourceSpan{&file, start, end, line, col};
}

}  // namespace tokenaudit
