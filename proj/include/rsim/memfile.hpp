#pragma once
// Memory image file format: whitespace-separated lower-case-or-upper-case hex
// words, `@HEXADDR` directives repositioning the load cursor, `//` end-of-line
// comments. Dump emits the canonical form (16 words per line, lower-case,
// fixed width) so dump∘load round-trips exactly.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rsim/diag.hpp"
#include "rsim/value.hpp"

namespace rsim {

struct MemoryImage {
    int width = 1;
    uint64_t depth = 0;
    std::vector<uint64_t> words;  // size == depth, masked to width

    bool sameShape(const MemoryImage& other) const {
        return width == other.width && depth == other.depth;
    }
};

inline MemoryImage makeImage(int width, uint64_t depth) {
    MemoryImage img;
    img.width = width;
    img.depth = depth;
    img.words.assign(depth, 0);
    return img;
}

inline std::string readTextFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Err::FileError, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

namespace detail {

inline bool isHexDigit(char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

inline int hexDigitValue(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return c - 'A' + 10;
}

}  // namespace detail

// Parses memory-image text into an image of the given shape. Unwritten cells
// stay zero. Words must fit the width; addresses must stay within depth.
inline MemoryImage parseMemText(std::string_view text, int width, uint64_t depth) {
    MemoryImage img = makeImage(width, depth);
    uint64_t cursor = 0;
    size_t i = 0;
    int line = 1, col = 1;
    auto fail = [&](Err code, const std::string& msg, int atLine, int atCol) -> void {
        throw Error(code, msg, SourcePos{atLine, atCol});
    };
    auto step = [&]() {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++i;
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            step();
            continue;
        }
        if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n') step();
            continue;
        }
        int tokLine = line, tokCol = col;
        if (c == '@') {
            step();
            uint64_t addr = 0;
            int digits = 0;
            while (i < text.size() && detail::isHexDigit(text[i])) {
                if (digits >= 16) fail(Err::BadToken, "address too long", tokLine, tokCol);
                addr = addr * 16 + static_cast<uint64_t>(detail::hexDigitValue(text[i]));
                ++digits;
                step();
            }
            if (digits == 0) fail(Err::BadToken, "expected hex address after '@'", tokLine, tokCol);
            if (i < text.size() && !(text[i] == ' ' || text[i] == '\t' || text[i] == '\r' ||
                                     text[i] == '\n' || text[i] == '/')) {
                fail(Err::BadToken, "malformed address", tokLine, tokCol);
            }
            if (addr > depth) {
                fail(Err::AddressBeyondDepth,
                     "address 0x" + hexWord(addr, 64) + " beyond depth " + std::to_string(depth),
                     tokLine, tokCol);
            }
            cursor = addr;
            continue;
        }
        if (detail::isHexDigit(c)) {
            uint64_t word = 0;
            int digits = 0;
            bool overflow = false;
            while (i < text.size() && detail::isHexDigit(text[i])) {
                if (digits >= 16) overflow = true;
                word = overflow ? word : word * 16 + static_cast<uint64_t>(detail::hexDigitValue(text[i]));
                ++digits;
                step();
            }
            if (i < text.size() && !(text[i] == ' ' || text[i] == '\t' || text[i] == '\r' ||
                                     text[i] == '\n' || text[i] == '/')) {
                fail(Err::BadToken, "malformed word", tokLine, tokCol);
            }
            if (overflow || !fitsWidth(word, width)) {
                fail(Err::WordExceedsWidth,
                     "word does not fit in " + std::to_string(width) + " bits", tokLine, tokCol);
            }
            if (cursor >= depth) {
                fail(Err::AddressBeyondDepth,
                     "word at address " + std::to_string(cursor) + " beyond depth " +
                         std::to_string(depth),
                     tokLine, tokCol);
            }
            img.words[cursor++] = word;
            continue;
        }
        fail(Err::BadToken, std::string("unexpected character '") + c + "'", tokLine, tokCol);
    }
    return img;
}

inline MemoryImage loadMemFile(const std::string& path, int width, uint64_t depth) {
    std::string text = readTextFile(path);
    try {
        return parseMemText(text, width, depth);
    } catch (Error& e) {
        e.setFile(path);
        throw;
    }
}

// Canonical dump: `@0` header comment-free, 16 words per line, every word
// lower-case hex padded to the width's digit count, trailing newline.
inline std::string dumpMemText(const MemoryImage& img) {
    std::string out;
    for (uint64_t i = 0; i < img.depth; ++i) {
        out += hexWord(img.words[i], img.width);
        out += (i % 16 == 15 || i + 1 == img.depth) ? '\n' : ' ';
    }
    return out;
}

inline void dumpMemFile(const std::string& path, const MemoryImage& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Err::FileError, "cannot open '" + path + "' for writing");
    out << dumpMemText(img);
    if (!out) throw Error(Err::FileError, "write failed for '" + path + "'");
}

struct Mismatch {
    uint64_t address = 0;
    uint64_t actual = 0;
    uint64_t expected = 0;
};

struct MismatchReport {
    uint64_t total = 0;             // total differing cells
    std::vector<Mismatch> entries;  // first kMaxEntries of them
    static constexpr size_t kMaxEntries = 32;

    bool ok() const { return total == 0; }
    bool truncated() const { return total > entries.size(); }
};

inline MismatchReport compareImages(const MemoryImage& actual, const MemoryImage& expected) {
    if (!actual.sameShape(expected)) {
        throw Error(Err::ShapeMismatch,
                    "shape " + std::to_string(actual.width) + "x" + std::to_string(actual.depth) +
                        " vs " + std::to_string(expected.width) + "x" +
                        std::to_string(expected.depth));
    }
    MismatchReport report;
    for (uint64_t i = 0; i < actual.depth; ++i) {
        if (actual.words[i] != expected.words[i]) {
            ++report.total;
            if (report.entries.size() < MismatchReport::kMaxEntries) {
                report.entries.push_back({i, actual.words[i], expected.words[i]});
            }
        }
    }
    return report;
}

}  // namespace rsim
