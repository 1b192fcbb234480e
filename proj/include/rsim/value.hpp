#pragma once
// Fixed-width word values. Widths run 1..64 so every word fits one uint64_t.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace rsim {

inline constexpr int kMaxWidth = 64;

constexpr uint64_t maskFor(int width) {
    return width >= 64 ? ~0ull : ((1ull << width) - 1);
}

constexpr bool fitsWidth(uint64_t bits, int width) {
    return (bits & ~maskFor(width)) == 0;
}

// Smallest k such that 2^k >= n (n >= 1). ceilLog2(1) == 0.
constexpr int ceilLog2(uint64_t n) {
    int k = 0;
    uint64_t v = 1;
    while (v < n) {
        v <<= 1;
        ++k;
    }
    return k;
}

// Two's complement reinterpretation of a width-bit word.
constexpr int64_t toSigned(uint64_t bits, int width) {
    if (width >= 64) return static_cast<int64_t>(bits);
    uint64_t sign = 1ull << (width - 1);
    return static_cast<int64_t>((bits ^ sign)) - static_cast<int64_t>(sign);
}

struct Value {
    uint64_t bits = 0;
    int width = 1;  // invariant: bits < 2^width

    bool operator==(const Value&) const = default;
};

// Lower-case hex, zero padded to ceil(width/4) digits. Shared by the trace
// writer and memory-image dumps.
inline std::string hexWord(uint64_t bits, int width) {
    int digits = (width + 3) / 4;
    std::string out(static_cast<size_t>(digits), '0');
    static const char* kHex = "0123456789abcdef";
    for (int i = digits - 1; i >= 0; --i) {
        out[static_cast<size_t>(i)] = kHex[bits & 0xf];
        bits >>= 4;
    }
    return out;
}

// Unsigned literal, decimal or 0x-prefixed hex; rejects overflow and junk.
inline std::optional<uint64_t> parseNumber(std::string_view s) {
    if (s.empty()) return std::nullopt;
    uint64_t v = 0;
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
        for (char c : s.substr(2)) {
            int d;
            if (c >= '0' && c <= '9') d = c - '0';
            else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
            else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
            else return std::nullopt;
            if (v > (~0ull >> 4)) return std::nullopt;
            v = v * 16 + static_cast<uint64_t>(d);
        }
        return v;
    }
    for (char c : s) {
        if (c < '0' || c > '9') return std::nullopt;
        uint64_t d = static_cast<uint64_t>(c - '0');
        if (v > (~0ull - d) / 10) return std::nullopt;
        v = v * 10 + d;
    }
    return v;
}

}  // namespace rsim
