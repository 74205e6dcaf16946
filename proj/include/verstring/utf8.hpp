#pragma once

#include <string>
#include <string_view>
#include <utility>

namespace verstring {

// Decode one UTF-8 code point. Returns (code point, bytes consumed);
// consumed = 0 signals malformed input.
inline std::pair<char32_t, size_t> decode_utf8(std::string_view s) {
    if (s.empty()) return {0, 0};
    unsigned char b0 = static_cast<unsigned char>(s[0]);
    if (b0 < 0x80) return {b0, 1};
    if (b0 < 0xC0) return {0, 0}; // stray continuation byte
    size_t len = b0 < 0xE0 ? 2 : b0 < 0xF0 ? 3 : 4;
    if (s.size() < len) return {0, 0};
    char32_t cp = b0 & (0xFF >> (len + 1));
    for (size_t i = 1; i < len; ++i) {
        unsigned char b = static_cast<unsigned char>(s[i]);
        if ((b & 0xC0) != 0x80) return {0, 0};
        cp = (cp << 6) | (b & 0x3F);
    }
    return {cp, len};
}

inline void encode_utf8(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline std::string encode_utf8(std::u32string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char32_t cp : s) encode_utf8(cp, out);
    return out;
}

} // namespace verstring
