#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace scriptorium {

inline std::vector<uint32_t> utf8_decode(const std::string& s) {
    std::vector<uint32_t> out;
    size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        uint32_t cp = 0;
        int extra = 0;
        if (c < 0x80) {
            cp = c;
        } else if ((c >> 5) == 0x6) {
            cp = c & 0x1f;
            extra = 1;
        } else if ((c >> 4) == 0xe) {
            cp = c & 0x0f;
            extra = 2;
        } else if ((c >> 3) == 0x1e) {
            cp = c & 0x07;
            extra = 3;
        } else {
            throw std::runtime_error("invalid utf-8 byte in \"" + s + "\"");
        }
        if (i + extra >= s.size()) throw std::runtime_error("truncated utf-8 in \"" + s + "\"");
        for (int k = 0; k < extra; ++k) {
            unsigned char cc = static_cast<unsigned char>(s[i + 1 + k]);
            if ((cc >> 6) != 0x2) throw std::runtime_error("invalid utf-8 continuation in \"" + s + "\"");
            cp = (cp << 6) | (cc & 0x3f);
        }
        out.push_back(cp);
        i += 1 + extra;
    }
    return out;
}

inline std::string utf8_encode(uint32_t cp) {
    std::string out;
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xc0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3f));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xe0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
        out += static_cast<char>(0x80 | (cp & 0x3f));
    } else {
        out += static_cast<char>(0xf0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3f));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
        out += static_cast<char>(0x80 | (cp & 0x3f));
    }
    return out;
}

inline std::string utf8_encode(const std::vector<uint32_t>& cps) {
    std::string out;
    for (uint32_t cp : cps) out += utf8_encode(cp);
    return out;
}

}  // namespace scriptorium
