#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace scriptorium {

// FNV-1a, used for checkpoint integrity and parameter-change assertions.
inline uint64_t fnv1a64(const void* bytes, size_t n, uint64_t h = 0xcbf29ce484222325ULL) {
    const auto* p = static_cast<const unsigned char*>(bytes);
    for (size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline uint64_t fnv1a64(const std::string& s) { return fnv1a64(s.data(), s.size()); }

inline uint64_t fnv1a64(const std::vector<float>& v) {
    return fnv1a64(v.data(), v.size() * sizeof(float));
}

}  // namespace scriptorium
