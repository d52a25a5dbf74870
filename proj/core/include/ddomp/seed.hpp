#pragma once

#include <cstdint>
#include <cstring>
#include <string_view>

namespace ddomp {

// Stateless 64-bit mixer (splitmix64 finalizer). Used to derive independent
// sub-seeds from one master seed so that trials can run in any order.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Seed streams keep channel draws, noise draws and pilot generation
// decorrelated even when they share the same (trial, point) coordinates.
enum class SeedStream : std::uint64_t {
    pilot = 0x70696c6f74ull,    // "pilot"
    channel = 0x6368616eull,    // "chan"
    noise = 0x6e6f697365ull,    // "noise"
    misc = 0x6d697363ull,       // "misc"
};

// Counter scheme: seed(master, stream, a, b) = mix(mix(mix(mix(master) ^ stream) ^ a) ^ b).
// Order-independent across trials: every (stream, a, b) triple yields a fixed value.
inline std::uint64_t derive_seed(std::uint64_t master, SeedStream stream,
                                 std::uint64_t a = 0, std::uint64_t b = 0) {
    std::uint64_t h = mix64(master);
    h = mix64(h ^ static_cast<std::uint64_t>(stream));
    h = mix64(h ^ a);
    return mix64(h ^ b);
}

// FNV-1a over raw bytes; used for pilot fingerprints and config hashes.
inline std::uint64_t fnv1a64(const void* data, std::size_t n,
                             std::uint64_t h = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ull) {
    return fnv1a64(s.data(), s.size(), h);
}

}  // namespace ddomp
