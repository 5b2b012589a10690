#pragma once
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace ktl {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline uint64_t fnv1a(const void* data, size_t len, uint64_t h = 0xcbf29ce484222325ull) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline uint64_t hash_string(const std::string& s, uint64_t h = 0xcbf29ce484222325ull) {
    return fnv1a(s.data(), s.size(), h);
}

// deterministic PRNG; all randomized algorithms derive their stream from an
// explicit seed plus a hash of their input
struct Rng {
    std::mt19937_64 g;
    explicit Rng(uint64_t seed) : g(splitmix64(seed)) {}
    uint64_t u64() { return g(); }
    // uniform in [0, n)
    uint64_t below(uint64_t n) {
        if (n == 0) return 0;
        uint64_t lim = UINT64_MAX - UINT64_MAX % n;
        uint64_t v;
        do { v = g(); } while (v >= lim);
        return v % n;
    }
    long range(long lo, long hi) { return lo + (long)below((uint64_t)(hi - lo + 1)); }
    bool coin() { return g() & 1; }
};

}  // namespace ktl
