#pragma once

#include <cstdint>
#include <string_view>

namespace rolloutkit {

// Counter-based deterministic randomness.  One global 64-bit seed plus a
// stream tag produce independent substreams, so adding a new consumer never
// shifts the values another consumer sees.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

inline std::uint64_t hash_tag(std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

class Substream {
public:
    Substream(std::uint64_t seed, std::string_view tag)
        : state_(hash_combine(seed, hash_tag(tag))), counter_(0) {}

    std::uint64_t next_u64() { return splitmix64(state_ + counter_++); }

    // Uniform in [0, bound).  Modulo bias is irrelevant at the bounds used here.
    std::uint64_t next_below(std::uint64_t bound) {
        return bound == 0 ? 0 : next_u64() % bound;
    }

    std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
    std::uint64_t counter_;
};

// Stateless keyed hash for pure pseudo-random functions of tuples.
inline std::uint64_t keyed_hash(std::uint64_t seed, std::string_view tag,
                                std::uint64_t a, std::uint64_t b = 0,
                                std::uint64_t c = 0) {
    std::uint64_t h = hash_combine(seed, hash_tag(tag));
    h = hash_combine(h, a);
    h = hash_combine(h, b);
    h = hash_combine(h, c);
    return h;
}

} // namespace rolloutkit
